//! The symbolic universe of cuspidal towers.
//!
//! A tower stands for the family `{ν^x ρ₀ : x ∈ ℚ}` of a unitary cuspidal
//! anchor `ρ₀`. It records where the Galois twist, the contragredient and the
//! twist by `χ` send the anchor. A [`Line`] is one `ν^ℤ`-orbit inside a tower.
//! Towers fixed by `dual ∘ tau` carry the parity bit γ of their anchor line.
//!
//! The universe is immutable once built. Towers are stored sorted by id, so
//! comparing [`TowerId`]s is the same as comparing id strings.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{frac_mod1, half, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TowerId(pub(crate) u32);

impl TowerId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A partner reference in a declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Partner {
    SelfRef,
    Named(String),
}

impl Partner {
    fn resolve<'a>(&'a self, own: &'a str) -> &'a str {
        match self {
            Partner::SelfRef => own,
            Partner::Named(n) => n,
        }
    }
}

/// One `tower` block of a universe file, before resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerDecl {
    pub id: String,
    pub degree: Option<i64>,
    pub tau: Partner,
    pub dual: Partner,
    pub chi: Option<Partner>,
    pub gamma: Option<u8>,
}

impl TowerDecl {
    pub fn new(id: impl Into<String>, degree: i64) -> Self {
        TowerDecl {
            id: id.into(),
            degree: Some(degree),
            tau: Partner::SelfRef,
            dual: Partner::SelfRef,
            chi: None,
            gamma: None,
        }
    }

    pub fn tau(mut self, p: &str) -> Self {
        self.tau = Partner::Named(p.to_string());
        self
    }

    pub fn dual(mut self, p: &str) -> Self {
        self.dual = Partner::Named(p.to_string());
        self
    }

    pub fn chi(mut self, p: &str) -> Self {
        self.chi = Some(Partner::Named(p.to_string()));
        self
    }

    pub fn gamma(mut self, g: u8) -> Self {
        self.gamma = Some(g);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub id: String,
    pub degree: u32,
    pub tau: TowerId,
    pub dual: TowerId,
    pub chi: TowerId,
    pub base_gamma: Option<u8>,
    /// Created by the loader as the χ-partner of a declaration without one.
    pub synthesized: bool,
}

/// `ν^ℤ`-orbit `{ν^(offset + k) ρ₀ : k ∈ ℤ}` inside a tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    pub tower: TowerId,
    offset: Q,
}

impl Line {
    pub fn new(tower: TowerId, offset: Q) -> Self {
        Line {
            tower,
            offset: frac_mod1(&offset),
        }
    }

    pub fn offset(&self) -> Q {
        self.offset
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Tau,
    Dual,
    Chi,
    NuShift(Q),
}

#[derive(Debug, Default)]
pub struct UniverseBuilder {
    decls: Vec<TowerDecl>,
}

impl UniverseBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a declaration. Partner references are resolved in [`build`](Self::build).
    pub fn declare(&mut self, decl: TowerDecl) -> Result<()> {
        match decl.degree {
            None => return Err(Error::MissingDegree(decl.id)),
            Some(d) if d < 1 => return Err(Error::InvalidDegree(decl.id)),
            Some(_) => {}
        }
        if self.decls.iter().any(|d| d.id == decl.id) {
            return Err(Error::DuplicateTower(decl.id));
        }
        self.decls.push(decl);
        Ok(())
    }

    pub fn build(self) -> Result<Universe> {
        struct Raw {
            id: String,
            degree: u32,
            tau: String,
            dual: String,
            chi: String,
            gamma: Option<u8>,
            synthesized: bool,
            source: Option<String>,
        }

        let declared: HashMap<&str, &TowerDecl> =
            self.decls.iter().map(|d| (d.id.as_str(), d)).collect();
        for d in &self.decls {
            let refs = [
                ("tau", Some(&d.tau)),
                ("dual", Some(&d.dual)),
                ("chi", d.chi.as_ref()),
            ];
            for (field, p) in refs {
                if let Some(Partner::Named(n)) = p {
                    if !declared.contains_key(n.as_str()) {
                        return Err(Error::DanglingPartner {
                            tower: d.id.clone(),
                            field,
                            partner: n.clone(),
                        });
                    }
                }
            }
        }

        // chi partner names, synthesizing fresh ones where missing
        let mut taken: std::collections::HashSet<String> =
            self.decls.iter().map(|d| d.id.clone()).collect();
        let mut chi_of: HashMap<String, String> = HashMap::new();
        let mut fresh = Vec::new();
        for d in &self.decls {
            let name = match &d.chi {
                Some(p) => p.resolve(&d.id).to_string(),
                None => {
                    let mut name = format!("{}_chi", d.id);
                    let mut k = 2;
                    while taken.contains(&name) {
                        name = format!("{}_chi{}", d.id, k);
                        k += 1;
                    }
                    taken.insert(name.clone());
                    chi_of.insert(name.clone(), d.id.clone());
                    fresh.push((name.clone(), d.id.clone()));
                    name
                }
            };
            chi_of.insert(d.id.clone(), name);
        }

        let mut raw: Vec<Raw> = self
            .decls
            .iter()
            .map(|d| Raw {
                id: d.id.clone(),
                degree: d.degree.unwrap_or(1) as u32,
                tau: d.tau.resolve(&d.id).to_string(),
                dual: d.dual.resolve(&d.id).to_string(),
                chi: chi_of[&d.id].clone(),
                gamma: d.gamma,
                synthesized: false,
                source: None,
            })
            .collect();
        for (name, src) in &fresh {
            let d = declared[src.as_str()];
            let tau = chi_of[d.tau.resolve(&d.id)].clone();
            let dual = chi_of[d.dual.resolve(&d.id)].clone();
            raw.push(Raw {
                id: name.clone(),
                degree: d.degree.unwrap_or(1) as u32,
                tau,
                dual,
                chi: src.clone(),
                gamma: None,
                synthesized: true,
                source: Some(src.clone()),
            });
        }

        raw.sort_by(|x, y| x.id.cmp(&y.id));
        let index: HashMap<String, TowerId> = raw
            .iter()
            .enumerate()
            .map(|(i, r)| (r.id.clone(), TowerId(i as u32)))
            .collect();
        let mut towers: Vec<Tower> = raw
            .iter()
            .map(|r| Tower {
                id: r.id.clone(),
                degree: r.degree,
                tau: index[&r.tau],
                dual: index[&r.dual],
                chi: index[&r.chi],
                base_gamma: r.gamma,
                synthesized: r.synthesized,
            })
            .collect();

        let mut u = Universe {
            towers: Vec::new(),
            index,
        };
        // synthesized gamma: the flip of the source tower's bit, when self-dual
        for (i, r) in raw.iter().enumerate() {
            if let Some(src) = &r.source {
                let t = &towers[i];
                let self_gd = towers[towers[t.tau.index()].dual.index()].id == t.id;
                if self_gd {
                    let src_gamma = towers[u.index[src].index()].base_gamma;
                    towers[i].base_gamma = src_gamma.map(|g| 1 - g);
                }
            }
        }
        u.towers = towers;
        u.validate()?;
        Ok(u)
    }
}

#[derive(Clone, Debug)]
pub struct Universe {
    towers: Vec<Tower>,
    index: HashMap<String, TowerId>,
}

impl Universe {
    pub fn empty() -> Self {
        Universe {
            towers: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn from_decls(decls: impl IntoIterator<Item = TowerDecl>) -> Result<Self> {
        let mut b = UniverseBuilder::new();
        for d in decls {
            b.declare(d)?;
        }
        b.build()
    }

    fn validate(&self) -> Result<()> {
        for (i, t) in self.towers.iter().enumerate() {
            let me = TowerId(i as u32);
            for (field, p) in [("tau", t.tau), ("dual", t.dual), ("chi", t.chi)] {
                let back = match field {
                    "tau" => self.tau(p),
                    "dual" => self.dual(p),
                    _ => self.chi(p),
                };
                if back != me {
                    return Err(Error::NonInvolutive {
                        tower: t.id.clone(),
                        field,
                    });
                }
                if self.tower(p).degree != t.degree {
                    return Err(Error::PartnerDegree {
                        tower: t.id.clone(),
                        field,
                        partner: self.tower(p).id.clone(),
                    });
                }
            }
            if self.dual(self.tau(me)) != self.tau(self.dual(me)) {
                return Err(Error::InconsistentPartners(
                    t.id.clone(),
                    "tau and dual do not commute",
                ));
            }
            if self.chi(self.gd(me)) != self.gd(self.chi(me)) {
                return Err(Error::InconsistentPartners(
                    t.id.clone(),
                    "chi does not commute with dual∘tau",
                ));
            }
        }
        for (i, t) in self.towers.iter().enumerate() {
            let me = TowerId(i as u32);
            match (self.is_self_gd(me), t.base_gamma) {
                (true, None) => return Err(Error::MissingGamma(t.id.clone())),
                (false, Some(_)) => return Err(Error::GammaOnNonSelfDual(t.id.clone())),
                _ => {}
            }
            if let Some(g) = t.base_gamma {
                let c = self.tower(t.chi);
                if c.base_gamma == Some(g) {
                    return Err(Error::ChiGammaClash(t.id.clone(), c.id.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.towers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.towers.is_empty()
    }

    pub fn tower(&self, id: TowerId) -> &Tower {
        &self.towers[id.index()]
    }

    pub fn towers(&self) -> impl Iterator<Item = (TowerId, &Tower)> {
        self.towers
            .iter()
            .enumerate()
            .map(|(i, t)| (TowerId(i as u32), t))
    }

    pub fn lookup(&self, name: &str) -> Result<TowerId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownTower(name.to_string()))
    }

    pub fn name(&self, id: TowerId) -> &str {
        &self.tower(id).id
    }

    pub fn degree(&self, id: TowerId) -> u32 {
        self.tower(id).degree
    }

    pub fn tau(&self, id: TowerId) -> TowerId {
        self.tower(id).tau
    }

    pub fn dual(&self, id: TowerId) -> TowerId {
        self.tower(id).dual
    }

    pub fn chi(&self, id: TowerId) -> TowerId {
        self.tower(id).chi
    }

    /// Galois-contragredient partner `dual ∘ tau`.
    pub fn gd(&self, id: TowerId) -> TowerId {
        self.dual(self.tau(id))
    }

    pub fn is_self_gd(&self, id: TowerId) -> bool {
        self.gd(id) == id
    }

    pub fn line_transform(&self, line: &Line, which: Transform) -> Line {
        match which {
            Transform::Tau => Line::new(self.tau(line.tower), line.offset),
            Transform::Dual => Line::new(self.dual(line.tower), -line.offset),
            Transform::Chi => Line::new(self.chi(line.tower), line.offset),
            Transform::NuShift(s) => Line::new(line.tower, line.offset + s),
        }
    }

    pub fn line_gd(&self, line: &Line) -> Line {
        let t = self.line_transform(line, Transform::Tau);
        self.line_transform(&t, Transform::Dual)
    }

    pub fn is_line_self_gd(&self, line: &Line) -> bool {
        self.line_gd(line) == *line
    }

    /// γ of a self Galois-dual line; `None` elsewhere.
    pub fn gamma_of_line(&self, line: &Line) -> Option<u8> {
        let g = self.tower(line.tower).base_gamma?;
        if line.offset.is_zero() {
            Some(g)
        } else if line.offset == half() {
            Some(1 - g)
        } else {
            None
        }
    }

    /// Declarations reproducing this universe, with every χ-partner explicit.
    pub fn declarations(&self) -> Vec<TowerDecl> {
        self.towers()
            .map(|(id, t)| {
                let partner = |p: TowerId| {
                    if p == id {
                        Partner::SelfRef
                    } else {
                        Partner::Named(self.name(p).to_string())
                    }
                };
                TowerDecl {
                    id: t.id.clone(),
                    degree: Some(t.degree as i64),
                    tau: partner(t.tau),
                    dual: partner(t.dual),
                    chi: Some(Partner::Named(self.name(t.chi).to_string())),
                    gamma: t.base_gamma,
                }
            })
            .collect()
    }

    /// Structural summary used to compare universes up to re-declaration.
    pub fn summary(&self) -> BTreeMap<String, (u32, String, String, String, Option<u8>)> {
        self.towers
            .iter()
            .map(|t| {
                (
                    t.id.clone(),
                    (
                        t.degree,
                        self.name(t.tau).to_string(),
                        self.name(t.dual).to_string(),
                        self.name(t.chi).to_string(),
                        t.base_gamma,
                    ),
                )
            })
            .collect()
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::print_universe(self))
    }
}

//! The decision layer: geometric-lemma strata, matching involutions, the
//! standard-module and ladder classifiers, and the lemma oracles.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multisegment::{canonicalize, MsOp, Multisegment, Realization};
use crate::rational::{fmt_q, half};
use crate::report::{DistinctionReport, Kind, Rule, Verdict};
use crate::segment::{classify_segment, segment_is, Jacquet, Segment};
use crate::universe::{Line, Transform, Universe};
use crate::weyl::{enumerate_w2, Composition, CosetInvolution};

/// Contribution of one double coset `w` to the invariant functionals of a
/// realization. Pieces are per cell of `M(w)`; `None` is a zero Jacquet module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumAnalysis {
    pub w: CosetInvolution,
    pub pieces: Vec<Option<Segment>>,
    pub matched: bool,
    pub hom_bound: u32,
    pub failure_reason: Option<String>,
}

/// Memoized `W₂[M]` lists, shared across sweep workers.
type StrataKey = (Composition, usize);

#[derive(Default)]
pub struct StrataCache {
    map: RwLock<HashMap<StrataKey, Arc<Vec<CosetInvolution>>>>,
}

impl StrataCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, m: &Composition, divisor: usize) -> Arc<Vec<CosetInvolution>> {
        let key = (m.clone(), divisor);
        if let Some(v) = self.map.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = Arc::new(enumerate_w2(m, Some(divisor)));
        self.map.write().unwrap().insert(key, v.clone());
        v
    }
}

/// gcd of the cuspidal degrees in a realization; cells not divisible by it
/// have zero Jacquet modules.
pub fn realization_divisor(u: &Universe, r: &Realization) -> usize {
    r.segments()
        .iter()
        .map(|s| u.degree(s.tower()) as usize)
        .fold(0, |g, d| g.gcd(&d))
        .max(1)
}

fn strata_for(
    u: &Universe,
    r: &Realization,
    cache: Option<&StrataCache>,
) -> Arc<Vec<CosetInvolution>> {
    let m = r.composition(u);
    let d = realization_divisor(u, r);
    match cache {
        Some(c) => c.get(&m, d),
        None => Arc::new(enumerate_w2(&m, Some(d))),
    }
}

pub fn line_name(u: &Universe, line: &Line) -> String {
    if line.offset().is_zero() {
        format!("[{}]", u.name(line.tower))
    } else {
        format!("[nu^{} {}]", fmt_q(&line.offset()), u.name(line.tower))
    }
}

/// Trivial-kind bound on `Hom_H(𝒱_w(π), ℂ)` for the product `r`.
pub fn stratum_hom_bound(
    u: &Universe,
    r: &Realization,
    w: &CosetInvolution,
) -> Result<StratumAnalysis> {
    let comp = r.composition(u);
    if &comp != w.base() {
        return Err(Error::CompositionMismatch {
            expected: comp.total(),
            got: w.base().total(),
        });
    }
    let mut pieces: Vec<Option<Segment>> = Vec::with_capacity(w.cells().len());
    for (seg, parts) in r.segments().iter().zip(w.refinement()) {
        match seg.jacquet(u, parts)? {
            Jacquet::Zero => pieces.extend(std::iter::repeat_n(None, parts.len())),
            Jacquet::Pieces(v) => pieces.extend(v.into_iter().map(Some)),
        }
    }

    let cell_name = |i: usize| {
        let c = w.cells()[i];
        format!("({},{})", c.block + 1, c.pos + 1)
    };
    let mut failure = None;
    if let Some(i) = pieces.iter().position(|p| p.is_none()) {
        failure = Some(format!("Jacquet module is zero at cell {}", cell_name(i)));
    } else {
        for i in 0..pieces.len() {
            let e = w.eps(i);
            let p = pieces[i].expect("checked non-zero");
            if e == i {
                if !segment_is(u, &p, Kind::Trivial)? {
                    failure = Some(format!(
                        "fixed cell {} carries {}, which is not distinguished",
                        cell_name(i),
                        p.display(u)
                    ));
                    break;
                }
            } else if e > i {
                let q = pieces[e].expect("checked non-zero");
                if p.gd(u) != q {
                    failure = Some(format!(
                        "cells {} and {} carry {} and {}, which are not Galois-contragredient",
                        cell_name(i),
                        cell_name(e),
                        p.display(u),
                        q.display(u)
                    ));
                    break;
                }
            }
        }
    }
    let matched = failure.is_none();
    Ok(StratumAnalysis {
        w: w.clone(),
        pieces,
        matched,
        hom_bound: matched as u32,
        failure_reason: failure,
    })
}

/// Full stratum table of a realization.
pub fn strata(u: &Universe, r: &Realization) -> Result<Vec<StratumAnalysis>> {
    strata_for(u, r, None)
        .iter()
        .map(|w| stratum_hom_bound(u, r, w))
        .collect()
}

/// Involutions ε on segment indices with `gd(Δ_i) = Δ_ε(i)` whose fixed
/// segments are distinguished in `kind`. The η kind works on the χ-twist.
pub fn matching_involutions(
    u: &Universe,
    ms: &Multisegment,
    kind: Kind,
) -> Result<Vec<Vec<usize>>> {
    let segs: Vec<Segment> = match kind {
        Kind::Trivial => ms.segments().to_vec(),
        Kind::Eta => ms
            .segments()
            .iter()
            .map(|s| s.transform(u, Transform::Chi))
            .collect(),
    };
    let mut fixable = Vec::with_capacity(segs.len());
    for s in &segs {
        fixable.push(s.is_gd_fixed(u) && segment_is(u, s, Kind::Trivial)?);
    }
    let gd: Vec<Segment> = segs.iter().map(|s| s.gd(u)).collect();

    fn go(
        segs: &[Segment],
        gd: &[Segment],
        fixable: &[bool],
        eps: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(i) = eps.iter().position(|e| e.is_none()) else {
            out.push(eps.iter().map(|e| e.unwrap()).collect());
            return;
        };
        if fixable[i] {
            eps[i] = Some(i);
            go(segs, gd, fixable, eps, out);
            eps[i] = None;
        }
        for j in i + 1..segs.len() {
            if eps[j].is_none() && segs[j] == gd[i] {
                eps[i] = Some(j);
                eps[j] = Some(i);
                go(segs, gd, fixable, eps, out);
                eps[i] = None;
                eps[j] = None;
            }
        }
    }

    let mut out = Vec::new();
    go(&segs, &gd, &fixable, &mut vec![None; segs.len()], &mut out);
    Ok(out)
}

/// Three-valued classification of a standard module.
pub fn classify_standard(u: &Universe, ms: &Multisegment) -> Result<DistinctionReport> {
    let mut r = DistinctionReport::unknown();
    let mut yes = [false; 2];
    let mut no = [false; 2];
    let ix = |k: Kind| k.bit() as usize;

    for kind in Kind::BOTH {
        if matching_involutions(u, ms, kind)?.is_empty() {
            no[ix(kind)] = true;
            r.cite(
                Rule::FirstDir,
                format!(
                    "no involution pairs each segment with its Galois-contragredient \
                     while fixing only {kind} segments; not {kind}"
                ),
            );
        }
    }

    if let Some(line) = ms.pure_line() {
        if ms.len() % 2 == 1 {
            if let Some(g) = u.gamma_of_line(&line) {
                let k = Kind::from_parity(g as i64 + 1);
                no[ix(k)] = true;
                r.cite(
                    Rule::NobothLem,
                    format!(
                        "pure type {} with gamma {g} and {} segments (odd); not {k}",
                        line_name(u, &line),
                        ms.len()
                    ),
                );
            }
        }
    }

    if ms.is_conjugate_selfdual(u) {
        let mut all = [true; 2];
        for (line, comp) in ms.pure_components() {
            let partner = u.line_gd(&line);
            if partner != line {
                if line < partner {
                    r.cite(
                        Rule::Pairing,
                        format!(
                            "components on {} and {} are exchanged by Galois-contragredience; \
                             their product is distinguished and eta-distinguished",
                            line_name(u, &line),
                            line_name(u, &partner)
                        ),
                    );
                }
                continue;
            }
            let g = u
                .gamma_of_line(&line)
                .ok_or_else(|| Error::GammaUndefined(line_name(u, &line)))?;
            let k = Kind::from_parity(g as i64);
            let nonzero = comp.segments().iter().all(|s| !s.re_exponent(u).is_zero());
            if nonzero {
                r.cite(
                    Rule::SecDir,
                    format!(
                        "component on {} is closed under Galois-contragredience with all \
                         exponents non-zero; distinguished and eta-distinguished",
                        line_name(u, &line)
                    ),
                );
            } else {
                all[ix(k.other())] = false;
                r.cite(
                    Rule::SecDir,
                    format!(
                        "component on {} is closed under Galois-contragredience with gamma {g}; {k}",
                        line_name(u, &line)
                    ),
                );
            }
        }
        for kind in Kind::BOTH {
            if all[ix(kind)] {
                yes[ix(kind)] = true;
                r.cite(
                    Rule::JacMod,
                    format!("every pure component contributes a functional; {kind}"),
                );
            }
        }
    }

    for kind in Kind::BOTH {
        let v = match (yes[ix(kind)], no[ix(kind)]) {
            (true, true) => {
                return Err(Error::Soundness(format!(
                    "standard module {} is both {kind} and not {kind}",
                    ms.display(u)
                )))
            }
            (true, false) => Verdict::Yes,
            (false, true) => Verdict::No,
            (false, false) => Verdict::Unknown,
        };
        r.set(kind, v);
    }
    Ok(r)
}

/// Definite classification of a ladder representation.
pub fn classify_ladder(u: &Universe, ms: &Multisegment) -> Result<DistinctionReport> {
    let shape = ms
        .ladder_shape()
        .ok_or_else(|| Error::NotLadder(ms.display(u).to_string()))?;
    let mut r = DistinctionReport::unknown();
    if !ms.is_conjugate_selfdual(u) {
        r.dist = Verdict::No;
        r.eta = Verdict::No;
        r.cite(
            Rule::FirstDir,
            "not conjugate self-dual (star differs from tau); neither kind",
        );
        return Ok(r);
    }
    let line = shape.line();
    let g = u
        .gamma_of_line(&line)
        .ok_or_else(|| Error::GammaUndefined(line_name(u, &line)))?;
    let k = shape.proper_decomposition().len();
    let t = shape.len();
    if k % 2 == 0 {
        r.dist = Verdict::Yes;
        r.eta = Verdict::Yes;
        r.cite(
            Rule::LadderThm2,
            format!("{k} proper ladder parts (even); distinguished and eta-distinguished"),
        );
        return Ok(r);
    }
    let yes = Kind::from_parity(g as i64 + t as i64 + 1);
    r.set(yes, Verdict::Yes);
    r.set(yes.other(), Verdict::No);
    let rule = if k == 1 {
        Rule::LadderThm
    } else {
        Rule::LadderThm2
    };
    r.cite(
        rule,
        format!(
            "gamma {g}, t = {t}, k = {k}; eta^(gamma+t+1) = eta^{} so {yes}",
            yes.bit()
        ),
    );
    r.cite(
        Rule::NobothThm,
        format!("k = {k} is odd; not {}", yes.other()),
    );
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Ladder,
    Standard,
    Segment,
    Auto,
}

/// Dispatch by mode; `Auto` uses the ladder classifier whenever it applies.
pub fn classify(u: &Universe, ms: &Multisegment, mode: Mode) -> Result<(Mode, DistinctionReport)> {
    match mode {
        Mode::Ladder => Ok((Mode::Ladder, classify_ladder(u, ms)?)),
        Mode::Standard => Ok((Mode::Standard, classify_standard(u, ms)?)),
        Mode::Segment => match ms.segments() {
            [s] => Ok((Mode::Segment, classify_segment(u, s)?)),
            _ => Err(Error::NotLadder(format!(
                "segment mode needs exactly one segment, got {}",
                ms.len()
            ))),
        },
        Mode::Auto => {
            if ms.is_ladder() {
                Ok((Mode::Ladder, classify_ladder(u, ms)?))
            } else {
                Ok((Mode::Standard, classify_standard(u, ms)?))
            }
        }
    }
}

/// Upper bound on `dim Hom_H(Σ, ℂ)`: the number of matching strata of the
/// right-ordered realization of the same standard module.
pub fn mult_one_bound(u: &Universe, r: &Realization) -> Result<usize> {
    mult_one_bound_cached(u, r, None)
}

pub fn mult_one_bound_cached(
    u: &Universe,
    r: &Realization,
    cache: Option<&StrataCache>,
) -> Result<usize> {
    if !r.is_rangee() {
        return Err(Error::NotRangee);
    }
    let canon = canonicalize(r.segments().iter().copied());
    let mut total = 0;
    for w in strata_for(u, &canon, cache).iter() {
        total += stratum_hom_bound(u, &canon, w)?.hom_bound as usize;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KeyLemmaVerdict {
    Pass,
    Fail {
        realization: Realization,
        stratum: Box<StratumAnalysis>,
    },
}

/// Every non-admissible stratum of a right-ordered realization carries no
/// invariant functional.
pub fn key_lemma_check(u: &Universe, r: &Realization) -> Result<KeyLemmaVerdict> {
    key_lemma_check_cached(u, r, None)
}

pub fn key_lemma_check_cached(
    u: &Universe,
    r: &Realization,
    cache: Option<&StrataCache>,
) -> Result<KeyLemmaVerdict> {
    if !r.is_right_ordered() || !r.is_rangee() {
        return Err(Error::NotRightOrdered);
    }
    for w in strata_for(u, r, cache).iter() {
        if w.is_admissible() {
            continue;
        }
        let s = stratum_hom_bound(u, r, w)?;
        if s.hom_bound > 0 {
            return Ok(KeyLemmaVerdict::Fail {
                realization: r.clone(),
                stratum: Box::new(s),
            });
        }
    }
    Ok(KeyLemmaVerdict::Pass)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivVerdict {
    Pass,
    Fail(String),
    NotApplicable,
}

/// A distinguished non-generic ladder must have a non-empty member σ of its
/// derivative set with `ν^{1/2} σ` distinguished. Checked for each YES kind,
/// the η kind through the χ-twist.
pub fn deriv_consistency_check(u: &Universe, ms: &Multisegment) -> Result<DerivVerdict> {
    if !ms.is_ladder() {
        return Err(Error::NotLadder(ms.display(u).to_string()));
    }
    if ms.is_generic() {
        return Ok(DerivVerdict::NotApplicable);
    }
    let report = classify_ladder(u, ms)?;
    let mut applicable = false;
    for kind in report.yes_kinds() {
        applicable = true;
        let base = match kind {
            Kind::Trivial => ms.clone(),
            Kind::Eta => ms.apply(u, MsOp::Chi),
        };
        let shape = base
            .ladder_shape()
            .expect("χ-twist of a ladder is a ladder");
        let mut found = false;
        for sigma in shape.derivative_set() {
            if sigma.is_empty() {
                continue;
            }
            let shifted = sigma.apply(u, MsOp::NuShift(half()));
            if classify_ladder(u, &shifted)?.dist == Verdict::Yes {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(DerivVerdict::Fail(format!(
                "{} is {kind} but no derivative shifted by 1/2 is distinguished",
                ms.display(u)
            )));
        }
    }
    Ok(if applicable {
        DerivVerdict::Pass
    } else {
        DerivVerdict::NotApplicable
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, Q};
    use crate::universe::TowerDecl;

    fn u(gamma_t: u8) -> Universe {
        Universe::from_decls([
            TowerDecl::new("T", 1).gamma(gamma_t),
            TowerDecl::new("triv", 1).gamma(0),
            TowerDecl::new("rho2", 2).gamma(1),
            TowerDecl::new("S", 1).dual("S2"),
            TowerDecl::new("S2", 1).dual("S"),
        ])
        .unwrap()
    }

    fn ms(u: &Universe, v: &[(&str, i64, i64)]) -> Multisegment {
        v.iter()
            .map(|&(t, a, b)| Segment::named(u, t, q(a), q(b)).unwrap())
            .collect()
    }

    fn real(u: &Universe, v: &[(&str, i64, i64)]) -> Realization {
        Realization::new(
            v.iter()
                .map(|&(t, a, b)| Segment::named(u, t, q(a), q(b)).unwrap())
                .collect(),
        )
    }

    fn verdicts(r: &DistinctionReport) -> (Verdict, Verdict) {
        (r.dist, r.eta)
    }

    use Verdict::{No, Unknown, Yes};

    #[test]
    fn stratum_single_cell() {
        let u = u(0);
        let r = real(&u, &[("rho2", -1, 1)]);
        let ws = enumerate_w2(&r.composition(&u), None);
        assert_eq!(ws.len(), 1);
        let s = stratum_hom_bound(&u, &r, &ws[0]).unwrap();
        // gamma(rho2) = 1: the fixed segment is only eta-distinguished
        assert_eq!(s.hom_bound, 0);
        assert!(s.failure_reason.unwrap().contains("not distinguished"));
        let chi = r.apply(&u, Transform::Chi);
        let s = stratum_hom_bound(&u, &chi, &enumerate_w2(&chi.composition(&u), None)[0]).unwrap();
        assert_eq!(s.hom_bound, 1);
    }

    #[test]
    fn stratum_admissible_swap() {
        let u = u(0);
        let r = real(&u, &[("T", 0, 2), ("T", -2, 0)]);
        let swap = enumerate_w2(&r.composition(&u), None)
            .into_iter()
            .find(|w| w.is_admissible() && !w.is_identity())
            .unwrap();
        let s = stratum_hom_bound(&u, &r, &swap).unwrap();
        assert!(s.matched);
        assert_eq!(s.hom_bound, 1);
    }

    #[test]
    fn stratum_non_admissible_zero_on_right_ordered() {
        let u = u(0);
        let r = real(&u, &[("T", 0, 1), ("T", 0, 0)]);
        for w in enumerate_w2(&r.composition(&u), None) {
            if !w.is_admissible() {
                assert_eq!(stratum_hom_bound(&u, &r, &w).unwrap().hom_bound, 0);
            }
        }
        let wrong = real(&u, &[("T", 0, 1)]);
        let w = &enumerate_w2(&r.composition(&u), None)[0];
        assert!(matches!(
            stratum_hom_bound(&u, &wrong, w),
            Err(Error::CompositionMismatch { .. })
        ));
    }

    #[test]
    fn matching_examples() {
        let u = u(0);
        let m = ms(&u, &[("triv", 0, 0), ("rho2", 0, 0)]);
        assert!(matching_involutions(&u, &m, Kind::Trivial)
            .unwrap()
            .is_empty());
        let m = ms(&u, &[("T", 0, 2), ("T", -2, 0)]);
        assert_eq!(
            matching_involutions(&u, &m, Kind::Trivial).unwrap(),
            vec![vec![1, 0]]
        );
        let m = ms(&u, &[("rho2", -1, 1)]);
        assert_eq!(
            matching_involutions(&u, &m, Kind::Eta).unwrap(),
            vec![vec![0]]
        );
        assert!(matching_involutions(&u, &m, Kind::Trivial)
            .unwrap()
            .is_empty());
        // two equal distinguished segments: identity and swap
        let m = ms(&u, &[("T", -1, 1), ("T", -1, 1)]);
        assert_eq!(
            matching_involutions(&u, &m, Kind::Trivial).unwrap().len(),
            2
        );
    }

    #[test]
    fn standard_examples() {
        let u = u(0);
        let r = classify_standard(&u, &ms(&u, &[("triv", 0, 0), ("rho2", 0, 0)])).unwrap();
        assert_eq!(verdicts(&r), (No, No));
        assert!(r.cites(Rule::FirstDir));

        let r = classify_standard(&u, &ms(&u, &[("rho2", 0, 2), ("rho2", -2, 0)])).unwrap();
        assert_eq!(verdicts(&r), (Yes, Yes));
        assert!(r.cites(Rule::SecDir));

        let r = classify_standard(&u, &ms(&u, &[("rho2", -1, 1)])).unwrap();
        assert_eq!(verdicts(&r), (No, Yes));
        assert!(r.cites(Rule::NobothLem) && r.cites(Rule::SecDir));
        // agrees with the segment classifier
        let seg = classify_segment(&u, &Segment::named(&u, "rho2", q(-1), q(1)).unwrap()).unwrap();
        assert_eq!(verdicts(&seg), verdicts(&r));

        let r = classify_standard(&u, &ms(&u, &[("S", 0, 1), ("S2", -1, 0)])).unwrap();
        assert_eq!(verdicts(&r), (Yes, Yes));
        assert!(r.cites(Rule::Pairing));

        assert_eq!(
            verdicts(&classify_standard(&u, &Multisegment::default()).unwrap()),
            (Yes, Yes)
        );
    }

    #[test]
    fn standard_open_case_is_unknown() {
        // pure, gd-closed, t = 2, zero exponents. gamma(T) = 0, so the eta kind
        // is eta^(gamma+1): the swap matches, SEC-DIR only gives the trivial kind,
        // and NOBOTH-LEM needs odd t
        let u = u(0);
        let r = classify_standard(&u, &ms(&u, &[("T", -1, 1), ("T", -1, 1)])).unwrap();
        assert_eq!(verdicts(&r), (Yes, Unknown));
        // {(T,-1,1),(T,0,0)} is decided: neither segment is eta-distinguished and
        // they cannot pair with each other
        let r = classify_standard(&u, &ms(&u, &[("T", -1, 1), ("T", 0, 0)])).unwrap();
        assert_eq!(verdicts(&r), (Yes, No));
    }

    #[test]
    fn ladder_examples() {
        let u = u(0);
        let r = classify_ladder(&u, &ms(&u, &[("T", 0, 2), ("T", -2, 0)])).unwrap();
        assert_eq!(verdicts(&r), (No, Yes));
        let r = classify_ladder(
            &u,
            &ms(
                &u,
                &[("T", 3, 4), ("T", 2, 3), ("T", -3, -2), ("T", -4, -3)],
            ),
        )
        .unwrap();
        assert_eq!(verdicts(&r), (Yes, Yes));
        assert!(r.cites(Rule::LadderThm2));
        let r = classify_ladder(&u, &ms(&u, &[("T", 0, 2)])).unwrap();
        assert_eq!(verdicts(&r), (No, No));
        assert!(matches!(
            classify_ladder(&u, &ms(&u, &[("T", 0, 2), ("S", 0, 0)])),
            Err(Error::NotLadder(_))
        ));
    }

    #[test]
    fn ladder_chi_twist_swaps() {
        let u = u(1);
        let m = ms(&u, &[("T", 1, 2), ("T", 0, 1), ("T", -1, 0), ("T", -2, -1)]);
        let a = classify_ladder(&u, &m).unwrap();
        let b = classify_ladder(&u, &m.apply(&u, MsOp::Chi)).unwrap();
        assert_eq!(verdicts(&a.swapped()), verdicts(&b));
    }

    #[test]
    fn multiplicity_bounds() {
        let u = u(0);
        assert_eq!(
            mult_one_bound(&u, &real(&u, &[("T", 0, 2), ("T", -2, 0)])).unwrap(),
            1
        );
        assert_eq!(
            mult_one_bound(&u, &real(&u, &[("T", -1, 1), ("T", -1, 1)])).unwrap(),
            2
        );
        assert_eq!(mult_one_bound(&u, &real(&u, &[("T", 0, 2)])).unwrap(), 0);
        assert_eq!(
            mult_one_bound(&u, &real(&u, &[("T", -2, 0), ("T", 0, 2)])),
            Err(Error::NotRangee)
        );
    }

    #[test]
    fn key_lemma_examples() {
        let u = u(0);
        let r = canonicalize(
            ms(&u, &[("T", 0, 1), ("T", 0, 0)])
                .segments()
                .iter()
                .copied(),
        );
        assert_eq!(key_lemma_check(&u, &r).unwrap(), KeyLemmaVerdict::Pass);
        let r = canonicalize(
            ms(&u, &[("T", 0, 2), ("T", -2, 0)])
                .segments()
                .iter()
                .copied(),
        );
        assert_eq!(key_lemma_check(&u, &r).unwrap(), KeyLemmaVerdict::Pass);
        let bad = real(&u, &[("T", 0, 0), ("T", 0, 1)]);
        assert_eq!(key_lemma_check(&u, &bad), Err(Error::NotRightOrdered));
    }

    #[test]
    fn deriv_examples() {
        let u = u(0);
        let m = ms(
            &u,
            &[("T", 3, 4), ("T", 2, 3), ("T", -3, -2), ("T", -4, -3)],
        );
        assert_eq!(deriv_consistency_check(&u, &m).unwrap(), DerivVerdict::Pass);
        let m = ms(&u, &[("T", -1, 1)]);
        assert_eq!(
            deriv_consistency_check(&u, &m).unwrap(),
            DerivVerdict::NotApplicable
        );
        let m = ms(&u, &[("T", 1, 2), ("T", 0, 1)]);
        assert_eq!(
            deriv_consistency_check(&u, &m).unwrap(),
            DerivVerdict::NotApplicable
        );
    }

    #[test]
    fn auto_mode_prefers_ladder() {
        let u = u(0);
        let m = ms(&u, &[("T", 0, 2), ("T", -2, 0)]);
        let (mode, r) = classify(&u, &m, Mode::Auto).unwrap();
        assert_eq!(mode, Mode::Ladder);
        assert_eq!(verdicts(&r), (No, Yes));
        let (mode, _) =
            classify(&u, &ms(&u, &[("triv", 0, 0), ("rho2", 0, 0)]), Mode::Auto).unwrap();
        assert_eq!(mode, Mode::Standard);
        let _ = Q::zero();
    }
}

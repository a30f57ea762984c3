//! Bounded enumerations and seeded random corpora.
//!
//! Everything here is deterministic: sweeps run in parallel but collect in
//! enumeration order, and corpora are driven by `ChaCha8Rng` from a `u64` seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::engine::{
    key_lemma_check_cached, mult_one_bound_cached, KeyLemmaVerdict, StrataCache, StratumAnalysis,
};
use crate::error::Result;
use crate::multisegment::{Multisegment, Realization};
use crate::rational::{half, q, Q};
use crate::segment::Segment;
use crate::universe::{TowerDecl, TowerId, Universe};

/// Endpoint window `[-radius, radius]` on the half-integer grid (or the
/// integer grid when `halves` is off).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub radius: i64,
    pub max_span: usize,
    pub halves: bool,
}

impl Default for Window {
    fn default() -> Self {
        Window {
            radius: 2,
            max_span: 2,
            halves: true,
        }
    }
}

impl Window {
    pub fn grid(&self) -> Vec<Q> {
        let step = if self.halves { half() } else { q(1) };
        let mut out = Vec::new();
        let mut x = q(-self.radius);
        while x <= q(self.radius) {
            out.push(x);
            x += step;
        }
        out
    }
}

/// One self-dual tower `T` of degree 1 with bit `gamma`, and a pair `S`, `S2`
/// of degree 2 exchanged by the contragredient.
pub fn sweep_universe(gamma: u8) -> Universe {
    Universe::from_decls([
        TowerDecl::new("T", 1).gamma(gamma),
        TowerDecl::new("S", 2).dual("S2"),
        TowerDecl::new("S2", 2).dual("S"),
    ])
    .expect("builtin universe")
}

/// A universe exercising every partner pattern: explicit and synthesized
/// χ-partners, degree 2, and a tower with non-trivial Galois twist.
pub fn rich_universe() -> Universe {
    Universe::from_decls([
        TowerDecl::new("triv", 1).chi("triv_chi").gamma(0),
        TowerDecl::new("triv_chi", 1).chi("triv").gamma(1),
        TowerDecl::new("rho2", 2).gamma(1),
        TowerDecl::new("sigma", 3).tau("sigma_t").dual("sigma_d"),
        TowerDecl::new("sigma_t", 3).tau("sigma").dual("sigma_td"),
        TowerDecl::new("sigma_d", 3).tau("sigma_td").dual("sigma"),
        TowerDecl::new("sigma_td", 3).tau("sigma_d").dual("sigma_t"),
        TowerDecl::new("S", 1).dual("S2"),
        TowerDecl::new("S2", 1).dual("S"),
    ])
    .expect("builtin universe")
}

pub fn test_universes() -> Vec<Universe> {
    vec![sweep_universe(0), sweep_universe(1), rich_universe()]
}

/// Declared towers, skipping the χ-partners the loader made up.
pub fn declared_towers(u: &Universe) -> Vec<TowerId> {
    u.towers()
        .filter(|(_, t)| !t.synthesized)
        .map(|(id, _)| id)
        .collect()
}

pub fn self_gd_towers(u: &Universe) -> Vec<TowerId> {
    declared_towers(u)
        .into_iter()
        .filter(|&t| u.is_self_gd(t))
        .collect()
}

/// All segments with endpoints in the window and `b − a ≤ max_span`.
pub fn window_segments(towers: &[TowerId], w: &Window) -> Vec<Segment> {
    let grid = w.grid();
    let mut out = Vec::new();
    for &t in towers {
        for &a in &grid {
            for k in 0..=w.max_span as i64 {
                let b = a + q(k);
                if b <= q(w.radius) {
                    out.push(Segment::new(t, a, b).expect("integral length"));
                }
            }
        }
    }
    out.sort();
    out
}

/// Multisets of 1 to `max_len` elements of `segs`.
pub fn multisets(segs: &[Segment], max_len: usize) -> Vec<Multisegment> {
    fn go(
        segs: &[Segment],
        start: usize,
        cur: &mut Vec<Segment>,
        max: usize,
        out: &mut Vec<Multisegment>,
    ) {
        if !cur.is_empty() {
            out.push(Multisegment::new(cur.iter().copied()));
        }
        if cur.len() == max {
            return;
        }
        for i in start..segs.len() {
            cur.push(segs[i]);
            go(segs, i, cur, max, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(segs, 0, &mut Vec::new(), max_len, &mut out);
    out
}

/// Distinct orderings of `ms` that are right-ordered realizations.
pub fn right_ordered_realizations(ms: &Multisegment) -> Vec<Realization> {
    fn go(rest: &mut Vec<Segment>, cur: &mut Vec<Segment>, out: &mut Vec<Realization>) {
        if rest.is_empty() {
            let r = Realization::new(cur.clone());
            if r.is_right_ordered() && r.is_rangee() {
                out.push(r);
            }
            return;
        }
        for i in 0..rest.len() {
            if i > 0 && rest[i] == rest[i - 1] {
                continue;
            }
            let s = rest.remove(i);
            cur.push(s);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, s);
        }
    }
    let mut rest = ms.segments().to_vec();
    let mut out = Vec::new();
    go(&mut rest, &mut Vec::new(), &mut out);
    out
}

/// All ladders of 1 to `max_len` segments drawn from `segs`.
pub fn ladders(segs: &[Segment], max_len: usize) -> Vec<Multisegment> {
    let mut sorted = segs.to_vec();
    sorted.sort();
    sorted.dedup();
    fn go(
        segs: &[Segment],
        start: usize,
        cur: &mut Vec<Segment>,
        max: usize,
        out: &mut Vec<Multisegment>,
    ) {
        if !cur.is_empty() {
            out.push(Multisegment::new(cur.iter().copied()));
        }
        if cur.len() == max {
            return;
        }
        for i in start..segs.len() {
            let s = segs[i];
            if let Some(p) = cur.last() {
                if p.line() != s.line() || s.a() >= p.a() || s.b() >= p.b() {
                    continue;
                }
            }
            cur.push(s);
            go(segs, i + 1, cur, max, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&sorted, 0, &mut Vec::new(), max_len, &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct SweepReport<T> {
    pub checked: usize,
    pub failures: Vec<T>,
}

impl<T> SweepReport<T> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the key-lemma oracle on every right-ordered realization of up to
/// `max_segments` window segments over `towers`.
pub fn key_lemma_sweep(
    u: &Universe,
    towers: &[TowerId],
    w: &Window,
    max_segments: usize,
) -> Result<SweepReport<(Realization, StratumAnalysis)>> {
    let segs = window_segments(towers, w);
    let instances: Vec<Realization> = multisets(&segs, max_segments)
        .iter()
        .flat_map(right_ordered_realizations)
        .collect();
    let cache = StrataCache::new();
    let verdicts: Vec<KeyLemmaVerdict> = instances
        .par_iter()
        .map(|r| key_lemma_check_cached(u, r, Some(&cache)))
        .collect::<Result<_>>()?;
    let failures = verdicts
        .into_iter()
        .filter_map(|v| match v {
            KeyLemmaVerdict::Pass => None,
            KeyLemmaVerdict::Fail {
                realization,
                stratum,
            } => Some((realization, *stratum)),
        })
        .collect();
    Ok(SweepReport {
        checked: instances.len(),
        failures,
    })
}

/// `mult_one_bound` for every multiset of pairwise distinct window segments.
pub fn mult_one_sweep(
    u: &Universe,
    towers: &[TowerId],
    w: &Window,
    max_segments: usize,
) -> Result<Vec<(Multisegment, usize)>> {
    let segs = window_segments(towers, w);
    let instances: Vec<Multisegment> = multisets(&segs, max_segments)
        .into_iter()
        .filter(|m| m.segments().windows(2).all(|p| p[0] != p[1]))
        .collect();
    let cache = StrataCache::new();
    instances
        .into_par_iter()
        .map(|m| {
            let b = mult_one_bound_cached(u, &m.realization(), Some(&cache))?;
            Ok((m, b))
        })
        .collect()
}

/// Shape of random instances.
#[derive(Clone, Copy, Debug)]
pub struct CorpusParams {
    pub max_segments: usize,
    pub radius: i64,
    pub max_span: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            max_segments: 5,
            radius: 4,
            max_span: 3,
        }
    }
}

fn random_endpoint(rng: &mut ChaCha8Rng, radius: i64) -> Q {
    // quarter steps so that lines off the self-dual offsets also occur
    let n = rng.gen_range(-4 * radius..=4 * radius);
    Q::new(n, 4)
}

pub fn random_segment(rng: &mut ChaCha8Rng, towers: &[TowerId], p: &CorpusParams) -> Segment {
    let t = towers[rng.gen_range(0..towers.len())];
    let a = random_endpoint(rng, p.radius);
    let len = rng.gen_range(0..=p.max_span as i64);
    Segment::new(t, a, a + q(len)).expect("integral length")
}

/// A random multisegment. With `symmetric` it is built as `X + gd(X)` plus
/// segments fixed by `gd`, so it is closed under Galois-contragredience.
pub fn random_multisegment(
    rng: &mut ChaCha8Rng,
    u: &Universe,
    towers: &[TowerId],
    p: &CorpusParams,
    symmetric: bool,
) -> Multisegment {
    let n = rng.gen_range(0..=p.max_segments);
    let mut segs = Vec::new();
    if symmetric {
        while segs.len() < n {
            let s = random_segment(rng, towers, p);
            if u.is_self_gd(s.tower()) && rng.gen_bool(0.3) {
                let h = Q::new(rng.gen_range(0..=p.max_span as i64), 2);
                segs.push(Segment::new(s.tower(), -h, h).expect("integral length"));
            } else {
                segs.push(s);
                segs.push(s.gd(u));
            }
        }
    } else {
        for _ in 0..n {
            segs.push(random_segment(rng, towers, p));
        }
    }
    Multisegment::new(segs)
}

/// A random ladder on a self-dual line of `tower`. Symmetric ladders are
/// mirrored around 0 and rejected until they are still ladders.
pub fn random_ladder(
    rng: &mut ChaCha8Rng,
    u: &Universe,
    tower: TowerId,
    p: &CorpusParams,
    symmetric: bool,
) -> Multisegment {
    let offset = if rng.gen_bool(0.5) { q(0) } else { half() };
    loop {
        let len = rng.gen_range(1..=p.max_segments.max(1));
        let mut a = offset + q(rng.gen_range(-p.radius..=p.radius));
        let mut b = a + q(rng.gen_range(0..=p.max_span as i64));
        let mut segs = vec![Segment::new(tower, a, b).expect("integral length")];
        for _ in 1..len {
            a -= q(rng.gen_range(1..=2));
            b -= q(rng.gen_range(1..=2));
            if b < a {
                break;
            }
            segs.push(Segment::new(tower, a, b).expect("integral length"));
        }
        if symmetric {
            let mirrored: Vec<Segment> = segs
                .iter()
                .filter(|s| s.a() + s.b() > q(0))
                .flat_map(|s| [*s, s.gd(u)])
                .collect();
            let middle = segs.iter().find(|s| s.a() + s.b() == q(0)).copied();
            let ms = Multisegment::new(mirrored.into_iter().chain(middle));
            if !ms.is_empty() && ms.is_ladder() && ms.is_conjugate_selfdual(u) {
                return ms;
            }
        } else {
            return Multisegment::new(segs);
        }
    }
}

/// `count` ladders over the self-dual towers of `u`, alternating symmetric
/// and unconstrained draws.
pub fn ladder_corpus(u: &Universe, seed: u64, count: usize, p: &CorpusParams) -> Vec<Multisegment> {
    let towers = self_gd_towers(u);
    assert!(!towers.is_empty(), "corpus needs a self-dual tower");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let t = towers[rng.gen_range(0..towers.len())];
            random_ladder(&mut rng, u, t, p, i % 2 == 0)
        })
        .collect()
}

pub fn multisegment_corpus(
    u: &Universe,
    seed: u64,
    count: usize,
    p: &CorpusParams,
) -> Vec<Multisegment> {
    let towers = declared_towers(u);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| random_multisegment(&mut rng, u, &towers, p, i % 2 == 0))
        .collect()
}

/// `L + gd(L)` for proper ladders `L` of the window lying strictly right of
/// `1/2`; these decompose into exactly two proper parts.
pub fn paired_ladders(
    u: &Universe,
    tower: TowerId,
    w: &Window,
    max_len: usize,
) -> Vec<Multisegment> {
    let segs: Vec<Segment> = window_segments(&[tower], w)
        .into_iter()
        .filter(|s| s.a() > half())
        .collect();
    ladders(&segs, max_len)
        .into_iter()
        .filter(|l| l.is_proper_ladder())
        .map(|l| Multisegment::new(l.segments().iter().flat_map(|s| [*s, s.gd(u)])))
        .collect()
}

//! Standard modules as multisets of segments, rangée realizations, and the
//! ladder combinatorics built on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::segment::Segment;
use crate::universe::{Line, TowerId, Transform, Universe};
use crate::weyl::Composition;

/// Operators acting segment-wise on a standard module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MsOp {
    /// `Σ*`: segment-wise contragredient.
    Star,
    Tau,
    Chi,
    NuShift(Q),
}

/// A multiset of segments, stored in canonical (right-ordered) order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multisegment {
    segs: Vec<Segment>,
}

impl Multisegment {
    pub fn new(segs: impl IntoIterator<Item = Segment>) -> Self {
        let mut segs: Vec<Segment> = segs.into_iter().collect();
        segs.sort();
        Multisegment { segs }
    }

    /// Drops empty segments.
    pub fn from_maybe(segs: impl IntoIterator<Item = Option<Segment>>) -> Self {
        Self::new(segs.into_iter().flatten())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn degree(&self, u: &Universe) -> usize {
        self.segs.iter().map(|s| s.degree(u)).sum()
    }

    pub fn realization(&self) -> Realization {
        Realization {
            segs: self.segs.clone(),
        }
    }

    pub fn apply(&self, u: &Universe, which: MsOp) -> Multisegment {
        let t = match which {
            MsOp::Star => Transform::Dual,
            MsOp::Tau => Transform::Tau,
            MsOp::Chi => Transform::Chi,
            MsOp::NuShift(s) => Transform::NuShift(s),
        };
        Multisegment::new(self.segs.iter().map(|s| s.transform(u, t)))
    }

    /// Segment-wise `(·^τ)^∨`.
    pub fn gd(&self, u: &Universe) -> Multisegment {
        Multisegment::new(self.segs.iter().map(|s| s.gd(u)))
    }

    /// `Σ* = Σ^τ`, the combinatorial form of `π^τ ≅ π^∨`.
    pub fn is_conjugate_selfdual(&self, u: &Universe) -> bool {
        self.apply(u, MsOp::Star) == self.apply(u, MsOp::Tau)
    }

    pub fn pure_components(&self) -> BTreeMap<Line, Multisegment> {
        let mut out: BTreeMap<Line, Vec<Segment>> = BTreeMap::new();
        for s in &self.segs {
            out.entry(s.line()).or_default().push(*s);
        }
        out.into_iter()
            .map(|(l, v)| (l, Multisegment { segs: v }))
            .collect()
    }

    /// The single line carrying all segments, if there is one.
    pub fn pure_line(&self) -> Option<Line> {
        let first = self.segs.first()?.line();
        self.segs.iter().all(|s| s.line() == first).then_some(first)
    }

    /// No two segments linked, i.e. the standard module is irreducible.
    pub fn is_generic(&self) -> bool {
        self.segs
            .iter()
            .enumerate()
            .all(|(i, x)| self.segs[i + 1..].iter().all(|y| !x.is_linked(y)))
    }

    pub fn ladder_shape(&self) -> Option<LadderShape> {
        let line = self.pure_line()?;
        // canonical order within one line is b-decreasing
        let strict = self
            .segs
            .windows(2)
            .all(|w| w[0].a() > w[1].a() && w[0].b() > w[1].b());
        strict.then(|| LadderShape {
            line,
            segs: self.segs.clone(),
        })
    }

    pub fn is_ladder(&self) -> bool {
        self.ladder_shape().is_some()
    }

    pub fn is_proper_ladder(&self) -> bool {
        self.ladder_shape().is_some_and(|l| l.is_proper())
    }

    /// Multiset of cuspidal exponents `(tower, x)`, sorted.
    pub fn cuspidal_support(&self) -> Vec<(TowerId, Q)> {
        let mut v: Vec<(TowerId, Q)> = self
            .segs
            .iter()
            .flat_map(|s| s.support().map(move |x| (s.tower(), x)))
            .collect();
        v.sort();
        v
    }

    pub fn display<'a>(&'a self, u: &'a Universe) -> impl fmt::Display + 'a {
        crate::dsl::MultisegmentDisplay { ms: self, u }
    }
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<I: IntoIterator<Item = Segment>>(iter: I) -> Self {
        Multisegment::new(iter)
    }
}

/// An ordered product `Δ₁ × ⋯ × Δ_t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Realization {
    segs: Vec<Segment>,
}

impl Realization {
    pub fn new(segs: Vec<Segment>) -> Self {
        Realization { segs }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    /// No segment precedes a later one.
    pub fn is_rangee(&self) -> bool {
        self.segs
            .iter()
            .enumerate()
            .all(|(i, x)| self.segs[i + 1..].iter().all(|y| !x.precedes(y)))
    }

    /// Lines occupy contiguous runs and `b` weakly decreases inside each run.
    pub fn is_right_ordered(&self) -> bool {
        let mut seen: BTreeSet<Line> = BTreeSet::new();
        let mut prev: Option<&Segment> = None;
        for s in &self.segs {
            match prev {
                Some(p) if p.line() == s.line() => {
                    if p.b() < s.b() {
                        return false;
                    }
                }
                _ => {
                    if !seen.insert(s.line()) {
                        return false;
                    }
                }
            }
            prev = Some(s);
        }
        true
    }

    pub fn multisegment(&self) -> Multisegment {
        Multisegment::new(self.segs.iter().copied())
    }

    /// Block sizes of the Levi subgroup the product is induced from.
    pub fn composition(&self, u: &Universe) -> Composition {
        Composition::new(self.segs.iter().map(|s| s.degree(u)).collect())
    }

    pub fn apply(&self, u: &Universe, t: Transform) -> Realization {
        Realization {
            segs: self.segs.iter().map(|s| s.transform(u, t)).collect(),
        }
    }
}

/// Deterministic right-ordered realization of a multiset of segments.
pub fn canonicalize(segs: impl IntoIterator<Item = Segment>) -> Realization {
    Multisegment::new(segs).realization()
}

/// A single-line multisegment with strictly decreasing `a`'s and `b`'s,
/// listed from the top segment down.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LadderShape {
    line: Line,
    segs: Vec<Segment>,
}

impl LadderShape {
    pub fn line(&self) -> Line {
        self.line
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    /// `(a_i, b_i)` from the top down.
    pub fn pairs(&self) -> Vec<(Q, Q)> {
        self.segs.iter().map(|s| (s.a(), s.b())).collect()
    }

    pub fn to_multisegment(&self) -> Multisegment {
        Multisegment {
            segs: self.segs.clone(),
        }
    }

    /// Each segment is preceded by the next one.
    pub fn is_proper(&self) -> bool {
        self.segs.windows(2).all(|w| w[1].precedes(&w[0]))
    }

    /// Cuts the chain after every `i` with `b_{i+1} < a_i − 1`.
    pub fn proper_decomposition(&self) -> Vec<LadderShape> {
        let one = Q::from_integer(1);
        let mut parts = Vec::new();
        let mut cur: Vec<Segment> = Vec::new();
        for (i, s) in self.segs.iter().enumerate() {
            cur.push(*s);
            let cut = match self.segs.get(i + 1) {
                Some(next) => next.b() < s.a() - one,
                None => true,
            };
            if cut {
                parts.push(LadderShape {
                    line: self.line,
                    segs: std::mem::take(&mut cur),
                });
            }
        }
        parts
    }

    /// Standard modules whose sum is the kernel of `Σ(π) → π` for a proper
    /// ladder: the i-th replaces `Δ_i, Δ_{i+1}` by their union and intersection.
    pub fn kernel_modules(&self) -> Result<Vec<Multisegment>> {
        if self.segs.len() < 2 || !self.is_proper() {
            return Err(Error::LadderTooShort);
        }
        let mut out = Vec::with_capacity(self.segs.len() - 1);
        for i in 0..self.segs.len() - 1 {
            let (un, int) = self.segs[i + 1].union_intersection(&self.segs[i])?;
            let rest = self
                .segs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i && *j != i + 1)
                .map(|(_, s)| Some(*s));
            out.push(Multisegment::from_maybe(rest.chain([Some(un), int])));
        }
        Ok(out)
    }

    /// Standard modules of the irreducible subquotients of all derivatives:
    /// `{Δ(a'_i, b_i)}` with `a_i ≤ a'_i < a_{i−1}` (`a_0 = ∞`), excluding the
    /// tuple `a' = a`. Values of `a'_i` past `b_i + 1` all give the empty
    /// segment and are clamped there. The empty multisegment is included when
    /// reachable.
    pub fn derivative_set(&self) -> BTreeSet<Multisegment> {
        let one = Q::from_integer(1);
        let ranges: Vec<Vec<Q>> = self
            .segs
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut hi = s.b() + one;
                if i > 0 {
                    hi = hi.min(self.segs[i - 1].a() - one);
                }
                let mut v = Vec::new();
                let mut x = s.a();
                while x <= hi {
                    v.push(x);
                    x += one;
                }
                v
            })
            .collect();

        let mut out = BTreeSet::new();
        let mut idx = vec![0usize; ranges.len()];
        loop {
            if idx.iter().any(|&k| k != 0) {
                let m = Multisegment::from_maybe(self.segs.iter().zip(&idx).zip(&ranges).map(
                    |((s, &k), r)| {
                        Segment::new_or_empty(s.tower(), r[k], s.b())
                            .expect("clamped endpoints stay on the segment's line")
                    },
                ));
                out.insert(m);
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return out;
                }
                idx[pos] += 1;
                if idx[pos] < ranges[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Real exponents of the segments, top down.
    pub fn exponents(&self, u: &Universe) -> Vec<Q> {
        self.segs.iter().map(|s| s.re_exponent(u)).collect()
    }

    pub fn has_zero_exponent(&self, u: &Universe) -> bool {
        self.exponents(u).iter().any(|x| x.is_zero())
    }
}

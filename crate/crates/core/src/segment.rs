//! Normalized segments `Δ(ρ₀, a, b)`.
//!
//! The cuspidal support of `Δ(ρ₀, a, b)` is `ν^a ρ₀, ν^(a+1) ρ₀, …, ν^b ρ₀`
//! for the tower anchor `ρ₀`, so `b − a` is a non-negative integer. The empty
//! segment (`a = b + 1`) is written `None` wherever it can occur.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};
use crate::report::{DistinctionReport, Kind, Rule, Verdict};
use crate::universe::{Line, TowerId, Transform, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    tower: TowerId,
    a: Q,
    b: Q,
}

/// Result of a Jacquet module computation on a segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Jacquet {
    Zero,
    Pieces(Vec<Segment>),
}

impl Segment {
    pub fn new(tower: TowerId, a: Q, b: Q) -> Result<Segment> {
        let len = b - a;
        if !len.is_integer() || len < Q::zero() {
            return Err(Error::NonIntegerLength {
                a: fmt_q(&a),
                b: fmt_q(&b),
            });
        }
        Ok(Segment { tower, a, b })
    }

    /// Like [`Segment::new`], but `a = b + 1` yields the empty segment.
    pub fn new_or_empty(tower: TowerId, a: Q, b: Q) -> Result<Option<Segment>> {
        if a - b == Q::from_integer(1) {
            Ok(None)
        } else {
            Segment::new(tower, a, b).map(Some)
        }
    }

    /// Checked construction by tower name.
    pub fn named(u: &Universe, tower: &str, a: Q, b: Q) -> Result<Segment> {
        Segment::new(u.lookup(tower)?, a, b)
    }

    pub fn tower(&self) -> TowerId {
        self.tower
    }

    pub fn a(&self) -> Q {
        self.a
    }

    pub fn b(&self) -> Q {
        self.b
    }

    /// Number of cuspidals, `b − a + 1`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        (self.b - self.a).to_integer() as usize + 1
    }

    pub fn line(&self) -> Line {
        Line::new(self.tower, self.a)
    }

    pub fn degree(&self, u: &Universe) -> usize {
        u.degree(self.tower) as usize * self.len()
    }

    /// Real exponent of the central character: `d·(b − a + 1)(a + b)/2`.
    pub fn re_exponent(&self, u: &Universe) -> Q {
        let d = Q::from_integer(u.degree(self.tower) as i64);
        let n = Q::from_integer(self.len() as i64);
        d * n * (self.a + self.b) / Q::from_integer(2)
    }

    pub fn precedes(&self, other: &Segment) -> bool {
        self.line() == other.line()
            && self.a < other.a
            && other.a <= self.b + Q::from_integer(1)
            && self.b < other.b
    }

    pub fn is_linked(&self, other: &Segment) -> bool {
        self.precedes(other) || other.precedes(self)
    }

    pub fn transform(&self, u: &Universe, which: Transform) -> Segment {
        match which {
            Transform::Tau => Segment {
                tower: u.tau(self.tower),
                ..*self
            },
            Transform::Dual => Segment {
                tower: u.dual(self.tower),
                a: -self.b,
                b: -self.a,
            },
            Transform::Chi => Segment {
                tower: u.chi(self.tower),
                ..*self
            },
            Transform::NuShift(s) => Segment {
                tower: self.tower,
                a: self.a + s,
                b: self.b + s,
            },
        }
    }

    /// `(Δ^τ)^∨`.
    pub fn gd(&self, u: &Universe) -> Segment {
        self.transform(u, Transform::Tau)
            .transform(u, Transform::Dual)
    }

    pub fn is_gd_fixed(&self, u: &Universe) -> bool {
        self.gd(u) == *self
    }

    /// `(Δ ∪ Δ', Δ ∩ Δ')` for `Δ = self` preceding `Δ' = later`.
    pub fn union_intersection(&self, later: &Segment) -> Result<(Segment, Option<Segment>)> {
        if !self.precedes(later) {
            return Err(Error::NotLinked(self.to_string(), later.to_string()));
        }
        let union = Segment {
            tower: self.tower,
            a: self.a,
            b: later.b,
        };
        let inter = Segment::new_or_empty(self.tower, later.a, self.b)?;
        Ok((union, inter))
    }

    /// Normalized Jacquet module along the composition `parts` of `degree(Δ)`,
    /// sliced from the top exponent down.
    pub fn jacquet(&self, u: &Universe, parts: &[usize]) -> Result<Jacquet> {
        let total: usize = parts.iter().sum();
        if total != self.degree(u) {
            return Err(Error::CompositionMismatch {
                expected: self.degree(u),
                got: total,
            });
        }
        let d = u.degree(self.tower) as usize;
        if parts.iter().any(|m| m % d != 0) {
            return Ok(Jacquet::Zero);
        }
        let mut top = self.b;
        let mut pieces = Vec::with_capacity(parts.len());
        for m in parts {
            let len = Q::from_integer((m / d) as i64);
            let a = top - len + Q::from_integer(1);
            pieces.push(Segment {
                tower: self.tower,
                a,
                b: top,
            });
            top = a - Q::from_integer(1);
        }
        Ok(Jacquet::Pieces(pieces))
    }

    /// Cuspidal exponents `a, a+1, …, b`.
    pub fn support(&self) -> impl Iterator<Item = Q> + '_ {
        (0..self.len() as i64).map(move |k| self.a + Q::from_integer(k))
    }

    pub fn display<'a>(&'a self, u: &'a Universe) -> SegmentDisplay<'a> {
        SegmentDisplay { seg: self, u }
    }
}

/// Canonical order: by line, then decreasing `b`, then decreasing `a`.
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.line()
            .cmp(&other.line())
            .then_with(|| other.b.cmp(&self.b))
            .then_with(|| other.a.cmp(&self.a))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Universe-free rendering with the raw tower index, for error messages.
impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Delta(#{},{},{})",
            self.tower.index(),
            fmt_q(&self.a),
            fmt_q(&self.b)
        )
    }
}

pub struct SegmentDisplay<'a> {
    seg: &'a Segment,
    u: &'a Universe,
}

impl fmt::Display for SegmentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Delta({},{},{})",
            self.u.name(self.seg.tower),
            fmt_q(&self.seg.a),
            fmt_q(&self.seg.b)
        )
    }
}

/// Definite distinction verdict for a single segment.
pub fn classify_segment(u: &Universe, seg: &Segment) -> Result<DistinctionReport> {
    let mut r = DistinctionReport::unknown();
    let name = seg.display(u).to_string();
    if !seg.is_gd_fixed(u) {
        r.dist = Verdict::No;
        r.eta = Verdict::No;
        r.cite(
            Rule::Known,
            format!("{name} is not isomorphic to its Galois-contragredient"),
        );
        return Ok(r);
    }
    let g = u
        .gamma_of_line(&seg.line())
        .ok_or_else(|| Error::GammaUndefined(name.clone()))?;
    let yes = Kind::from_parity(g as i64);
    r.set(yes, Verdict::Yes);
    r.set(yes.other(), Verdict::No);
    r.cite(
        Rule::Known,
        format!("{name} is Galois-contragredient self-dual with line gamma {g}"),
    );
    Ok(r)
}

/// Whether a segment is distinguished in the given kind.
pub fn segment_is(u: &Universe, seg: &Segment, kind: Kind) -> Result<bool> {
    Ok(classify_segment(u, seg)?.verdict(kind) == Verdict::Yes)
}

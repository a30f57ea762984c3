//! Exact rational exponents.
//!
//! Every exponent in the engine is a `Ratio<i64>`. Printing uses `p/q` in
//! lowest terms and bare integers; JSON uses a `[num, den]` pair.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serializer};

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn half() -> Q {
    Q::new(1, 2)
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

/// Representative of `x mod 1` in `[0, 1)`.
pub fn frac_mod1(x: &Q) -> Q {
    let r = x - x.floor();
    debug_assert!(r >= Q::zero() && r < Q::one());
    r
}

/// `x mod 2` as a bit, for integers only.
pub fn parity(x: &Q) -> Option<u8> {
    if x.is_integer() {
        Some(x.to_integer().mod_floor(&2) as u8)
    } else {
        None
    }
}

pub struct Display<'a>(pub &'a Q);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.0;
        if x.is_integer() {
            write!(f, "{}", x.numer())
        } else {
            write!(f, "{}/{}", x.numer(), x.denom())
        }
    }
}

pub fn fmt_q(x: &Q) -> String {
    Display(x).to_string()
}

/// Parses `-3`, `+2`, `1/2`, `-7/4`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = num.strip_prefix('+').unwrap_or(num).parse().ok()?;
    let d: i64 = den.parse().ok()?;
    if d == 0 || den.starts_with('-') || den.starts_with('+') {
        return None;
    }
    Some(Q::new(n, d))
}

pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(x.numer())?;
    t.serialize_element(x.denom())?;
    t.end()
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    let (n, den) = <(i64, i64)>::deserialize(d)?;
    if den == 0 {
        return Err(serde::de::Error::custom("zero denominator"));
    }
    Ok(Q::new(n, den))
}

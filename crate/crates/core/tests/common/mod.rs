#![allow(dead_code)]

use distinction_core::sweep::{declared_towers, rich_universe, sweep_universe};
use distinction_core::{Multisegment, Segment, TowerId, Universe, Q};
use proptest::prelude::*;

pub fn universes() -> Vec<Universe> {
    vec![sweep_universe(0), sweep_universe(1), rich_universe()]
}

/// Every tower, including synthesized χ-partners.
pub fn all_towers(u: &Universe) -> Vec<TowerId> {
    u.towers().map(|(id, _)| id).collect()
}

pub fn segment_in(towers: Vec<TowerId>, quarters: bool) -> impl Strategy<Value = Segment> {
    let den = if quarters { 4 } else { 2 };
    (0..towers.len(), -4 * den..=4 * den, 0i64..4).prop_map(move |(t, n, len)| {
        let a = Q::new(n, den);
        Segment::new(towers[t], a, a + Q::from_integer(len)).unwrap()
    })
}

pub fn multisegment_in(towers: Vec<TowerId>, max: usize) -> impl Strategy<Value = Multisegment> {
    prop::collection::vec(segment_in(towers, true), 0..=max).prop_map(Multisegment::new)
}

/// A universe index together with a multisegment over its declared towers.
pub fn any_ms(max: usize) -> impl Strategy<Value = (usize, Multisegment)> {
    (0..3usize).prop_flat_map(move |i| {
        let u = &universes()[i];
        (Just(i), multisegment_in(all_towers(u), max))
    })
}

/// Ladders on the self-dual tower `T` of the sweep universes.
pub fn ladder_on_t() -> impl Strategy<Value = (u8, Multisegment)> {
    (
        0u8..2,
        prop::bool::ANY,
        -6i64..=6,
        0i64..4,
        prop::collection::vec((1i64..3, 1i64..3), 0..5),
    )
        .prop_map(|(g, half, a0, len, steps)| {
            let u = sweep_universe(g);
            let t = u.lookup("T").unwrap();
            let off = if half {
                Q::new(1, 2)
            } else {
                Q::from_integer(0)
            };
            let mut a = off + Q::from_integer(a0);
            let mut b = a + Q::from_integer(len);
            let mut segs = vec![Segment::new(t, a, b).unwrap()];
            for (da, db) in steps {
                a -= Q::from_integer(da);
                b -= Q::from_integer(db);
                if b < a {
                    break;
                }
                segs.push(Segment::new(t, a, b).unwrap());
            }
            (g, Multisegment::new(segs))
        })
}

/// `L + gd(L)` with `L` a ladder, kept when the union is still a ladder.
pub fn symmetric_ladder_on_t() -> impl Strategy<Value = (u8, Multisegment)> {
    (ladder_on_t(), prop::bool::ANY).prop_filter_map("not a ladder", |((g, l), keep_middle)| {
        let u = sweep_universe(g);
        let mut segs: Vec<Segment> = Vec::new();
        for s in l.segments() {
            let sum = s.a() + s.b();
            if sum > Q::from_integer(0) {
                segs.push(*s);
                segs.push(s.gd(&u));
            } else if sum == Q::from_integer(0) && keep_middle {
                segs.push(*s);
            }
        }
        let m = Multisegment::new(segs);
        (!m.is_empty() && m.is_ladder()).then_some((g, m))
    })
}

pub fn universe_of(i: usize) -> Universe {
    universes().swap_remove(i)
}

pub fn declared(u: &Universe) -> Vec<TowerId> {
    declared_towers(u)
}

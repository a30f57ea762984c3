//! JSON renderings of universes, segments and engine results.
//!
//! Rationals are `[numerator, denominator]` pairs; the shapes are described by
//! the schemas under `schema/`.

use serde_json::{json, Value};

use crate::engine::{Mode, StratumAnalysis};
use crate::multisegment::Multisegment;
use crate::rational::Q;
use crate::report::DistinctionReport;
use crate::segment::Segment;
use crate::universe::Universe;
use crate::weyl::CosetInvolution;

/// Schema for `classify` output.
pub const CLASSIFY_SCHEMA: &str = include_str!("../schema/classify.schema.json");
/// Schema for `strata` output.
pub const STRATA_SCHEMA: &str = include_str!("../schema/strata.schema.json");

pub fn rational(x: &Q) -> Value {
    json!([x.numer(), x.denom()])
}

pub fn segment(u: &Universe, s: &Segment) -> Value {
    json!({
        "tower": u.name(s.tower()),
        "a": rational(&s.a()),
        "b": rational(&s.b()),
    })
}

pub fn segments(u: &Universe, segs: &[Segment]) -> Value {
    Value::Array(segs.iter().map(|s| segment(u, s)).collect())
}

pub fn multisegment(u: &Universe, ms: &Multisegment) -> Value {
    json!({
        "text": ms.display(u).to_string(),
        "segments": segments(u, ms.segments()),
    })
}

pub fn universe(u: &Universe) -> Value {
    let towers: Vec<Value> = u
        .towers()
        .map(|(_, t)| {
            json!({
                "id": t.id,
                "degree": t.degree,
                "tau": u.name(t.tau),
                "dual": u.name(t.dual),
                "chi": u.name(t.chi),
                "gamma": t.base_gamma,
                "synthesized": t.synthesized,
            })
        })
        .collect();
    json!({ "towers": towers })
}

pub fn involution(w: &CosetInvolution) -> Value {
    let cell = |i: usize| {
        let c = w.cells()[i];
        json!([c.block + 1, c.pos + 1])
    };
    let orbits: Vec<Value> = (0..w.cells().len())
        .filter(|&i| w.eps(i) >= i)
        .map(|i| json!([cell(i), cell(w.eps(i))]))
        .collect();
    json!({
        "text": w.to_string(),
        "base": w.base().parts(),
        "refinement": w.refinement(),
        "orbits": orbits,
        "admissible": w.is_admissible(),
    })
}

pub fn stratum(u: &Universe, s: &StratumAnalysis) -> Value {
    let pieces: Vec<Value> = s
        .pieces
        .iter()
        .map(|p| p.as_ref().map_or(Value::Null, |p| segment(u, p)))
        .collect();
    json!({
        "w": involution(&s.w),
        "pieces": pieces,
        "matched": s.matched,
        "hom_bound": s.hom_bound,
        "failure_reason": s.failure_reason,
    })
}

pub fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Ladder => "ladder",
        Mode::Standard => "standard",
        Mode::Segment => "segment",
        Mode::Auto => "auto",
    }
}

pub fn classification(u: &Universe, ms: &Multisegment, mode: Mode, r: &DistinctionReport) -> Value {
    json!({
        "input": multisegment(u, ms),
        "mode": mode_name(mode),
        "report": serde_json::to_value(r).expect("report serializes"),
    })
}

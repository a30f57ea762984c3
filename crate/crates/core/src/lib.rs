//! Symbolic calculus for deciding distinction of Galois-conjugate-self-dual
//! representations of `GL_n` over a quadratic extension.
//!
//! Representations are described through a [`Universe`] of cuspidal towers and
//! multisegments over it. [`engine`] classifies standard modules and ladder
//! representations, and checks the structural lemmas on bounded families.

pub mod dsl;
pub mod engine;
pub mod error;
pub mod json;
pub mod multisegment;
pub mod rational;
pub mod report;
pub mod segment;
pub mod sweep;
pub mod universe;
pub mod weyl;

pub use dsl::{parse_multisegment, parse_universe, print_universe};
pub use engine::{
    classify, classify_ladder, classify_standard, deriv_consistency_check, key_lemma_check,
    matching_involutions, mult_one_bound, stratum_hom_bound, DerivVerdict, KeyLemmaVerdict, Mode,
    StrataCache, StratumAnalysis,
};
pub use error::{Error, Result};
pub use multisegment::{canonicalize, LadderShape, MsOp, Multisegment, Realization};
pub use rational::Q;
pub use report::{DistinctionReport, Kind, Rule, TraceEntry, Verdict};
pub use segment::{classify_segment, Jacquet, Segment};
pub use universe::{Line, TowerDecl, TowerId, Transform, Universe};
pub use weyl::{enumerate_w2, Cell, Composition, CosetInvolution};

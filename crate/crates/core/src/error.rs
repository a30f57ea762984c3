use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree must be ≥ 1 (tower `{0}`)")]
    InvalidDegree(String),
    #[error("tower `{0}` declared twice")]
    DuplicateTower(String),
    #[error("tower `{0}` has no degree")]
    MissingDegree(String),
    #[error("tower `{tower}`: {field} partner `{partner}` is not declared")]
    DanglingPartner {
        tower: String,
        field: &'static str,
        partner: String,
    },
    #[error("tower `{tower}`: {field} partner map is not an involution")]
    NonInvolutive { tower: String, field: &'static str },
    #[error("tower `{tower}`: {field} partner `{partner}` has a different degree")]
    PartnerDegree {
        tower: String,
        field: &'static str,
        partner: String,
    },
    #[error("tower `{0}`: partner maps are inconsistent ({1})")]
    InconsistentPartners(String, &'static str),
    #[error("tower `{0}` is not self Galois-dual but carries a gamma bit")]
    GammaOnNonSelfDual(String),
    #[error("tower `{0}` is self Galois-dual but has no gamma bit")]
    MissingGamma(String),
    #[error("towers `{0}` and `{1}` are chi-partners and self Galois-dual but have equal gamma")]
    ChiGammaClash(String, String),
    #[error("unknown tower `{0}`")]
    UnknownTower(String),
    #[error("segment length is not a non-negative integer: a = {a}, b = {b}")]
    NonIntegerLength { a: String, b: String },
    #[error("segments are not linked in the required direction: {0} does not precede {1}")]
    NotLinked(String, String),
    #[error("composition mismatch: expected total {expected}, got {got}")]
    CompositionMismatch { expected: usize, got: usize },
    #[error("gamma is undefined on the line of {0}")]
    GammaUndefined(String),
    #[error("not a ladder: {0}")]
    NotLadder(String),
    #[error("kernel modules need a proper ladder with at least two segments")]
    LadderTooShort,
    #[error("realization is not right-ordered")]
    NotRightOrdered,
    #[error("realization is not rangée")]
    NotRangee,
    #[error("internal soundness failure: {0}")]
    Soundness(String),
    #[error("{line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
}

impl Error {
    /// Errors caused by an inconsistent universe declaration.
    pub fn is_universe_semantic(&self) -> bool {
        matches!(
            self,
            Error::InvalidDegree(_)
                | Error::DuplicateTower(_)
                | Error::MissingDegree(_)
                | Error::DanglingPartner { .. }
                | Error::NonInvolutive { .. }
                | Error::PartnerDegree { .. }
                | Error::InconsistentPartners(..)
                | Error::GammaOnNonSelfDual(_)
                | Error::MissingGamma(_)
                | Error::ChiGammaClash(..)
        )
    }
}

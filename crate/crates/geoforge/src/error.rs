use crate::cosetgeom::TypeLabel;
use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: u64, degree: usize },
    #[error("malformed cycle at byte {at}: {reason}")]
    MalformedCycle { at: usize, reason: String },
    #[error("point {0} repeated within a cycle")]
    RepeatedPointWithinCycle(u32),
    #[error("operands belong to different groups")]
    MixedGroupOperands,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cap {cap} exceeded after reaching {reached} elements")]
    CapExceeded { cap: usize, reached: usize },
    #[error("not a homomorphism: images of {left} * {right} disagree")]
    NotAHomomorphism { left: String, right: String },
    #[error("generator images do not extend to a bijection")]
    NotBijective,
    #[error("action has not been validated at the required level")]
    ActionNotValidated,
    #[error("action of generator {generator} does not permute the maximal parabolics (type {type_label})")]
    NotParabolicPermuting {
        generator: String,
        type_label: TypeLabel,
    },
    #[error("no valid representative for orbit {0}: (IPO) fails for every choice")]
    NotAdmissible(TypeLabel),
    #[error("representative {rep} of orbit {orbit} violates (IPO)")]
    RepNotValid { orbit: TypeLabel, rep: TypeLabel },
    #[error("generator reversal is not an automorphism: {0}")]
    NotSelfDual(String),
    #[error("type label {0} used twice")]
    TypeLabelCollision(TypeLabel),
    #[error("coset system has an empty type set")]
    EmptyTypeSet,
    #[error("rank {rank} exceeds the rank guard {guard}")]
    RankGuard { rank: usize, guard: usize },
    #[error("unknown builtin family {0:?}")]
    UnknownFamily(String),
    #[error("family {family} needs rank >= {min}, got {rank}")]
    RankTooSmall {
        family: String,
        rank: usize,
        min: usize,
    },
    #[error("edges labelled {0} do not form a partial matching")]
    NotAMatching(String),
    #[error("search exhausted without a hit")]
    NotFound,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unresolved reference {0:?}")]
    UnresolvedReference(String),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

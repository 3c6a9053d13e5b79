use std::fmt;

use crate::lattice::HomologyClass;

/// Pipeline stage in which a classification failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Identity,
    Orientation,
    Reduction,
    Normalization,
    Conjugation,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Identity => "identity",
            Stage::Orientation => "orientation",
            Stage::Reduction => "reduction",
            Stage::Normalization => "normalization",
            Stage::Conjugation => "conjugation",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("class {0} is not primitive")]
    NotPrimitive(HomologyClass),

    #[error("matrix has determinant {0}, expected 1")]
    BadDeterminant(String),

    #[error("index {index} out of range for a factorization of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("expected 3 twist factors, found {0}")]
    WrongFactorCount(usize),

    #[error("twist power must be positive, got {0}")]
    NonPositivePower(i64),

    #[error("powers {0:?} do not match any extremal rational type")]
    UnknownPowers([u32; 3]),

    #[error("monodromy identity fails: product of twists is not delta * tau_C^{exponent}")]
    IdentityFailure { exponent: i64 },

    #[error("invalid Markov type {powers:?}: {reason}")]
    InvalidMarkovType { powers: [u32; 3], reason: String },

    #[error("{0} is not a positive solution of the Markov-type equation")]
    NotASolution(String),

    #[error("mutation {which} is not defined here: {reason}")]
    Mutation { which: u8, reason: String },

    #[error("triple {0} is not a minimum solution")]
    NotMinimal(String),

    #[error("intersection number of the boundary with a vanishing cycle is zero")]
    ZeroPairing,

    #[error("{0} admissible orientations found, expected exactly one")]
    Orientation(usize),

    #[error("configuration is not admissibly oriented")]
    NotAdmissible,

    #[error("hypothesis of the intersection identity does not hold: {0}")]
    HypothesisNotSatisfied(String),

    #[error("pairing must be positive, got {0}")]
    NonPositivePairing(String),

    #[error("row {0} does not exist (rows are numbered 1..=14)")]
    UnknownRow(usize),

    #[error("registry row {row} fails validation: {reason}")]
    Registry { row: usize, reason: String },

    #[error("[{stage}] {message}")]
    Classify { stage: Stage, message: String },
}

impl Error {
    pub(crate) fn at(stage: Stage, err: impl fmt::Display) -> Error {
        Error::Classify {
            stage,
            message: err.to_string(),
        }
    }

    /// The stage tag for classifier failures.
    pub fn stage(&self) -> Option<Stage> {
        match self {
            Error::Classify { stage, .. } => Some(*stage),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Error type shared by every module of the crate.

use thiserror::Error;

/// All domain errors carry a stable machine-readable code (see [`Error::code`]).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("determinant is not certified a unit")]
    NotInvertible,
    #[error("bad certificate: {0}")]
    BadCertificate(String),
    #[error("bad generator spec: {0}")]
    BadSpec(String),
    #[error("matrix is not alternating: {0}")]
    NotAlternating(String),
    #[error("a*b != 1: the section does not certify unimodularity")]
    NotUnimodular,
    #[error("row has length {got}, expected {want}")]
    WrongLength { want: usize, got: usize },
    #[error("Suslin matrix size cap exceeded: n = {n}, cap = {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("bad witness: {0}")]
    BadWitness(String),
    #[error("census budget exceeded: needed {needed}, budget {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("ring is not enumerable (infinite or unsupported presentation)")]
    NotEnumerable,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid ring presentation: {0}")]
    BadRing(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

impl Error {
    /// Stable code for machine consumption (CLI error documents, tests).
    pub fn code(&self) -> &'static str {
        match self {
            Error::MixedRings => "MixedRings",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::NotInvertible => "NotInvertible",
            Error::BadCertificate(_) => "BadCertificate",
            Error::BadSpec(_) => "BadSpec",
            Error::NotAlternating(_) => "NotAlternating",
            Error::NotUnimodular => "NotUnimodular",
            Error::WrongLength { .. } => "WrongLength",
            Error::SizeCap { .. } => "SizeCap",
            Error::BadWitness(_) => "BadWitness",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NotEnumerable => "NotEnumerable",
            Error::Parse(_) => "Parse",
            Error::BadRing(_) => "BadRing",
            Error::Unsupported(_) => "Unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

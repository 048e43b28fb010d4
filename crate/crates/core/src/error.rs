use thiserror::Error;

use crate::partition::Partition;

/// Errors raised by partition, bijection and involution routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition {0} is not strict")]
    NotStrict(Partition),
    #[error("partition {partition} is not a member of {family}")]
    NotMember { partition: Partition, family: String },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("bad increment partition: {0}")]
    BadIncrement(String),
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Errors raised by the truncated series engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("minimum exponent {min_exp} is below the configured floor {floor}")]
    TruncationUnderflow { min_exp: i64, floor: i64 },
    #[error("infinite product (a; q^{step})_inf diverges: monomial q-exponent {exponent} must be >= 1")]
    DivergentProduct { exponent: i64, step: u32 },
    #[error("double sum exponent is not bounded below / coercive: {0}")]
    UnboundedSpec(String),
    #[error("comparison through q^{through} exceeds known precision q^{known}")]
    Precision { through: i64, known: i64 },
    #[error("identity {0} has no enumeration form")]
    NoEnumForm(String),
    #[error("identity {id} does not support {mode} verification")]
    Unsupported { id: String, mode: String },
    #[error(transparent)]
    Partition(#[from] Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

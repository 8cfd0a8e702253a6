use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: BigInt },

    #[error("the square of a class in an even lattice is even, got {0}")]
    OddSquare(BigInt),

    #[error("{0} is not prime")]
    NotPrime(BigInt),

    #[error("invalid deformation type: {0}")]
    InvalidDeformationType(String),

    #[error("m̃ undefined for this family ({0})")]
    MtildeUndefined(Family),

    #[error("{op} is not defined for {family}; {hint}")]
    UnsupportedFamily {
        op: &'static str,
        family: Family,
        hint: &'static str,
    },

    #[error("divisibility {gamma} is impossible here: {reason}")]
    InvalidDivisibility { gamma: BigInt, reason: String },

    #[error("k = {k} is outside [0, {mt}]")]
    KOutOfRange { k: BigInt, mt: BigInt },

    #[error("no integral c for (m̃ = {mt}, k = {k}, l = {l}); no primitive class has these invariants")]
    NoIntegralC { mt: BigInt, k: BigInt, l: BigInt },

    #[error("{a} is not a unit of the discriminant form of order 2·{mt}")]
    NotAUnit { a: BigInt, mt: BigInt },

    #[error("wall with k = {k} is not orthogonal to a class of divisibility {gamma}")]
    NotOrthogonal { k: BigInt, gamma: BigInt },

    #[error("no such polarization type (square {square}, divisibility {gamma})")]
    NoSuchPolarization { square: BigInt, gamma: BigInt },

    #[error("non-integral discriminant {numerator}/{denominator}")]
    NonIntegralDiscriminant {
        numerator: BigInt,
        denominator: BigInt,
    },

    #[error("search parameters out of range: {0}")]
    SearchRange(String),

    #[error("internal invariant breach: {0}")]
    Invariant(String),
}

/// Coarse classification used to pick a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Nonexistence,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NoSuchPolarization { .. } | Error::NoIntegralC { .. } => ErrorKind::Nonexistence,
            Error::NonIntegralDiscriminant { .. } | Error::Invariant(_) => ErrorKind::Internal,
            _ => ErrorKind::Usage,
        }
    }
}

pub(crate) fn require_positive(what: &'static str, value: &BigInt) -> Result<()> {
    if value.sign() == num_bigint::Sign::Plus {
        Ok(())
    } else {
        Err(Error::NonPositive {
            what,
            value: value.clone(),
        })
    }
}

use num_bigint::BigInt;
use thiserror::Error;

use crate::matrix::IntMat2;
use crate::subgroup::SubgroupTag;

/// Errors raised by the calculus.
///
/// `Parse` is kept apart from the domain variants so front ends can map the
/// two families to different exit statuses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has determinant {det}, expected +1 or -1")]
    NotUnimodular { det: BigInt },

    #[error("matrix {matrix} is not in {tag}")]
    NotMember { matrix: Box<IntMat2>, tag: SubgroupTag },

    #[error("surgery descriptor {matrix} has determinant -1, expected +1")]
    OrientationReversing { matrix: Box<IntMat2> },

    #[error("surgery {matrix} is not trivial mod 2 (lower-left entry is odd)")]
    NotTrivialMod2 { matrix: Box<IntMat2> },

    #[error("({a}, {c}) is not a coprime pair")]
    NotCoprime { a: BigInt, c: BigInt },

    #[error("Moebius band parameter {a} must be odd")]
    EvenTwist { a: BigInt },

    #[error("bundle degrees {a} and {b} differ in parity; the plane bundle is not orientable")]
    NonOrientableBundle { a: BigInt, b: BigInt },

    #[error("transport shift {n} is outside {{-1, 0, 1}}")]
    TransportShift { n: BigInt },

    #[error("factorization would need {letters} letters")]
    WordTooLong { letters: BigInt },

    #[error("letter exponent must be nonzero")]
    ZeroExponent,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

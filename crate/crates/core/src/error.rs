use thiserror::Error;

use crate::Int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a negative fundamental discriminant")]
    NonFundamental(i64),
    #[error("operands belong to different fields (discriminants {0} and {1})")]
    MixedDiscriminant(i64, i64),
    #[error("both arguments are zero")]
    BothZero,
    #[error("discriminant {0} is not norm-Euclidean")]
    NotEuclideanField(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(Int),
    #[error("determinant {0} is not a unit")]
    NonUnitDeterminant(String),
    #[error("elements are not coprime")]
    NotCoprime,
    #[error("the ideal generated by {0} is not principal")]
    NonPrincipal(String),
    #[error("point is not in reduced form")]
    NotReduced,
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("circles are not tangent")]
    NotTangent,
    #[error("generators do not span a rank-2 lattice")]
    RankDeficient,
    #[error("lattice is not primeval")]
    NotPrimeval,
    #[error("search exhausted its box without finding {0}")]
    SearchExhausted(&'static str),
    #[error("residue {0} is not invertible modulo {1}")]
    NotInvertibleResidue(String, Int),
    #[error("class number formula gave the non-integer {0}")]
    NonIntegerResult(String),
    #[error("discriminant {0} has no ghost circle")]
    NoGhostCircle(i64),
    #[error("certificate failure: {0}")]
    CertificateFailure(String),
    #[error("not a valid circle: {0}")]
    InvalidCircle(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// The arithmetic here is exact but truncated: scalars live in Z/p^K, so any
/// question that would need digits beyond the K-th surfaces as
/// [`Error::PrecisionExhausted`] instead of a silently wrong answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid parameters: {0}")]
    InvalidContext(String),

    #[error("answer depends on digits beyond the working precision")]
    PrecisionExhausted,

    #[error("element is not a unit")]
    NotAUnit,

    #[error("matrix lies outside the order (lower-left entry has valuation below the level)")]
    NotInOrder,

    #[error("matrix does not generate a left ideal of reduced norm p")]
    BadGenerator,

    #[error("label does not name an ideal of this order")]
    UnknownLabel,

    #[error("census lookup did not produce exactly one match")]
    InternalCensus,

    #[error("two census entries generate the same ideal")]
    CensusCollision,

    #[error("ideal matches no census entry")]
    NoCensusMatch,

    #[error("quadratic character is undefined for p = 2")]
    CharacterUndefined,

    #[error("matrix is scalar mod p")]
    ScalarModP,

    #[error("matrix is singular mod p")]
    SingularModP,

    #[error("matrix has no valuation-finite determinant")]
    SingularInput,

    #[error("label is on the wrong side for this map")]
    WrongSide,
}

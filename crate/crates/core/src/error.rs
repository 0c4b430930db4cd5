use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("modulus {modulus:?} is reducible over F_{p}")]
    ReducibleModulus { p: u32, modulus: Vec<u32> },
    #[error("modulus has degree {found}, expected {expected}")]
    ModulusDegree { expected: usize, found: usize },
    #[error("field of size {p}^{degree} exceeds the 2^32 element limit")]
    FieldTooLarge { p: u32, degree: usize },
    #[error("no embedding of F_(q^{n}) into F_(q^{m}): {n} does not divide {m}")]
    NoEmbedding { n: usize, m: usize },
    #[error("element {value} does not belong to field level {level}")]
    LevelMismatch { level: &'static str, value: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("twist mismatch: {0} vs {1}")]
    TwistMismatch(usize, usize),
    #[error("twist s={s} is not coprime to m={m}")]
    TwistNotCoprime { s: usize, m: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("basis elements are linearly dependent over F_q")]
    DependentBasis,
    #[error("norm condition violated: {0}")]
    NormCondition(String),
    #[error("enumeration of {needed} states exceeds the guard of {guard}")]
    GuardExceeded { needed: BigUint, guard: BigUint },
    #[error("word length {found} does not match code length {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

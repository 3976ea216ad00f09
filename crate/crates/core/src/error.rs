use thiserror::Error;

/// Errors raised by the arithmetic kernels and the tower bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field of order {p}^{m} exceeds the configured bound {bound}")]
    FieldTooLarge { p: u64, m: u32, bound: u64 },
    #[error("Witt length {n} outside the supported range 1..={max}")]
    WittLength { n: usize, max: usize },
    #[error("modulus p^n = {p}^{n} does not fit the integer backend")]
    ModulusTooLarge { p: u64, n: usize },
    #[error("operands belong to different contexts: {0}")]
    ContextMismatch(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
    #[error("insufficient precision: need {needed}, have {have} ({what})")]
    PrecisionShortfall { needed: i64, have: i64, what: String },
    #[error("genus is not a nonnegative integer: {0}")]
    NonIntegralGenus(String),
    #[error("class is not primitive: {0}")]
    NonPrimitive(String),
    #[error("tower is not geometric (n_c = {0}); stability needs n_c = 0")]
    NotGeometric(u32),
    #[error("level {n} is below the unramified depth {nu}")]
    BelowUnramified { n: u32, nu: u32 },
    #[error("denominator factor is not a monic irreducible polynomial: {0}")]
    UnfactoredDenominator(String),
    #[error("numerator and denominator are not coprime: {0}")]
    NotCoprime(String),
    #[error("point is a pole of coordinate {0}")]
    Pole(usize),
    #[error("place is ramified at level {0}")]
    RamifiedPlace(u32),
    #[error("root field F_{p}^{root_m} does not contain F_{p}^{m}")]
    RootFieldMismatch { p: u64, m: u32, root_m: u32 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for violations of a mathematical precondition, as opposed to
    /// malformed input documents.
    pub fn is_mathematical(&self) -> bool {
        !matches!(self, Error::Invalid(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

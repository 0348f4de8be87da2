use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("element does not belong to {group}: {reason}")]
    AmbientMismatch { group: String, reason: String },

    #[error("the integer system has no solution")]
    NoSolution,

    #[error("point group has {size} elements, above the enumeration cap {cap}")]
    EnumerationCap { size: u128, cap: u128 },

    #[error("inconsistent holonomy lifts: {0}")]
    InconsistentLifts(String),

    #[error("{family} needs n >= {min}, got {n}")]
    StrandCount {
        family: String,
        n: usize,
        min: usize,
    },

    #[error("{symbol} is not a generator of {family}: {reason}")]
    SymbolNotInFamily {
        symbol: String,
        family: String,
        reason: String,
    },

    #[error("index out of range in {symbol} for n = {n}")]
    IndexOutOfRange { symbol: String, n: usize },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("cycle type {cycle_type:?} does not fit n = {n}")]
    PartitionDoesNotFit { cycle_type: Vec<usize>, n: usize },

    #[error("{0} acts with signs; use the full conjugacy test instead")]
    SignedFamily(String),

    #[error("no conjugator sends the cycle to its {k}-th power in S_{n}")]
    NoConjugator { n: usize, k: usize },

    #[error("every complement candidate for (n, k) = ({n}, {k}) in {family} has finite order")]
    NoInfiniteOrderComplement { family: String, n: usize, k: usize },

    #[error("holonomy is not cyclic")]
    NonCyclicHolonomy,

    #[error("invalid element JSON: {0}")]
    Json(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Errors that come from malformed input text rather than from the mathematics.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::Json(_))
    }
}

use thiserror::Error;

/// Errors raised by the partition, pair-set, entropy and distribution APIs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("universe must contain at least one element")]
    EmptyUniverse,
    #[error("duplicate label `{0}` in universe")]
    DuplicateLabel(String),
    #[error("universe has {size} elements but {labels} labels were given")]
    LabelCount { size: usize, labels: usize },
    #[error("a partition needs at least one block")]
    NoBlocks,
    #[error("element {element} appears in more than one block")]
    Overlap { element: usize },
    #[error("blocks do not cover the universe: element {element} is missing")]
    Cover { element: usize },
    #[error("element {element} is out of range for a universe of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("block {index} is empty")]
    EmptyBlock { index: usize },
    #[error("operands live on different universes")]
    UniverseMismatch,
    #[error("size {size} exceeds the limit of {max}")]
    TooLarge { size: usize, max: usize },
    #[error("size {size} is below the minimum of {min}")]
    TooSmall { size: usize, min: usize },
    #[error("pair set is not open (its complement is not an equivalence relation)")]
    NotOpen,
    #[error("logarithm base must be a finite number greater than 1, got {0}")]
    BadBase(f64),
    #[error("value {value} is outside the domain of {what}")]
    Domain { what: &'static str, value: f64 },
    #[error("counts are all zero")]
    AllZero,
    #[error("entry {index} is negative or not finite ({value})")]
    Negative { index: usize, value: f64 },
    #[error("probabilities sum to {sum}, not 1")]
    NotNormalized { sum: f64 },
    #[error("distribution lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("q is zero at index {index} where p is positive")]
    Support { index: usize },
    #[error("mixing weight {0} is outside [0, 1]")]
    BadWeight(f64),
    #[error("parameter {param} is not allowed for the {family} family")]
    BadParam { family: &'static str, param: f64 },
    #[error("matrix is {rows}x{cols} but the distribution has {expected} entries")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("invalid distance matrix: {0}")]
    InvalidDistanceMatrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;

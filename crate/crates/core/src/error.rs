use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by parsing, feature construction, training, and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("missing required column {column:?}")]
    MissingColumn { column: String },

    #[error("row {row}: column {column:?} has non-numeric value {value:?}")]
    NonNumeric {
        row: usize,
        column: String,
        value: String,
    },

    #[error("row {row}: {message}")]
    InvalidRecord { row: usize, message: String },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("unknown well {name:?}; available wells: {available:?}")]
    UnknownWell {
        name: String,
        available: Vec<String>,
    },

    #[error("validation fraction must lie in (0, 1), got {fraction}")]
    InvalidFraction { fraction: f64 },

    #[error("log10 domain error: PHIND must be > 0, got {value}")]
    NonPositivePorosity { value: f64 },

    #[error("pairwise interactions need at least 2 base features, got {count}")]
    TooFewFeatures { count: usize },

    #[error("depth not sorted within well {well:?} at record {index}")]
    UnsortedDepth { well: String, index: usize },

    #[error("degenerate regression for facies {facies}: {reason}")]
    DegenerateFit { facies: u8, reason: String },

    #[error("non-finite value in raw scores at row {row}, class {class}")]
    NonFiniteScore { row: usize, class: usize },

    #[error("feature matrix has no rows")]
    EmptyFeatureMatrix,

    #[error("n_classes = {n_classes} is smaller than the largest label code {max_code}")]
    TooFewClasses { n_classes: usize, max_code: u8 },

    #[error("feature columns do not match the model: missing {missing:?}, extra {extra:?}")]
    FeatureMismatch {
        missing: Vec<String>,
        extra: Vec<String>,
    },

    #[error("model document error: {0}")]
    ModelFormat(String),

    #[error(
        "model format version {found} is not supported (expected {expected})"
    )]
    ModelVersion { found: u64, expected: u64 },

    #[error("label vectors differ in length: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("wells appear in both train and blind sets: {wells:?}")]
    WellOverlap { wells: Vec<String> },

    #[error("cross-validation needs at least 2 wells, got {count}")]
    TooFewWells { count: usize },

    #[error("seed sweep needs at least 2 seeds, got {count}")]
    TooFewSeeds { count: usize },

    #[error("baseline F1 is zero; relative improvement is undefined")]
    ZeroBaseline,

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Process exit code class for CLI reporting: 2 i/o, 3 data validation,
    /// 4 configuration, 5 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 2,
            Error::Csv(_)
            | Error::MissingColumn { .. }
            | Error::NonNumeric { .. }
            | Error::InvalidRecord { .. }
            | Error::EmptyDataset
            | Error::UnknownWell { .. }
            | Error::NonPositivePorosity { .. }
            | Error::UnsortedDepth { .. }
            | Error::DegenerateFit { .. }
            | Error::LengthMismatch { .. }
            | Error::WellOverlap { .. } => 3,
            Error::InvalidFraction { .. }
            | Error::TooFewFeatures { .. }
            | Error::TooFewClasses { .. }
            | Error::TooFewWells { .. }
            | Error::TooFewSeeds { .. }
            | Error::FeatureMismatch { .. }
            | Error::ModelFormat(_)
            | Error::ModelVersion { .. }
            | Error::Config(_) => 4,
            Error::NonFiniteScore { .. }
            | Error::EmptyFeatureMatrix
            | Error::ZeroBaseline => 5,
        }
    }
}

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    // --- dataset / CSV ---
    #[error("empty input: no header row")]
    EmptyInput,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("class column `{0}` not found in header")]
    MissingClassColumn(String),
    #[error("line {line}, column `{column}`: non-finite numeric value `{token}`")]
    NonFiniteNumeric {
        line: u64,
        column: String,
        token: String,
    },
    #[error("line {line}, column `{column}`: missing value")]
    MissingValue { line: u64, column: String },
    #[error("line {line}, column `{column}`: label `{token}` is not in the declared label set")]
    UnknownLabel {
        line: u64,
        column: String,
        token: String,
    },
    #[error("record {0} is unlabeled")]
    UnlabeledRecord(usize),
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("invalid dataset: {0}")]
    InvalidData(String),

    // --- klassen ---
    #[error("growth rate requires a positive previous value, got {0}")]
    NonPositiveBase(f64),
    #[error("contribution requires a positive combined total, got {0}")]
    NonPositiveTotal(f64),
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("invalid panel: {0}")]
    InvalidPanel(String),
    #[error("panel is missing {0}")]
    MissingPanelData(String),
    #[error("province panel must contain exactly one region, found {0}")]
    ProvinceRegionCount(usize),
    #[error("cannot aggregate an empty quadrant list")]
    EmptyAggregation,

    // --- trees / learners ---
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("entropy of an empty distribution is undefined")]
    EmptyDistribution,
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    // --- evaluation ---
    #[error("fold count {k} is invalid for {n} records")]
    BadFoldCount { k: usize, n: usize },
    #[error("empty test set")]
    EmptyTestSet,
    #[error("empty confusion matrix")]
    EmptyMatrix,
    #[error("prediction vector length {got}, expected {expected}")]
    PredictionLength { got: usize, expected: usize },

    // --- model files ---
    #[error("model JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported model format version {0}")]
    FormatVersion(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

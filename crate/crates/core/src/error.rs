use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("sequence or array must not be empty")]
    Empty,

    #[error("entry {index} is not unimodular (|e| = {magnitude})")]
    NotUnimodular { index: usize, magnitude: f64 },

    #[error("invalid phase order {0}")]
    InvalidPhaseOrder(u32),

    #[error("exponent {exponent} at position {index} is outside [0, {q})")]
    ExponentOutOfRange { index: usize, exponent: u32, q: u32 },

    #[error("cannot parse symbol '{0}' (expected '+', '-', 'j' or 'J')")]
    BadSymbol(char),

    #[error("malformed quad: {0}")]
    MalformedQuad(String),

    #[error("unsupported GCP length {length}; {detail}")]
    UnsupportedLength { length: usize, detail: String },

    #[error("unknown seed '{name}'; catalog holds: {available}")]
    UnknownSeed { name: String, available: String },

    #[error("not a Golay complementary pair: {0}")]
    NotGcp(String),

    #[error("binary sequences required: {0}")]
    NotBinary(String),

    #[error("catalog entry '{name}' failed validation (transcription error?): {reason}")]
    Transcription { name: String, reason: String },

    #[error("length {length} does not match any parameter of the {family} family")]
    FamilyMismatch { family: &'static str, length: usize },

    #[error("invalid family parameter: {0}")]
    InvalidFamilyParam(String),

    #[error("undersampled peak estimate: oversample factor {0} is below 4")]
    Undersampled(usize),

    #[error("time instant {0} is outside [0, 1]")]
    TimeOutOfRange(f64),

    #[error("exact arithmetic needs phase order dividing 4: {0}")]
    NoExactPath(String),

    #[error("phase order missing on {0}")]
    MissingPhaseOrder(String),

    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),

    #[error("measured PMEPR {measured} of array {array} column {column} exceeds analytic bound {bound}")]
    BoundViolated { array: usize, column: usize, measured: f64, bound: f64 },

    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),

    #[error("invalid search request: {0}")]
    InvalidSearch(String),

    #[error("invalid length {0}: must be at least 1")]
    InvalidLength(usize),

    #[error("file format error: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

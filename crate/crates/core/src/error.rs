use thiserror::Error;

pub type Result<T, E = EdaError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum EdaError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error at line {line}: {message}")]
    Csv { line: u64, message: String },

    #[error("no header")]
    NoHeader,

    #[error("duplicate column name `{0}`")]
    DuplicateColumn(String),

    #[error("unknown column(s): {}", .0.join(", "))]
    UnknownColumn(Vec<String>),

    #[error("column `{column}` is {found}, expected {expected}")]
    KindMismatch {
        column: String,
        expected: String,
        found: String,
    },

    #[error("insufficient data: need at least {needed} values, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("zero variance: {0}")]
    ZeroVariance(String),

    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("value out of range at row {row}: {message}")]
    OutOfRange { row: usize, message: String },

    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("component collapse: component {component} has weight {weight:e}; increase ridge or reduce k")]
    ComponentCollapse { component: usize, weight: f64 },

    #[error("schema mismatch: {}", .0.join("; "))]
    SchemaMismatch(Vec<String>),

    #[error("step `{step}` failed: {source}")]
    Step {
        step: &'static str,
        #[source]
        source: Box<EdaError>,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl EdaError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        EdaError::InvalidParameter(msg.into())
    }

    pub(crate) fn at_step(step: &'static str) -> impl FnOnce(EdaError) -> EdaError {
        move |source| EdaError::Step {
            step,
            source: Box::new(source),
        }
    }
}

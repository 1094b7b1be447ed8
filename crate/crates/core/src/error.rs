use thiserror::Error;

/// Everything that can go wrong between ingestion and verdict.
///
/// The variants are grouped by the process exit code the command-line front
/// end maps them to (see [`RaoError::exit_code`]).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RaoError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("monomial exponent overflow (more than 16 bits in one variable)")]
    ExponentOverflow,

    #[error("degree cap exceeded: S-pair of degree {degree} is above the limit {cap}")]
    DegreeCap { degree: u32, cap: u32 },

    #[error("generator {index} is not homogeneous")]
    NotHomogeneous { index: usize },

    #[error("not a curve ideal (rank/degree defect): {0}")]
    NotCurveIdeal(String),

    #[error("not codimension 2 / not saturated: {0}")]
    NotCodimTwo(String),

    #[error("inconsistent curve data: {}", .0.join("; "))]
    Inconsistent(Vec<String>),

    #[error("unsupported hypothesis: {0}")]
    Unsupported(String),

    #[error("refused: {0}")]
    Refused(String),
}

impl RaoError {
    pub fn inconsistent(msg: impl Into<String>) -> Self {
        RaoError::Inconsistent(vec![msg.into()])
    }

    /// 1 usage/parse, 2 mathematical inconsistency, 3 unsupported hypothesis.
    pub fn exit_code(&self) -> i32 {
        match self {
            RaoError::Parse { .. } | RaoError::InvalidArgument(_) | RaoError::NotHomogeneous { .. } => 1,
            RaoError::NotCurveIdeal(_) | RaoError::NotCodimTwo(_) | RaoError::Inconsistent(_) => 2,
            RaoError::ExponentOverflow
            | RaoError::DegreeCap { .. }
            | RaoError::Unsupported(_)
            | RaoError::Refused(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, RaoError>;

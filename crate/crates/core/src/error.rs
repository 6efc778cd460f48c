use thiserror::Error;

/// Everything that can go wrong while building complexes, tracing paths or
/// evaluating bounds.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the curve complex is not connected ({components} components)")]
    ComplexDisconnected { components: usize },

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("sample {0} lies off the curve complex")]
    PathOffCurve(usize),

    #[error("edge word is not closed")]
    NotClosed,

    #[error("point lies on the curve")]
    PointOnCurve,

    #[error("condition (*) violated: {clause} (cube {i}{})", .j.map(|j| format!(", cube {j}")).unwrap_or_default())]
    ConditionStarViolated {
        clause: String,
        i: usize,
        j: Option<usize>,
    },

    #[error("degree {0} exceeds the multinomial expansion limit")]
    DegreeTooLarge(usize),

    #[error("return map blew up for v0 = {0}")]
    Blowup(f64),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("unsupported document format {0:?}")]
    Format(String),

    #[error("json: {0}")]
    Json(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end: 2 for
    /// malformed or invalid inputs, 3 when a mathematical precondition fails.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PathOffCurve(_)
            | Error::NotClosed
            | Error::PointOnCurve
            | Error::ConditionStarViolated { .. }
            | Error::Blowup(_)
            | Error::ComplexDisconnected { .. }
            | Error::DegenerateGeometry(_)
            | Error::DegreeTooLarge(_) => 3,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

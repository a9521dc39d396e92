use thiserror::Error;

use crate::label::CellLabel;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree must be a positive integer, got {0}")]
    InvalidDegree(i64),
    #[error("cell {cell} references missing face {face}")]
    DanglingFace { cell: String, face: String },
    #[error("label {0} occurs more than once")]
    DuplicateLabel(String),
    #[error("cell {cell} lists face {face} more than once")]
    RepeatedFace { cell: String, face: String },
    #[error("dimension {0} is empty but higher dimensions are not")]
    EmptyDimension(usize),
    #[error("no consistent orientation for cell {0}")]
    NoConsistentOrientation(String),
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("points are at distance pi/2; minimizing geodesic is not unique")]
    AntipodalPair,
    #[error("points coincide; geodesic is undefined")]
    DegeneratePair,
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("no chart available for {0}")]
    ChartUnavailable(String),
    #[error("continuation path meets the branch curve near parameter {0:?}")]
    PathHitsBranchLocus(Vec<f64>),
    #[error("group element image of {0} matches no cell")]
    NotInvariant(String),
    #[error("image of {0} matches several cells")]
    AmbiguousMatch(String),
    #[error("lift of {0} is inconsistent: {1}")]
    LiftInconsistent(String, String),
    #[error("malformed label {0:?}")]
    BadLabel(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unsupported format version {0}")]
    VersionMismatch(String),
    #[error("bad projection: {0}")]
    BadProjection(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn dangling(cell: &CellLabel, face: &CellLabel) -> Error {
        Error::DanglingFace {
            cell: cell.to_string(),
            face: face.to_string(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

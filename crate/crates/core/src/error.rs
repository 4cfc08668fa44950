use thiserror::Error;

/// Errors produced by curation, indexing, and I/O operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("degenerate distances: a camera center coincides with a point (d_min = 0)")]
    DegenerateDistances,
    #[error("level {level} out of range, index has {levels} levels")]
    LevelOutOfRange { level: usize, levels: usize },
    #[error("empty camera trajectory")]
    EmptyTrajectory,
    #[error("no surfel pairs within neighbor radius {0}")]
    NoNeighborPairs(f64),
    #[error("degenerate point configuration: {0}")]
    DegenerateConfiguration(&'static str),
    #[error("point count mismatch: {left} vs {right}")]
    CountMismatch { left: usize, right: usize },
    #[error("no box for frame {0}")]
    MissingBoxForFrame(u64),
    #[error("box frame {box_frame} does not match sweep frame {sweep_frame}")]
    FrameMismatch { box_frame: u64, sweep_frame: u64 },
    #[error("raycast input grid must be two-state (OCCUPIED/FREE only)")]
    InvalidInputState,
    #[error("grid spec mismatch: {0}")]
    SpecMismatch(String),
    #[error("empty point cloud: {0}")]
    EmptyCloud(&'static str),
    #[error("invalid scene spec: {0}")]
    InvalidSpec(String),
    #[error("grid too large: {cells} cells exceeds cap of {cap}")]
    GridTooLarge { cells: u128, cap: u64 },

    #[error("{path}: malformed header: {reason}")]
    MalformedHeader { path: String, reason: String },
    #[error("{path}: unsupported format: {reason}")]
    UnsupportedFormat { path: String, reason: String },
    #[error("{path}: truncated payload: expected {expected} records, got {got}")]
    TruncatedPayload {
        path: String,
        expected: usize,
        got: usize,
    },
    #[error("{path}:{line}: parse error: {reason}")]
    ParseError {
        path: String,
        line: usize,
        reason: String,
    },
    #[error("{path}:{line}: rotation is not rigid (deviation {deviation:.3e} exceeds 1e-4)")]
    NonRigidRotation {
        path: String,
        line: usize,
        deviation: f64,
    },
    #[error("{path}: config error: {reason}")]
    Config { path: String, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} requires {requested} qubits, the limit is {max}")]
    Capacity {
        what: &'static str,
        requested: usize,
        max: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("qubit index {qubit} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),
    #[error("basis index {index} out of range, must be below {bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("invalid bit string {0:?}: only '0' and '1' are allowed")]
    InvalidBitString(String),
    #[error("matrix is not unitary: max |U†U - 1| entry is {deviation:e}")]
    NotUnitary { deviation: f64 },
    #[error("vector has zero norm")]
    ZeroNorm,
    #[error("{what} is not normalized: norm {norm}")]
    NotNormalized { what: String, norm: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("target unreachable from the trial state: marked component norm {marked_norm:e}")]
    Unreachable { marked_norm: f64 },
    #[error("query has no overlap with any database entry")]
    NoOverlap,
    #[error("operation {0:?} has no gate decomposition and cannot be emitted")]
    NonEmissible(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: {message}")]
    Format { context: String, message: String },
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Capacity,
    Unreachable,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Capacity { .. } => ErrorClass::Capacity,
            Error::Unreachable { .. } | Error::NoOverlap => ErrorClass::Unreachable,
            _ => ErrorClass::Validation,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.class() {
            ErrorClass::Validation => 1,
            ErrorClass::Capacity => 2,
            ErrorClass::Unreachable => 3,
        }
    }
}

//! Error types shared across the crate.

use thiserror::Error;

/// Graph or schedule construction rejected.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-edge ({0},{0}) is not allowed; use a loop")]
    SelfEdge(usize),
    #[error("vertex {0} has both a self-loop and incident edges")]
    LoopOnNonIsolated(usize),
    #[error("segment duration is negative")]
    NegativeDuration,
    #[error("segment graph has {got} vertices, schedule has {expected}")]
    VertexCountMismatch { got: usize, expected: usize },
    #[error("checkpoint times must be nondecreasing and within the total duration")]
    BadCheckpoint,
}

/// Walk-engine contract violation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("amplitude sub-vector has length {got}, component kind expects {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is {rows}x{cols}, state has length {len}")]
    DimensionMismatch { rows: usize, cols: usize, len: usize },
    #[error("state norm is {norm}, expected 1")]
    NotNormalized { norm: f64 },
    #[error("norm drifted to {norm} after evolution")]
    NormDrift { norm: f64 },
    #[error("sample step dt must be positive")]
    NonPositiveDt,
    #[error("eigendecomposition residual {residual} exceeds tolerance")]
    EigenResidual { residual: f64 },
}

/// Gate compilation rejected.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompileError {
    #[error("qubit index {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("control and target qubits must be distinct")]
    DuplicateQubit,
    #[error("{gate} requires at least {min} qubits")]
    TooFewQubits { gate: &'static str, min: usize },
    #[error("legacy form not prose-specified for {0}")]
    NoLegacyForm(&'static str),
    #[error("matrices have different dimensions")]
    MatrixDimensionMismatch,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Text-format parse failure, always carrying a 1-based line number.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

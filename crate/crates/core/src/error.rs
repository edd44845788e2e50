use thiserror::Error;

/// Errors raised by register, optics, compiler and scenario operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CebitError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cebit count {n} outside supported range 1..={cap}")]
    CebitCountOutOfRange { n: usize, cap: usize },

    #[error("cebit index {index} out of range for {n} cebits")]
    CebitOutOfRange { index: usize, n: usize },

    #[error("amplitude index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("duplicate index {0}")]
    DuplicateIndex(usize),

    #[error("beam {beam} out of range for {beams} beams")]
    BeamOutOfRange { beam: usize, beams: usize },

    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid component: {0}")]
    InvalidComponent(String),

    #[error("unsupported gate: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dense transfer matrix of dimension {dim} exceeds cap {cap}")]
    TransferCapExceeded { dim: usize, cap: usize },

    #[error("netlist line {line}: {message}")]
    NetlistSyntax { line: usize, message: String },

    #[error("state is outside the code space: {0}")]
    OutsideCodeSpace(String),
}

pub type Result<T> = std::result::Result<T, CebitError>;

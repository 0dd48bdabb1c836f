use thiserror::Error;

/// Errors produced by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("operator is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("operator is not traceless (trace {0:e})")]
    NotTraceless(f64),

    #[error("Pauli string {0} has an imaginary phase and cannot generate a rotation")]
    NonHermitianGenerator(String),

    #[error("invalid Pauli string: {0}")]
    InvalidPauli(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("invalid spin system: {0}")]
    InvalidSpinSystem(String),

    #[error("invalid pulse event: {0}")]
    InvalidEvent(String),

    #[error("gradient pulses are not unitary and cannot appear in a propagator")]
    GradientInUnitary,

    #[error("qubit state is not normalized (|alpha|^2 + |beta|^2 = {0})")]
    NotNormalized(f64),

    #[error("the zero vector cannot be normalized")]
    ZeroState,

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

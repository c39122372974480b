use thiserror::Error;

pub type Result<T, E = QssError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QssError {
    #[error("dimension {0} is not a positive power of two")]
    NotPowerOfTwo(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("density matrix is invalid: {0}")]
    InvalidDensity(String),
    #[error("operator is not unitary (max deviation {0:e})")]
    NotUnitary(f64),
    #[error("Kraus operators are not trace preserving (max deviation {0:e})")]
    NotTracePreserving(f64),
    #[error("a Kraus channel needs at least one operator")]
    EmptyChannel,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("qubit {qubit} out of range for a {qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, qubits: usize },
    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),
    #[error("empty qubit list")]
    NoQubits,
    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("invalid protocol configuration: {0}")]
    InvalidConfig(String),
    #[error("exact enumeration supports at most {max} parties, got {parties}")]
    TooManyParties { parties: usize, max: usize },
}

/// Checks `value` lies in `[lo, hi]`, rejecting NaN.
pub(crate) fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(QssError::OutOfRange { name, value, lo, hi })
    }
}

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<f64> {
    check_range(name, value, 0.0, 1.0)
}

//! Shared error type for the whole crate.

/// Errors produced by contract violations, resource limits and parsers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("bit width {width} is invalid (must be 1..={max})", max = crate::bits::MAX_WIDTH)]
    InvalidWidth { width: usize },

    #[error("bit width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("value {value} does not fit in {width} bits")]
    ValueOutOfRange { value: u64, width: usize },

    #[error("cannot keep {m} low bits of a width-{width} string")]
    TruncationOutOfRange { m: usize, width: usize },

    #[error("invalid bit string: {0}")]
    ParseBitString(String),

    #[error("qubit {qubit} out of range for {num_qubits} qubits")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("gate uses qubit {qubit} more than once")]
    RepeatedQubit { qubit: usize },

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    #[error("basis index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("{what} {requested} exceeds the configured cap of {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error(
        "state is not a register basis state: best outcome {best_index} has probability \
         {best_probability}, runner-up {second_index} has probability {second_probability}"
    )]
    NotABasisState {
        best_index: usize,
        best_probability: f64,
        second_index: usize,
        second_probability: f64,
    },

    #[error("state vector is not normalized (squared norm {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("length {len} is not a power of two (>= 2)")]
    NotPowerOfTwo { len: usize },

    #[error("sequence entry {index} is {value}, expected +1 or -1")]
    InvalidSignValue { index: usize, value: i8 },

    #[error("circuit text line {line}: {message}")]
    ParseCircuit { line: usize, message: String },

    #[error("numeric input line {line}: {message}")]
    ParseNumber { line: usize, message: String },

    #[error("internal consistency check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by the operator algebra, encoders, simulators and compiler.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("{what} needs {requested} qubits, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("state has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid value for `{key}`: {reason}")]
    InvalidParameter { key: String, reason: String },

    #[error("occupation {occupation} is outside 0..={truncation}")]
    OccupationOutOfRange { occupation: usize, truncation: usize },

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("operator is not Hermitian (anti-Hermitian residue {0:e})")]
    NotHermitian(f64),

    #[error("the identity string has no rotation circuit")]
    IdentityString,

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error(
        "bond {bond} needs dimension {required} but chi_max is {chi_max} \
         (discarded weight {discarded:e})"
    )]
    BondOverflow {
        bond: usize,
        required: usize,
        chi_max: usize,
        discarded: f64,
    },

    #[error("norm drifted to {norm} at step {step}")]
    NormDrift { step: usize, norm: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(key: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        key: key.to_string(),
        reason: reason.into(),
    }
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("number of qubits must be between 1 and {max}, got {got}")]
    UnsupportedSize { got: usize, max: usize },

    #[error("polynomial has {got} coefficients, expected {expected} (degree n plus one)")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("polynomial {0} is not primitive")]
    NonPrimitivePolynomial(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("element {bits:#b} does not belong to GF(2^{n})")]
    FieldMismatch { bits: u32, n: usize },

    #[error("basis is not linearly independent over GF(2)")]
    SingularBasis,

    #[error("orbit seed must be nonzero")]
    ZeroSeed,

    #[error("a line needs (a, b) != (0, 0)")]
    DegenerateLine,

    #[error("operands act on {left} and {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dense matrices are limited to {max} qubits, got {got}")]
    DimensionTooLarge { got: usize, max: usize },

    #[error("generators do not commute")]
    NonCommutingGenerators,

    #[error("stabilizer is inconsistent: {0}")]
    InconsistentStabilizer(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid quantum net: {0}")]
    InvalidNet(String),

    #[error("cannot parse Pauli string {input:?}: {reason}")]
    PauliParse { input: String, reason: String },

    #[error("constraint states are linearly dependent")]
    DegenerateConstraints,

    #[error("retrodiction is ambiguous for outcome {outcome} after measuring {observable}")]
    AmbiguousInference { observable: char, outcome: usize },

    #[error("this operation needs n = {expected}, got n = {got}")]
    WrongSize { expected: usize, got: usize },

    #[error("grid does not fit the expected pattern: {0}")]
    PatternMismatch(String),

    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

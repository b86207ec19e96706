use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{requested} qubits requested, at most {max} are supported")]
    Capacity { requested: usize, max: usize },

    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("amplitude vector of length {len} is not a power of two matching {n_qubits} qubits")]
    BadLength { n_qubits: usize, len: usize },

    #[error("non-finite amplitude at index {index}")]
    NonFinite { index: usize },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("matrix is not a valid density matrix: {0}")]
    InvalidDensity(String),

    #[error("imaginary residue {residue:e} exceeds tolerance in a Hermitian expectation value")]
    NumericalIntegrity { residue: f64 },

    #[error("mixture weights must be nonnegative and sum to 1 (sum {sum})")]
    WeightSum { sum: f64 },

    #[error("fidelity {0} is outside [0, 1]")]
    FidelityOutOfRange(f64),

    #[error("bound {bound} is not bracketed by the noisy expectation on [0, 1]")]
    NotBracketed { bound: f64 },

    #[error("label universe of size {size} exceeds the enumeration limit {max}")]
    UniverseTooLarge { size: usize, max: usize },

    #[error("unknown observable label {0:?}")]
    UnknownLabel(String),

    #[error("invalid Pauli label {0:?}")]
    BadPauliLabel(String),

    #[error("outcome has probability {probability:e}; cannot condition on it")]
    NoSupport { probability: f64 },

    #[error("basis state {state} is not an eigenstate of {operator} (residual {residual:e})")]
    NotEigenstate {
        state: String,
        operator: String,
        residual: f64,
    },

    #[error("physics violation: {0}")]
    PhysicsViolation(String),

    #[error("axis {0} is not allowed here, expected X or Y")]
    BadAxis(char),

    #[error("identity index {0} is outside 1..=4")]
    BadIdentityIndex(usize),

    #[error("invalid sign {0:?}")]
    BadSign(String),

    #[error("invalid setting policy {0:?}")]
    BadPolicy(String),

    #[error("no accepted shots for setting {setting}")]
    InsufficientStatistics { setting: usize },
}

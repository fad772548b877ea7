use thiserror::Error;

/// Errors produced by field construction, subspace algebra, group actions and
/// the scan machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("no modulus table entry for GF({p}^{t})")]
    NoModulusEntry { p: u32, t: u32 },

    #[error("field order {p}^{t} exceeds the cap of {cap}")]
    OrderCapExceeded { p: u32, t: u32, cap: u64 },

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("element value {value} is out of range for a field of order {q}")]
    ElementOutOfRange { value: u32, q: u32 },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("enumeration of {count} objects exceeds the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },

    #[error("orbit exceeded the budget of {budget} points (partial size {partial})")]
    OrbitBudgetExceeded { budget: usize, partial: usize },

    #[error("group closure exceeded the cap of {cap} elements (partial size {partial})")]
    GroupCapExceeded { cap: usize, partial: usize },

    #[error("generator {index} of {group} is not invertible")]
    SingularGenerator { group: String, index: usize },

    #[error("generator {index} of {group} does not stabilise the edge set")]
    NotAutomorphism { group: String, index: usize },

    #[error("Foulser condition ({which}) violated: {detail}")]
    FoulserCondition { which: u8, detail: String },

    #[error("Gram matrix is not a nondegenerate alternating form: {0}")]
    BadGramMatrix(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

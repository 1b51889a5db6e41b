use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    /// A parameter lies outside the range where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input values violate a structural invariant (normalization, ordering).
    #[error("validation error: {0}")]
    Validation(String),

    /// The two eigenvalues of the two-step operator coincide at this momentum.
    #[error("degenerate momentum k = {k}: eigenvalues coincide")]
    Degenerate { k: f64 },
}

pub type Result<T> = std::result::Result<T, WalkError>;

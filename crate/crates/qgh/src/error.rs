use thiserror::Error;

/// Errors across the crate. Validation findings (axiom violations, contraction
/// slack) are reported as data, not as errors; only structural problems land here.
#[derive(Debug, Error)]
pub enum QghError {
    #[error("fusion window incomplete: the product {a} ⊗ {b} escapes the enumerated cap")]
    IncompleteWindow { a: String, b: String },

    #[error("group table is not associative: ({a} · {b}) · {c} != {a} · ({b} · {c})")]
    NonAssociative { a: String, b: String, c: String },

    #[error("group table has no two-sided inverse for {a}")]
    NonInvertible { a: String },

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("generator set is not closed under conjugation (conjugate of {label} missing)")]
    GeneratorsNotConjClosed { label: String },

    #[error("tail series diverges at the fitted growth order (s_hat = {s_hat:.4}, decay exponent = {exponent:.4} must exceed 1)")]
    DivergentTail { s_hat: f64, exponent: f64 },

    #[error("growth fit refused: only {available} non-empty shells in the requested range (need at least 3)")]
    FitRefused { available: usize },

    #[error("length function is not defined (or not finite) on the requested window: label {label}")]
    LengthUndefined { label: String },

    #[error("seminorm degenerate off scalars: witness has zero seminorm but distinct state values ({gap:.3e})")]
    MetricDegeneracy { gap: f64 },

    #[error("contraction precondition failed on sample {sample}: L^k(Tf) = {lhs:.12} > L^k(f) = {rhs:.12}")]
    ContractionFailed { sample: usize, lhs: f64, rhs: f64 },

    #[error("fusion data file: {0}")]
    FusionFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl QghError {
    /// Process exit class: 2 for configuration/input errors, 1 for numeric errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            QghError::NonAssociative { .. }
            | QghError::NonInvertible { .. }
            | QghError::InvalidParameter { .. }
            | QghError::GeneratorsNotConjClosed { .. }
            | QghError::FusionFile(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, QghError>;

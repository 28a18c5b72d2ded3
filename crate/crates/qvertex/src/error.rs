use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// How a candidate boundary pair fails to be admissible.
#[derive(Debug, Clone, PartialEq)]
pub enum AdmissibilityViolation {
    /// `rank [A | B] = rank` instead of the required `n`.
    RankDeficient { n: usize, rank: usize },
    /// `A B†` differs from its own adjoint by `defect` (max-entry norm),
    /// exceeding the allowed `threshold`.
    NotSelfAdjoint { defect: f64, threshold: f64 },
}

impl std::fmt::Display for AdmissibilityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdmissibilityViolation::RankDeficient { n, rank } => {
                write!(f, "rank [A | B] = {rank}, expected {n}")
            }
            AdmissibilityViolation::NotSelfAdjoint { defect, threshold } => {
                write!(
                    f,
                    "A B† is not self-adjoint: defect {defect:.3e} exceeds {threshold:.3e}"
                )
            }
        }
    }
}

/// Errors produced by the vertex, scattering and I/O layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is numerically singular (pivot magnitude {pivot:.3e})")]
    Singular { pivot: f64 },

    #[error("boundary pair is not admissible: {0}")]
    NotAdmissible(AdmissibilityViolation),

    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e})")]
    NonHermitian { asymmetry: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    #[error("line index {index} out of range for n = {n}")]
    LineIndex { index: usize, n: usize },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("rank bookkeeping is inconsistent: {0}")]
    RankIdentity(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

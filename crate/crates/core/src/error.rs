use thiserror::Error;

/// Errors surfaced by table construction, verification and extraction.
#[derive(Debug, Error)]
pub enum SicError {
    #[error("dimension must be at least 2, got {0}")]
    Dimension(usize),

    #[error("vector has norm {norm} but a unit vector is required (tolerance {tol})")]
    NotUnit { norm: f64, tol: f64 },

    #[error("entries must be finite, found NaN or infinity")]
    NonFinite,

    #[error("table violates structural conditions: {residual:.3e} exceeds {tol:.3e} ({which})")]
    ConditionsViolated {
        which: &'static str,
        residual: f64,
        tol: f64,
    },

    #[error(
        "anchor coordinate v_{index} is numerically zero ({value:.3e}); \
         translate the table by a shift generator and retry, or scan another index"
    )]
    ZeroAnchor { index: usize, value: f64 },

    #[error("free parameter must be unimodular, |z| = {0}")]
    NotUnimodular(f64),

    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot parse generator word at token {token:?}")]
    BadWord { token: String },

    #[error("file schema: {0}")]
    Schema(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, SicError>;

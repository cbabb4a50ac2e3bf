//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by construction, validation, and the numerical engines.
#[derive(Debug, Error)]
pub enum Error {
    /// Two objects live on different spaces.
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    /// An argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Input tensor deviates from permutation symmetry beyond tolerance.
    #[error("asymmetric coefficient tensor: max deviation {deviation:.3e} exceeds {tolerance:.1e}")]
    AsymmetricTensor { deviation: f64, tolerance: f64 },

    /// A generator specification failed validation.
    #[error("invalid generator specification: {0}")]
    InvalidSpec(String),

    /// The requested state space E^k exceeds the configured cap.
    #[error("memory guard: state space size {states} (= {size}^{degree}) exceeds cap {cap}")]
    MemoryGuard {
        size: usize,
        degree: usize,
        states: u128,
        cap: u128,
    },

    /// A rate matrix does not have Markov-generator structure.
    #[error("not a Markov generator: {0}")]
    NotAGenerator(String),

    /// Explicit time stepping became unstable.
    #[error(
        "PIDE time stepping unstable at step {step}: max-norm grew to {norm:.6e} \
         (initial bound {bound:.6e}); dt={dt:.3e} violates the CFL estimate {cfl:.3e}"
    )]
    Unstable {
        step: usize,
        norm: f64,
        bound: f64,
        dt: f64,
        cfl: f64,
    },

    /// Unknown validation scenario or preset name.
    #[error("unknown name `{name}`; available: {available}")]
    UnknownName { name: String, available: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn space_mismatch(context: &str) -> Self {
        Error::SpaceMismatch(context.to_string())
    }

    pub(crate) fn invalid(context: impl Into<String>) -> Self {
        Error::InvalidArgument(context.into())
    }
}

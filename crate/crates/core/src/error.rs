use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |h_ij - conj(h_ji)| = {0:e})")]
    NonHermitian(f64),

    #[error("invalid dimension {0}; must be at least 1")]
    InvalidDim(u64),

    #[error("trace is not 1 (got {0})")]
    TraceError(f64),

    #[error("not positive semi-definite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: u64, right: u64 },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(&'static str),

    #[error("temperature must be positive and finite (got {0})")]
    NonPositiveTemperature(f64),

    #[error("temperatures out of order: expected T2 >= T1, got T1 = {t1}, T2 = {t2}")]
    TemperatureOrder { t1: f64, t2: f64 },

    #[error("alpha = 1 is the relative entropy; use relative_entropy")]
    AlphaOne,

    #[error("alpha must be non-negative and finite (got {0})")]
    InvalidAlpha(f64),

    #[error("sigma is singular but the divergence needs a negative power of it")]
    SigmaSingular,

    #[error("probabilities do not sum to 1 (sum = {0})")]
    NotNormalized(f64),

    #[error("free-energy approximation is singular (denominator {0:e})")]
    ApproxSingular(f64),

    #[error("number of levels must be at least 1")]
    InvalidLevels,

    #[error("number of spins must be in 1..=60 (got {0})")]
    InvalidSpins(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("work bound is stated for positive work only (W = {0:e})")]
    NegativeWork(f64),

    #[error("eigendecomposition did not converge")]
    EigenFailure,
}

pub type Result<T> = core::result::Result<T, Error>;

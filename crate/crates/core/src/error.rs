//! Error type shared across the engine.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the engine.
///
/// Construction-time validation is eager: invalid states and operators are
/// rejected rather than repaired, so a surviving value always satisfies its
/// type's invariants.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Two operands have incompatible dimensions.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A dimension or group degree exceeds the supported range.
    #[error("{name} = {value} outside supported range 1..={max}")]
    CapacityExceeded {
        name: &'static str,
        value: usize,
        max: usize,
    },

    /// An index-like parameter fell outside its valid range.
    #[error("{name} must be in {min}..={max}, got {value}")]
    OutOfRange {
        name: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    /// A matrix entry is NaN or infinite.
    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    /// Hermiticity residual above tolerance.
    #[error("matrix is not Hermitian: ||m - m^H||_F = {residual:e} > {tol:e}")]
    NotHermitian { residual: f64, tol: f64 },

    /// Trace of a would-be density matrix is not 1.
    #[error("trace {re}{im:+}i is not 1 (tolerances: re {re_tol:e}, im {im_tol:e})")]
    TraceNotOne {
        re: f64,
        im: f64,
        re_tol: f64,
        im_tol: f64,
    },

    /// A diagonal entry of a would-be density matrix is too negative.
    #[error("diagonal entry {value:e} at index {index} below floor {floor:e}")]
    NegativeDiagonal { index: usize, value: f64, floor: f64 },

    /// Unitarity residual above tolerance; carries ||u u^H - I||_F.
    #[error("matrix is not unitary: ||u u^H - I||_F = {residual:e} > {tol:e}")]
    NotUnitary { residual: f64, tol: f64 },

    /// A probability-like quantity fell outside [0, 1].
    #[error("{name} must be a probability in [0, 1], got {value}")]
    InvalidProbability { name: &'static str, value: f64 },

    /// A classical strategy violates its invariants.
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    /// A strategy file failed to parse against the JSON schema.
    #[error("strategy file: {0}")]
    StrategyFormat(String),

    /// A Kraus set fails the completeness relation; carries ||sum E^H E - I||_F.
    #[error("Kraus set is not trace preserving: residual {residual:e} > {tol:e}")]
    IncompleteKraus { residual: f64, tol: f64 },

    /// A state's measurement diagonal is outside the admissible band.
    #[error("invalid state: diagonal entry {value:e} at index {index} outside [-{band:e}, 1+{band:e}]")]
    InvalidState { index: usize, value: f64, band: f64 },

    /// A noiseless run was requested on a config that carries noise.
    #[error("noiseless run requested but the config carries a noise spec")]
    UnexpectedNoise,

    /// A noisy run was requested on a config without noise.
    #[error("noisy run requested but the config carries no noise spec")]
    MissingNoise,

    /// The noise schedule names an unsupported insertion point.
    #[error("unsupported noise schedule: {0}")]
    UnsupportedSchedule(String),
}

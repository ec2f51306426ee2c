//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong when building bases, grids, operators, or
/// running checks. Numeric payloads are reported as `f64` regardless of the
/// scalar the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid mode (l={l}, m={m}): |m| must not exceed l")]
    InvalidMode { l: u32, m: i32 },

    #[error("mode (l={l}, m={m}) lies outside the basis truncated at l_max={l_max}")]
    ModeOutOfRange { l: u32, m: i32, l_max: u32 },

    #[error("amplitude vector has {found} entries, basis needs {expected}")]
    AmplitudeCount { expected: usize, found: usize },

    #[error("operands live on different bases (l_max {left} vs {right})")]
    BasisMismatch { left: u32, right: u32 },

    #[error("grid was built for l_max={grid} and cannot serve a basis with l_max={basis}")]
    GridMismatch { grid: u32, basis: u32 },

    #[error("sample array is {found_theta}x{found_phi}, grid expects {n_theta}x{n_phi}")]
    SampleDimensions {
        n_theta: usize,
        n_phi: usize,
        found_theta: usize,
        found_phi: usize,
    },

    #[error("spectral function is not finite at l={l} (argument l(l+1)={arg})")]
    NonFiniteSpectral { l: u32, arg: f64 },

    #[error("shift parameter l={l_param} lies outside the basis with l_max={l_max}")]
    ShiftParamOutOfRange { l_param: u32, l_max: u32 },

    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),

    #[error("l_max={l_max} too small for {what}: need at least {required}")]
    LmaxTooSmall {
        l_max: u32,
        required: u32,
        what: &'static str,
    },

    #[error("m={m} out of range: need |m| <= {max_abs_m}")]
    MOutOfRange { m: i32, max_abs_m: u32 },

    #[error("kernel at m={m} has dimension {found}, expected {expected}")]
    KernelDimension { m: i32, expected: usize, found: usize },

    #[error("target (l={l}, m={m}) needs one ladder step of headroom below l_max={l_max}")]
    NoHeadroom { l: u32, m: i32, l_max: u32 },

    #[error("ladder application produced an unexpected zero ket at step {step}")]
    UnexpectedZeroKet { step: usize },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

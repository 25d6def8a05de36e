use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by exact zero in {context}")]
    DivisionByZero { context: &'static str },

    #[error("cannot parse {input:?} as a scalar: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("expected {expected} initial values, got {got}")]
    WindowLength { expected: usize, got: usize },

    #[error("index {index} is outside the valid range {range}")]
    IndexOutOfRange { index: i64, range: String },

    /// `D_m = 0`: the orbit cannot produce `x_m`.
    #[error("kernel root: D_{0} = 0")]
    KernelRoot(u64),

    /// A window value `x_i` is zero.
    #[error("zero initial value x_{0}")]
    ZeroInitial(i64),

    #[error("operation requires the exact rational backend")]
    FloatBackendRejected,

    #[error("power search exceeded the cap m_max = {0}")]
    MCapExceeded(u64),

    #[error("kernel-root witness does not fit in 64 bits")]
    WitnessOverflow,

    #[error("orbit too short: need at least {needed} points, have {have}")]
    OrbitTooShort { needed: usize, have: usize },

    #[error("orbit terminated at singular step {0}")]
    OrbitNotCompleted(u64),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

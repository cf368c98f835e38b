//! Error type shared by every module of the crate.

/// Errors reported by channel validation, frontier sweeps, and the oracle.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Channel construction or deserialization rejected the input.
    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    /// A power vector does not match the channel dimension.
    #[error("power vector has {actual} entries, channel has {expected} users")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A transmit power lies outside `[0, p_max]`.
    #[error("power {value} at index {index} outside [0, {p_max}]")]
    PowerOutOfRange {
        index: usize,
        value: f64,
        p_max: f64,
    },

    /// An operation defined only for two-user channels was given another size.
    #[error("operation requires a two-user channel, got n = {0}")]
    NotTwoUser(usize),

    /// A positive rate was requested on a link with zero direct gain.
    #[error("direct gain a = 0 cannot support target rate {0} > 0")]
    UnreachableRate(f64),

    /// The constant-rate locus is undefined when the direct gain is zero.
    #[error("direct gain a = 0: constant-rate locus is undefined")]
    DegenerateDirectGain,

    /// Sweep and grid resolutions must be at least 2.
    #[error("resolution must be at least 2, got {0}")]
    ResolutionTooSmall(usize),

    /// A pinned transmitter index outside `1..=n`.
    #[error("pinned index {pinned} outside 1..={n}")]
    InvalidPinnedIndex { pinned: usize, n: usize },

    /// A grid evaluation would exceed the configured point budget.
    #[error("grid of {required} points exceeds budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    /// A finite-difference probe too close to the curve domain boundary.
    #[error("c1 = {c1} within step {h} of the frontier domain [{lo}, {hi}] boundary")]
    OutOfDomain { c1: f64, lo: f64, hi: f64, h: f64 },

    /// The A-C time-sharing exponent needs both direct gains positive.
    #[error("time-sharing condition requires a > 0 and c > 0")]
    GammaUndefined,

    /// Arguments built from different channels were mixed.
    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),

    /// The oracle cloud and the frontier come from different channels.
    #[error("oracle cloud and frontier were built from different channels")]
    SpecMismatch,

    /// Wrapper for downstream I/O failures during export.
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

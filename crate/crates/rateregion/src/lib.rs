//! Achievable rate regions for the n-user Gaussian interference channel
//! with interference treated as noise.
//!
//! Each of `n` transmit-receive pairs sends over a shared medium; receivers
//! decode their own link and treat everything else as additive noise. This
//! crate computes what rate tuples are simultaneously achievable under
//! per-transmitter power control and where the Pareto frontier of that
//! region lies:
//!
//! * [`channel`] — the rate model `C_i = log2(1 + SINR_i)`, channel
//!   validation, and the two-user noise normalization.
//! * [`frontier2`] — the two-user frontier curves `F1`/`F2` (one
//!   transmitter pinned at full power) and their convex-hull consolidation.
//! * [`curvature`] — closed-form convex/concave/inflection classification
//!   of the two-user curves via the `Q1`, `Q2` quantities.
//! * [`timeshare`] — when to operate on a frontier curve and when to
//!   time-share between operating points, including the symmetric-channel
//!   threshold `b*`.
//! * [`nuser`] — the n-user frontier as a union of pinned-power
//!   hyper-surfaces.
//! * [`oracle`] — an independent brute-force Pareto search over the power
//!   grid that every analytic construction is verified against.
//!
//! ```
//! use rateregion::channel::{ChannelSpec, PowerVector, rate_tuple};
//!
//! let spec = ChannelSpec::new(vec![vec![1.0, 1.0], vec![1.0, 1.0]], 1.0, 1.0)?;
//! let rates = rate_tuple(&spec, &PowerVector::new(vec![1.0, 1.0]))?;
//! assert!((rates[0] - 1.5f64.log2()).abs() < 1e-12);
//! # Ok::<(), rateregion::Error>(())
//! ```
//!
//! The companion guide under `book/` walks through the concepts; its code
//! snippets compile and run as part of `cargo test --doc`.

pub mod channel;
pub mod curvature;
mod error;
pub mod frontier2;
mod hull;
pub mod nuser;
pub mod oracle;
pub mod timeshare;

mod export;

pub use error::{Error, Result};

// Book chapters double as doctests so the guide can never drift from the
// API. Non-Rust code fences are ignored by rustdoc.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/channel-model.md")]
    mod channel_model {}
    #[doc = include_str!("../../../book/src/two-user-frontier.md")]
    mod two_user_frontier {}
    #[doc = include_str!("../../../book/src/curvature.md")]
    mod curvature {}
    #[doc = include_str!("../../../book/src/time-sharing.md")]
    mod time_sharing {}
    #[doc = include_str!("../../../book/src/n-user.md")]
    mod n_user {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
}

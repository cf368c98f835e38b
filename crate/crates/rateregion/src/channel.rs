//! The n-user Gaussian interference channel with interference treated as
//! noise.
//!
//! `n` transmitter-receiver pairs share the medium. Receiver `i` sees the
//! desired signal through the power gain `g[i][i]` and every other
//! transmitter through `g[i][j]`, and decodes treating all interference as
//! additive Gaussian noise. The rate of pair `i` under a transmit power
//! vector `P` is
//!
//! ```text
//! C_i(P) = log2(1 + g[i][i] P_i / (sigma^2 + sum_{j != i} g[i][j] P_j))
//! ```
//!
//! in bits per channel use. All gains and powers are linear-scale; dB
//! conversion, when wanted, happens at the CLI boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `log2(1 + x)` computed through `ln_1p` so tiny SINRs keep full precision.
#[inline]
pub(crate) fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / std::f64::consts::LN_2
}

/// `2^r - 1` computed through `exp_m1` so small rates keep full precision.
#[inline]
pub(crate) fn exp2_m1(r: f64) -> f64 {
    (r * std::f64::consts::LN_2).exp_m1()
}

// ---------------------------------------------------------------------------
// ChannelSpec
// ---------------------------------------------------------------------------

/// An n-user interference channel: gain matrix, noise power, and the common
/// per-transmitter power cap.
///
/// `gains[i][j]` is the power gain from transmitter `j` into receiver `i`,
/// so the diagonal holds the desired-link gains. Serializes to the JSON
/// document accepted by every CLI subcommand:
///
/// ```json
/// {"n": 2, "gains": [[1.0, 1.0], [1.0, 1.0]], "noise_power": 1.0, "p_max": 1.0}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawChannelSpec")]
pub struct ChannelSpec {
    n: usize,
    gains: Vec<Vec<f64>>,
    noise_power: f64,
    p_max: f64,
}

#[derive(Deserialize)]
struct RawChannelSpec {
    n: usize,
    gains: Vec<Vec<f64>>,
    noise_power: f64,
    p_max: f64,
}

impl TryFrom<RawChannelSpec> for ChannelSpec {
    type Error = Error;

    fn try_from(raw: RawChannelSpec) -> Result<Self> {
        if raw.n != raw.gains.len() {
            return Err(Error::InvalidChannel(format!(
                "n = {} but gains has {} rows",
                raw.n,
                raw.gains.len()
            )));
        }
        ChannelSpec::new(raw.gains, raw.noise_power, raw.p_max)
    }
}

impl ChannelSpec {
    /// Builds a channel from a square gain matrix, validating every
    /// invariant: gains nonnegative and finite, `noise_power > 0`,
    /// `p_max > 0`, at least one user.
    pub fn new(gains: Vec<Vec<f64>>, noise_power: f64, p_max: f64) -> Result<Self> {
        let n = gains.len();
        if n == 0 {
            return Err(Error::InvalidChannel("gain matrix is empty".into()));
        }
        for (i, row) in gains.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidChannel(format!(
                    "gain row {} has length {}, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            for (j, &g) in row.iter().enumerate() {
                if !g.is_finite() || g < 0.0 {
                    return Err(Error::InvalidChannel(format!(
                        "gain ({i},{j}) = {g} must be finite and nonnegative"
                    )));
                }
            }
        }
        if !(noise_power.is_finite() && noise_power > 0.0) {
            return Err(Error::InvalidChannel(format!(
                "noise_power = {noise_power} must be positive"
            )));
        }
        if !(p_max.is_finite() && p_max > 0.0) {
            return Err(Error::InvalidChannel(format!(
                "p_max = {p_max} must be positive"
            )));
        }
        Ok(Self {
            n,
            gains,
            noise_power,
            p_max,
        })
    }

    /// Number of transmit-receive pairs.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Power gain from transmitter `j` (0-based) into receiver `i`.
    pub fn gain(&self, i: usize, j: usize) -> f64 {
        self.gains[i][j]
    }

    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    /// Parses the channel JSON document.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidChannel(format!("channel JSON: {e}")))
    }

    /// Checks a power vector against this channel: matching length and every
    /// entry in `[0, p_max]`.
    pub fn check_powers(&self, p: &PowerVector) -> Result<()> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: p.len(),
            });
        }
        for (index, &value) in p.as_slice().iter().enumerate() {
            if !(value.is_finite() && (0.0..=self.p_max).contains(&value)) {
                return Err(Error::PowerOutOfRange {
                    index,
                    value,
                    p_max: self.p_max,
                });
            }
        }
        Ok(())
    }

    /// Rate evaluation without validation, writing into `out`. Hot path for
    /// grid sweeps; callers guarantee `p.len() == out.len() == n`.
    pub(crate) fn rates_into(&self, p: &[f64], out: &mut [f64]) {
        for i in 0..self.n {
            let mut interference = self.noise_power;
            for (j, (&gain, &power)) in self.gains[i].iter().zip(p).enumerate() {
                if j != i {
                    interference += gain * power;
                }
            }
            out[i] = log2_1p(self.gains[i][i] * p[i] / interference);
        }
    }
}

// ---------------------------------------------------------------------------
// Power and rate tuples
// ---------------------------------------------------------------------------

/// A transmit power tuple, entry `i` in `[0, p_max]` (checked against a
/// channel at the point of use).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerVector(Vec<f64>);

impl PowerVector {
    pub fn new(powers: Vec<f64>) -> Self {
        Self(powers)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl std::ops::Index<usize> for PowerVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl From<Vec<f64>> for PowerVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// A simultaneously achievable rate tuple in bits per channel use.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatePoint(Vec<f64>);

impl RatePoint {
    pub fn new(rates: Vec<f64>) -> Self {
        Self(rates)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl std::ops::Index<usize> for RatePoint {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl From<Vec<f64>> for RatePoint {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// A power state together with the rate tuple it achieves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint {
    pub powers: PowerVector,
    pub rates: RatePoint,
}

// ---------------------------------------------------------------------------
// Rate evaluation
// ---------------------------------------------------------------------------

/// Evaluates the per-link rates of `spec` at the power vector `p`.
///
/// `C_i = log2(1 + g[i][i] P_i / (noise + sum_{j != i} g[i][j] P_j))`,
/// which is zero exactly when `P_i = 0` or `g[i][i] = 0`.
pub fn rate_tuple(spec: &ChannelSpec, p: &PowerVector) -> Result<RatePoint> {
    spec.check_powers(p)?;
    let mut out = vec![0.0; spec.n()];
    spec.rates_into(p.as_slice(), &mut out);
    Ok(RatePoint::new(out))
}

// ---------------------------------------------------------------------------
// Two-user normalization
// ---------------------------------------------------------------------------

/// A two-user channel with gains normalized by the noise variance:
/// `a = g11/s2`, `b = g12/s2`, `c = g22/s2`, `d = g21/s2`, so that
///
/// ```text
/// C1(P1, P2) = log2(1 + a P1 / (1 + b P2))
/// C2(P1, P2) = log2(1 + c P2 / (1 + d P1))
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedTwoUser {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    p_max: f64,
}

impl NormalizedTwoUser {
    pub fn new(a: f64, b: f64, c: f64, d: f64, p_max: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidChannel(format!(
                    "normalized gain {name} = {v} must be finite and nonnegative"
                )));
            }
        }
        if !(p_max.is_finite() && p_max > 0.0) {
            return Err(Error::InvalidChannel(format!(
                "p_max = {p_max} must be positive"
            )));
        }
        Ok(Self { a, b, c, d, p_max })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    /// `(a, b, c, d, p_max)` for formula-heavy call sites.
    pub fn parts(&self) -> (f64, f64, f64, f64, f64) {
        (self.a, self.b, self.c, self.d, self.p_max)
    }

    /// The equivalent `ChannelSpec` with unit noise power.
    pub fn to_channel_spec(&self) -> ChannelSpec {
        ChannelSpec::new(
            vec![vec![self.a, self.b], vec![self.d, self.c]],
            1.0,
            self.p_max,
        )
        .expect("normalized gains already validated")
    }

    /// `C1(P1, P2)`.
    pub fn c1(&self, p1: f64, p2: f64) -> f64 {
        log2_1p(self.a * p1 / (1.0 + self.b * p2))
    }

    /// `C2(P1, P2)`.
    pub fn c2(&self, p1: f64, p2: f64) -> f64 {
        log2_1p(self.c * p2 / (1.0 + self.d * p1))
    }

    /// The rate pair at `(p1, p2)`.
    pub fn rates(&self, p1: f64, p2: f64) -> RatePoint {
        RatePoint::new(vec![self.c1(p1, p2), self.c2(p1, p2)])
    }
}

/// Divides the gains of a two-user channel by the noise variance.
pub fn normalize(spec: &ChannelSpec) -> Result<NormalizedTwoUser> {
    if spec.n() != 2 {
        return Err(Error::NotTwoUser(spec.n()));
    }
    let s2 = spec.noise_power();
    NormalizedTwoUser::new(
        spec.gain(0, 0) / s2,
        spec.gain(0, 1) / s2,
        spec.gain(1, 1) / s2,
        spec.gain(1, 0) / s2,
        spec.p_max(),
    )
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

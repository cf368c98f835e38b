//! Curvature classification of the two-user frontier curves.
//!
//! Parameterizing `F2` by the swept rate `c1`, its second derivative has the
//! sign of `(theta + a d P1)^2 - (a - theta)(a - theta + a c Pmax)` with
//! `theta = d (1 + b Pmax)`, which is the sign of `P1 - Q1` for
//!
//! ```text
//! Q1 = (Re sqrt((a - theta)(a - theta + a c Pmax)) - theta) / (a d)
//! ```
//!
//! so the whole curve classifies three ways from one scalar:
//!
//! * `Q1 <= 0`: `F2` is convex (time sharing beats the curve),
//! * `Q1 >= Pmax`: `F2` is concave (the curve itself is the hull),
//! * `0 < Q1 < Pmax`: a non-stationary inflection at `P1 = Q1` splits `F2`
//!   into a concave arc next to `A` and a convex arc next to `B`.
//!
//! `F1` behaves symmetrically under the swap `(a, b) <-> (c, d)` via
//! `Q2 = (Re sqrt((c - beta)(c - beta + a c Pmax)) - beta) / (c b)`,
//! `beta = b (1 + d Pmax)`: concave next to `C`, convex next to `B`, with
//! the inflection at `P2 = Q2`.

use serde::{Deserialize, Serialize};

use crate::channel::{NormalizedTwoUser, OperatingPoint, PowerVector};
use crate::error::{Error, Result};
use crate::frontier2::c2_given_p2;

/// Default step, in `c1` units, for the numerical second-difference probe.
pub const DEFAULT_SECOND_DIFF_STEP: f64 = 1e-4;

/// Second-difference quotients closer to zero than this report sign 0.
pub const SECOND_DIFF_ZERO_BAND: f64 = 1e-7;

/// Shape of one frontier curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FrontierClass {
    /// The curve bows below its chords; time sharing between its endpoints
    /// dominates operating on it.
    ConvexFrontier,
    /// The curve bows above its chords and is itself the region boundary.
    ConcaveFrontier,
    /// Curvature changes sign with nonzero slope at the given pinned-sweep
    /// power (`P1` on `F2`, `P2` on `F1`).
    Inflection { power: f64 },
}

/// Closed-form curvature quantities and the resulting classification of both
/// frontier curves.
///
/// `q1`/`q2` are `None` exactly when their closed forms degenerate
/// (`a d = 0` for `q1`, `c b = 0` for `q2`); the classification fields are
/// still always populated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub channel: NormalizedTwoUser,
    /// `d (1 + b Pmax)`.
    pub theta: f64,
    /// `b (1 + d Pmax)`.
    pub beta: f64,
    pub q1: Option<f64>,
    pub q2: Option<f64>,
    pub f2_class: FrontierClass,
    pub f1_class: FrontierClass,
    /// `Φ(Q1, Pmax)` when `F2` inflects: the point `E`.
    pub f2_inflection: Option<OperatingPoint>,
    /// `Φ(Pmax, Q2)` when `F1` inflects.
    pub f1_inflection: Option<OperatingPoint>,
}

/// Square root of the radicand with the real-part convention: a negative
/// radicand contributes zero.
fn re_sqrt(radicand: f64) -> f64 {
    if radicand > 0.0 {
        radicand.sqrt()
    } else {
        0.0
    }
}

fn classify(q: f64, p_max: f64) -> FrontierClass {
    if q <= 0.0 {
        FrontierClass::ConvexFrontier
    } else if q >= p_max {
        FrontierClass::ConcaveFrontier
    } else {
        FrontierClass::Inflection { power: q }
    }
}

/// Computes `Q1`, `Q2`, and the three-way classification of both curves.
///
/// Degenerate denominators classify directly: with `d = 0` the sign
/// expression for `F2` collapses to `-a (a + a c Pmax) < 0`, so the curve is
/// concave throughout (and a zero-width curve when `a = 0` is reported the
/// same way); symmetrically for `F1` with `b = 0` or `c = 0`.
pub fn curvature_report(ch: &NormalizedTwoUser) -> CurvatureReport {
    let (a, b, c, d, pm) = ch.parts();
    let theta = d * (1.0 + b * pm);
    let beta = b * (1.0 + d * pm);

    let (q1, f2_class) = if a == 0.0 || d == 0.0 {
        (None, FrontierClass::ConcaveFrontier)
    } else {
        let q = (re_sqrt((a - theta) * (a - theta + a * c * pm)) - theta) / (a * d);
        (Some(q), classify(q, pm))
    };
    let (q2, f1_class) = if c == 0.0 || b == 0.0 {
        (None, FrontierClass::ConcaveFrontier)
    } else {
        let q = (re_sqrt((c - beta) * (c - beta + a * c * pm)) - beta) / (c * b);
        (Some(q), classify(q, pm))
    };

    let f2_inflection = match f2_class {
        FrontierClass::Inflection { power } => Some(OperatingPoint {
            powers: PowerVector::new(vec![power, pm]),
            rates: ch.rates(power, pm),
        }),
        _ => None,
    };
    let f1_inflection = match f1_class {
        FrontierClass::Inflection { power } => Some(OperatingPoint {
            powers: PowerVector::new(vec![pm, power]),
            rates: ch.rates(pm, power),
        }),
        _ => None,
    };

    CurvatureReport {
        channel: *ch,
        theta,
        beta,
        q1,
        q2,
        f2_class,
        f1_class,
        f2_inflection,
        f1_inflection,
    }
}

/// Sign of the central second difference of the `F2` curve at `c1`:
/// `(F2(c1+h) - 2 F2(c1) + F2(c1-h)) / h^2`, mapped to -1/0/+1 with a
/// [`SECOND_DIFF_ZERO_BAND`] dead zone. A numerical cross-check of the
/// analytic `sign(P1 - Q1)` rule, nothing more.
pub fn second_difference_sign(ch: &NormalizedTwoUser, c1: f64, h: f64) -> Result<i8> {
    if ch.a() == 0.0 {
        return Err(Error::DegenerateDirectGain);
    }
    let pm = ch.p_max();
    let hi = ch.c1(pm, pm);
    if h <= 0.0 || !h.is_finite() || c1 - h < 0.0 || c1 + h > hi {
        return Err(Error::OutOfDomain {
            c1,
            lo: 0.0,
            hi,
            h,
        });
    }
    let f = |x: f64| c2_given_p2(ch, x, pm);
    let quotient = (f(c1 + h)? - 2.0 * f(c1)? + f(c1 - h)?) / (h * h);
    Ok(if quotient.abs() <= SECOND_DIFF_ZERO_BAND {
        0
    } else if quotient > 0.0 {
        1
    } else {
        -1
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

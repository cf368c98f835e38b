//! Two-user frontier curves and their consolidated convex-hull frontier.
//!
//! Fixing `C1 = r` ties the two powers together, and along that locus `C2`
//! is strictly increasing in `P2` (see [`c2_given_p2`]). The frontier of the
//! achievable region therefore splits into two potential lines:
//!
//! * `F2`: `P2` pinned at `p_max`, swept over `c1 in [0, C1(Pmax, Pmax)]`,
//!   running from the C2-axis intercept `A` to the both-at-full-power
//!   point `B`;
//! * `F1`: `P1` pinned at `p_max`, swept over
//!   `c1 in [C1(Pmax, Pmax), C1(Pmax, 0)]`, running from `B` to the C1-axis
//!   intercept `C`.
//!
//! The full frontier is the upper-right convex hull of `F1 ∪ F2`; hull
//! chords that bridge across curve segments are exactly the time-sharing
//! schedules handled in [`crate::timeshare`].

use serde::{Deserialize, Serialize};

use crate::channel::{exp2_m1, NormalizedTwoUser, OperatingPoint, PowerVector, RatePoint};
use crate::error::{Error, Result};
use crate::export::{csv_field, write_csv_row};
use crate::hull;

/// Default number of samples per frontier curve.
pub const DEFAULT_SWEEP_RESOLUTION: usize = 512;

/// Absolute tolerance on rate coordinates used for hull construction and
/// endpoint agreement.
pub const RATE_TOLERANCE: f64 = 1e-9;

// ---------------------------------------------------------------------------
// Pointwise operations
// ---------------------------------------------------------------------------

/// The unique `P1` achieving `C1 = r` when the other transmitter sends at
/// `p2`:
///
/// ```text
/// P1 = (1/a) (1 + b P2) (2^r - 1)
/// ```
///
/// May exceed `p_max`; feasibility is the caller's concern. `r = 0` maps to
/// `P1 = 0` even when `a = 0`; any positive rate with `a = 0` is
/// unreachable.
pub fn p1_for_target_rate(ch: &NormalizedTwoUser, r: f64, p2: f64) -> Result<f64> {
    if ch.a() == 0.0 {
        if r == 0.0 {
            return Ok(0.0);
        }
        return Err(Error::UnreachableRate(r));
    }
    Ok((1.0 + ch.b() * p2) * exp2_m1(r) / ch.a())
}

/// `C2` along the constant-`C1 = r` locus, as a function of `P2`:
///
/// ```text
/// C2(P2) = log2(1 + c P2 / (1 + (d/a)(1 + b P2)(2^r - 1)))
/// ```
///
/// Strictly increasing in `P2` whenever `c > 0`: substituting the `P1`
/// required for rate `r` leaves `g(P2) = a c P2 / (a + d (1 + b P2)(2^r - 1))`
/// inside the log, whose derivative `a c (a + d (2^r - 1))` over a positive
/// square never vanishes for `a, c > 0`.
pub fn c2_given_p2(ch: &NormalizedTwoUser, r: f64, p2: f64) -> Result<f64> {
    if ch.a() == 0.0 {
        return Err(Error::DegenerateDirectGain);
    }
    let t = exp2_m1(r);
    Ok(crate::channel::log2_1p(
        ch.c() * p2 / (1.0 + ch.d() / ch.a() * (1.0 + ch.b() * p2) * t),
    ))
}

// ---------------------------------------------------------------------------
// Frontier curves
// ---------------------------------------------------------------------------

/// One sampled potential line `F_i`: the transmitter `pinned_index` (1-based)
/// is held at `p_max` while the frontier is swept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierSample {
    /// Which transmitter is pinned at `p_max`; the `i` of `F_i`.
    pub pinned_index: usize,
    /// Sampled operating points, ordered by nondecreasing `C1` (equivalently
    /// nonincreasing `C2`): `A` to `B` for `F2`, `B` to `C` for `F1`.
    pub points: Vec<OperatingPoint>,
    /// Number of samples taken.
    pub sweep_resolution: usize,
}

impl FrontierSample {
    /// Rate pairs as plain `(c1, c2)` tuples.
    pub(crate) fn rate_pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points.iter().map(|p| (p.rates[0], p.rates[1]))
    }

    /// Writes `P1,P2,C1,C2,on_hull` rows. A lone curve has no hull, so the
    /// flag is 0 throughout; [`TwoUserFrontier::write_csv`] fills it in.
    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "P1,P2,C1,C2,on_hull")?;
        for p in &self.points {
            write_csv_row(
                out,
                &[
                    csv_field(p.powers[0]),
                    csv_field(p.powers[1]),
                    csv_field(p.rates[0]),
                    csv_field(p.rates[1]),
                    "0".into(),
                ],
            )?;
        }
        Ok(())
    }
}

/// Provenance of a hull vertex: which curve it was sampled from and where.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullSource {
    /// 1 for `F1`, 2 for `F2`.
    pub curve: usize,
    /// Index into that curve's `points`.
    pub sample: usize,
}

/// A vertex of the consolidated frontier with its operating state and the
/// curve sample(s) it came from (the junction point `B` belongs to both).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullVertex {
    pub powers: PowerVector,
    pub rates: RatePoint,
    pub sources: Vec<HullSource>,
}

/// The three named operating points spanning the two-user frontier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorPoints {
    /// `Φ(0, Pmax)`: the C2-axis intercept.
    pub a: OperatingPoint,
    /// `Φ(Pmax, Pmax)`: both transmitters at full power.
    pub b: OperatingPoint,
    /// `Φ(Pmax, 0)`: the C1-axis intercept.
    pub c: OperatingPoint,
}

/// Both sampled curves plus the upper-right convex hull of their union.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoUserFrontier {
    pub channel: NormalizedTwoUser,
    pub f1: FrontierSample,
    pub f2: FrontierSample,
    /// Hull vertices ordered from `A` (smallest `C1`) to `C` (largest `C1`).
    pub hull: Vec<HullVertex>,
    pub anchors: AnchorPoints,
}

fn operating_point(ch: &NormalizedTwoUser, p1: f64, p2: f64) -> OperatingPoint {
    OperatingPoint {
        powers: PowerVector::new(vec![p1, p2]),
        rates: ch.rates(p1, p2),
    }
}

fn linspace(lo: f64, hi: f64, len: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (len - 1) as f64;
    (0..len).map(move |k| {
        if k == 0 {
            lo
        } else if k == len - 1 {
            hi
        } else {
            lo + step * k as f64
        }
    })
}

/// Samples `F2 = Φ(:, Pmax)` uniformly in `c1` over `[0, C1(Pmax, Pmax)]`.
///
/// Endpoints are exact: the first point is `A`, the last is `B`. With
/// `a = 0` the curve degenerates to a vertical stack at `C1 = 0` and is
/// swept uniformly in `P1` instead (still pinned at `P2 = p_max`).
pub fn frontier_f2(ch: &NormalizedTwoUser, resolution: usize) -> Result<FrontierSample> {
    if resolution < 2 {
        return Err(Error::ResolutionTooSmall(resolution));
    }
    let (a, _b, _c, _d, pm) = ch.parts();
    let mut points = Vec::with_capacity(resolution);
    if a == 0.0 {
        // C1 is identically zero; sweep P1 upward so C2 still decreases
        // along the list.
        for p1 in linspace(0.0, pm, resolution) {
            points.push(operating_point(ch, p1, pm));
        }
    } else {
        let c1_max = ch.c1(pm, pm);
        for (k, c1) in linspace(0.0, c1_max, resolution).enumerate() {
            let p1 = if k == resolution - 1 {
                pm
            } else {
                p1_for_target_rate(ch, c1, pm)?.clamp(0.0, pm)
            };
            let c2 = c2_given_p2(ch, c1, pm)?;
            points.push(OperatingPoint {
                powers: PowerVector::new(vec![p1, pm]),
                rates: RatePoint::new(vec![c1, c2]),
            });
        }
    }
    Ok(FrontierSample {
        pinned_index: 2,
        points,
        sweep_resolution: resolution,
    })
}

/// Samples `F1 = Φ(Pmax, :)` uniformly in `c1` over
/// `[C1(Pmax, Pmax), C1(Pmax, 0)]`, solving
///
/// ```text
/// P2 = (1/b) (a Pmax / (2^c1 - 1) - 1)
/// ```
///
/// for the interior points. Endpoints are exact: the first point is `B`
/// (`P2 = p_max`), the last is `C` (`P2 = 0`). When `b = 0`, `C1` does not
/// depend on `P2` and the curve is swept directly in `P2` from `p_max` down
/// to `0`; the same power sweep covers `a = 0`, where the `c1` span is
/// empty.
pub fn frontier_f1(ch: &NormalizedTwoUser, resolution: usize) -> Result<FrontierSample> {
    if resolution < 2 {
        return Err(Error::ResolutionTooSmall(resolution));
    }
    let (a, b, _c, _d, pm) = ch.parts();
    let mut points = Vec::with_capacity(resolution);
    if a == 0.0 || b == 0.0 {
        for p2 in linspace(pm, 0.0, resolution) {
            points.push(operating_point(ch, pm, p2));
        }
    } else {
        let c1_lo = ch.c1(pm, pm);
        let c1_hi = ch.c1(pm, 0.0);
        for (k, c1) in linspace(c1_lo, c1_hi, resolution).enumerate() {
            let p2 = if k == 0 {
                pm
            } else if k == resolution - 1 {
                0.0
            } else {
                ((a * pm / exp2_m1(c1) - 1.0) / b).clamp(0.0, pm)
            };
            let c2 = ch.c2(pm, p2);
            points.push(OperatingPoint {
                powers: PowerVector::new(vec![pm, p2]),
                rates: RatePoint::new(vec![c1, c2]),
            });
        }
    }
    Ok(FrontierSample {
        pinned_index: 1,
        points,
        sweep_resolution: resolution,
    })
}

/// Samples both curves and consolidates them into the convex-hull frontier.
///
/// The hull is the upper-right chain of the sampled union: it starts at `A`,
/// ends at `C`, turns clockwise only, and componentwise dominates every
/// sample. Vertices keep their provenance so the time-sharing module can
/// tell curve runs from bridging chords.
pub fn two_user_frontier(ch: &NormalizedTwoUser, resolution: usize) -> Result<TwoUserFrontier> {
    let f2 = frontier_f2(ch, resolution)?;
    let f1 = frontier_f1(ch, resolution)?;
    let pm = ch.p_max();

    let anchors = AnchorPoints {
        a: operating_point(ch, 0.0, pm),
        b: operating_point(ch, pm, pm),
        c: operating_point(ch, pm, 0.0),
    };

    // Union with provenance; F2 first so the chain starts on the A side.
    let mut union: Vec<(HullSource, (f64, f64))> = Vec::with_capacity(2 * resolution);
    for (i, p) in f2.rate_pairs().enumerate() {
        union.push((HullSource { curve: 2, sample: i }, p));
    }
    for (i, p) in f1.rate_pairs().enumerate() {
        union.push((HullSource { curve: 1, sample: i }, p));
    }
    let coords: Vec<(f64, f64)> = union.iter().map(|&(_, p)| p).collect();
    let chain = hull::upper_right_chain(&coords);

    // Samples that collapse onto the same quantized vertex share it; B in
    // particular is both the last F2 sample and the first F1 sample.
    let mut colocated: std::collections::HashMap<(i64, i64), Vec<HullSource>> =
        std::collections::HashMap::with_capacity(union.len());
    let tick_key = |x: f64, y: f64| {
        (
            (x / hull::RATE_TICK).round() as i64,
            (y / hull::RATE_TICK).round() as i64,
        )
    };
    for &(src, (x, y)) in &union {
        colocated.entry(tick_key(x, y)).or_default().push(src);
    }

    let mut hull_vertices = Vec::with_capacity(chain.len());
    for &idx in &chain {
        let (src, (x, y)) = union[idx];
        let mut sources = vec![src];
        if let Some(group) = colocated.get(&tick_key(x, y)) {
            sources.extend(group.iter().copied().filter(|&s| s != src));
        }
        let op = sample_point(&f1, &f2, src);
        hull_vertices.push(HullVertex {
            powers: op.powers.clone(),
            rates: op.rates.clone(),
            sources,
        });
    }

    Ok(TwoUserFrontier {
        channel: *ch,
        f1,
        f2,
        hull: hull_vertices,
        anchors,
    })
}

fn sample_point<'a>(
    f1: &'a FrontierSample,
    f2: &'a FrontierSample,
    src: HullSource,
) -> &'a OperatingPoint {
    match src.curve {
        1 => &f1.points[src.sample],
        _ => &f2.points[src.sample],
    }
}

impl TwoUserFrontier {
    /// Hull vertices as bare rate points.
    pub fn hull_rates(&self) -> Vec<RatePoint> {
        self.hull.iter().map(|v| v.rates.clone()).collect()
    }

    /// Hull vertices as `(c1, c2)` tuples, ordered by increasing `c1`.
    pub(crate) fn hull_pairs(&self) -> Vec<(f64, f64)> {
        self.hull.iter().map(|v| (v.rates[0], v.rates[1])).collect()
    }

    /// Writes all samples of both curves as `P1,P2,C1,C2,on_hull` rows
    /// (`F2` from `A` to `B`, then `F1` from `B` to `C`).
    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> Result<()> {
        let on_hull: std::collections::HashSet<(usize, usize)> = self
            .hull
            .iter()
            .flat_map(|v| v.sources.iter().map(|s| (s.curve, s.sample)))
            .collect();
        writeln!(out, "P1,P2,C1,C2,on_hull")?;
        for (curve, sample) in [(2, &self.f2), (1, &self.f1)] {
            for (i, p) in sample.points.iter().enumerate() {
                write_csv_row(
                    out,
                    &[
                        csv_field(p.powers[0]),
                        csv_field(p.powers[1]),
                        csv_field(p.rates[0]),
                        csv_field(p.rates[1]),
                        if on_hull.contains(&(curve, i)) { "1" } else { "0" }.into(),
                    ],
                )?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

//! Optimal time-sharing structure on the two-user frontier.
//!
//! Wherever a frontier curve is concave it is itself the boundary of the
//! convex rate region, and the right move is to operate along it. Wherever
//! it is convex, time sharing between two operating states dominates it: the
//! achievable point is the convex combination of the endpoint rate pairs,
//! weighted by the fraction of time spent in each state. A schedule is the
//! resulting alternation of curve runs and straight chords, and it coincides
//! with the convex hull of `F1 ∪ F2`.
//!
//! The schedule here is read off the sampled hull: hull edges that stay
//! within tolerance of their own curve become [`Segment::Curve`] runs, hull
//! edges that bridge over sagging samples become [`Segment::Line`] chords.
//! This evaluates every candidate chord at once; the closed forms below
//! ([`ac_timeshare_condition`], [`symmetric_bstar`]) cover the special case
//! of sharing directly between the two axis intercepts.

use serde::{Deserialize, Serialize};

use crate::channel::{NormalizedTwoUser, OperatingPoint, RatePoint};
use crate::curvature::CurvatureReport;
use crate::error::{Error, Result};
use crate::frontier2::{FrontierSample, HullVertex, TwoUserFrontier, RATE_TOLERANCE};
use crate::hull;

// ---------------------------------------------------------------------------
// Closed-form conditions
// ---------------------------------------------------------------------------

/// Decides whether time sharing directly between the axis intercepts `A` and
/// `C` dominates passing through `B`:
///
/// ```text
/// (1 + c Pmax)(1 + d Pmax)     (1 + a Pmax + b Pmax)^gamma
/// ------------------------  >= (---------------------)
///   1 + c Pmax + d Pmax         (   1 + b Pmax      )
/// ```
///
/// with `gamma = log2(1 + c Pmax) / log2(1 + a Pmax)`. Meaningful in the
/// regime where both curves are convex (`Q1 <= 0` and `Q2 <= 0`); evaluated
/// verbatim regardless.
pub fn ac_timeshare_condition(ch: &NormalizedTwoUser) -> Result<bool> {
    let (a, b, c, d, pm) = ch.parts();
    if a == 0.0 || c == 0.0 {
        return Err(Error::GammaUndefined);
    }
    let lhs = (1.0 + c * pm) * (1.0 + d * pm) / (1.0 + c * pm + d * pm);
    let gamma = (1.0 + c * pm).log2() / (1.0 + a * pm).log2();
    let rhs = ((1.0 + a * pm + b * pm) / (1.0 + b * pm)).powf(gamma);
    Ok(lhs >= rhs)
}

/// The symmetric-channel cross-gain threshold
///
/// ```text
/// b* = sqrt(1 + a Pmax) / Pmax
/// ```
///
/// For `a = c` and `b = d`, cross gains at or above `b*` make one
/// transmitter at a time optimal (the single `A`-`C` chord), and both
/// frontier curves are then convex. At high SNR this approaches
/// `sqrt(a Pmax) / Pmax`.
pub fn symmetric_bstar(a: f64, p_max: f64) -> f64 {
    (1.0 + a * p_max).sqrt() / p_max
}

// ---------------------------------------------------------------------------
// Schedules
// ---------------------------------------------------------------------------

/// One piece of the piecewise frontier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Segment {
    /// Operate along the frontier curve `F_{pinned_index}` for
    /// `c1 in [c1_start, c1_end]`.
    Curve {
        pinned_index: usize,
        c1_start: f64,
        c1_end: f64,
        start: OperatingPoint,
        end: OperatingPoint,
    },
    /// Time-share between two operating states. Spending the fraction `t`
    /// of time at `to` and `1 - t` at `from` realizes the rate pair
    /// `(1 - t) * from.rates + t * to.rates`; that convex coefficient is the
    /// chord's parameterization.
    Line {
        from: OperatingPoint,
        to: OperatingPoint,
    },
}

impl Segment {
    /// The `c1` interval this piece covers.
    pub fn c1_span(&self) -> (f64, f64) {
        match self {
            Segment::Curve {
                c1_start, c1_end, ..
            } => (*c1_start, *c1_end),
            Segment::Line { from, to } => (from.rates[0], to.rates[0]),
        }
    }

    /// Rate pair realized by a chord at time fraction `t` in `[0, 1]`;
    /// `None` for curve segments.
    pub fn line_point(&self, t: f64) -> Option<RatePoint> {
        match self {
            Segment::Line { from, to } => Some(RatePoint::new(vec![
                (1.0 - t) * from.rates[0] + t * to.rates[0],
                (1.0 - t) * from.rates[1] + t * to.rates[1],
            ])),
            _ => None,
        }
    }
}

/// A frontier anchor that shows up as a segment endpoint: the extremes `A`,
/// `B`, `C` and the inflection points `E` (on `F2`) and `E'` (on `F1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedAnchor {
    pub name: String,
    pub point: OperatingPoint,
}

/// The optimal piecewise frontier: curve runs where the region boundary is
/// concave, chords where time sharing wins. Segments are contiguous and
/// ordered by increasing `C1` (from the `A` side to the `C` side).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeShareSchedule {
    pub channel: NormalizedTwoUser,
    pub segments: Vec<Segment>,
    /// Named anchor points appearing among the segment endpoints.
    pub anchors: Vec<NamedAnchor>,
}

impl TimeShareSchedule {
    /// The schedule's frontier as a polyline: curve runs contribute their
    /// raw samples, chords their endpoints. `frontier` must be the object
    /// the schedule was built from.
    pub fn frontier_polyline(&self, frontier: &TwoUserFrontier) -> Result<Vec<(f64, f64)>> {
        if frontier.channel != self.channel {
            return Err(Error::InconsistentInputs(
                "schedule and frontier channels differ".into(),
            ));
        }
        let mut line = Vec::new();
        for seg in &self.segments {
            match seg {
                Segment::Line { from, to } => {
                    line.push((from.rates[0], from.rates[1]));
                    line.push((to.rates[0], to.rates[1]));
                }
                Segment::Curve {
                    pinned_index,
                    c1_start,
                    c1_end,
                    start,
                    end,
                } => {
                    let curve = curve_of(frontier, *pinned_index);
                    line.push((start.rates[0], start.rates[1]));
                    for p in &curve.points {
                        let c1 = p.rates[0];
                        if c1 > *c1_start + RATE_TOLERANCE && c1 < *c1_end - RATE_TOLERANCE {
                            line.push((c1, p.rates[1]));
                        }
                    }
                    line.push((end.rates[0], end.rates[1]));
                }
            }
        }
        line.dedup_by(|a, b| (a.0 - b.0).abs() <= 1e-15 && (a.1 - b.1).abs() <= 1e-15);
        Ok(line)
    }
}

fn curve_of(frontier: &TwoUserFrontier, pinned_index: usize) -> &FrontierSample {
    if pinned_index == 1 {
        &frontier.f1
    } else {
        &frontier.f2
    }
}

// ---------------------------------------------------------------------------
// Schedule construction
// ---------------------------------------------------------------------------

enum Piece {
    Curve {
        curve: usize,
        lo: f64,
        hi: f64,
        start: OperatingPoint,
        end: OperatingPoint,
    },
    Line {
        from: OperatingPoint,
        to: OperatingPoint,
    },
}

/// Assembles the optimal schedule from the sampled hull: concave runs stay
/// curves, convex stretches collapse to their dominating chords. The result
/// matches `frontier.hull` vertex-for-vertex, so it is the numerically best
/// candidate among all chord placements at the sampling resolution; ties
/// between a straight curve run and its chord resolve toward the curve run,
/// which merges with its neighbors into fewer segments.
pub fn build_schedule(
    ch: &NormalizedTwoUser,
    report: &CurvatureReport,
    frontier: &TwoUserFrontier,
) -> Result<TimeShareSchedule> {
    if report.channel != *ch {
        return Err(Error::InconsistentInputs(
            "curvature report built from a different channel".into(),
        ));
    }
    if frontier.channel != *ch {
        return Err(Error::InconsistentInputs(
            "frontier built from a different channel".into(),
        ));
    }

    let qtol = hull::RATE_TICK;
    let b_op = frontier.anchors.b.clone();
    let x_b = b_op.rates[0];

    let mut pieces: Vec<Piece> = Vec::new();
    if frontier.hull.len() <= 1 {
        // Zero-rate region; nothing to schedule.
    } else if ch.a() == 0.0 {
        // The region is the vertical segment {0} x [0, C2(0, Pmax)]; both
        // curves are stacked on it, so operating along them covers it.
        push_degenerate_stack(&mut pieces, frontier, &b_op);
    } else {
        for w in frontier.hull.windows(2) {
            classify_edge(&mut pieces, frontier, &w[0], &w[1], &b_op, x_b, qtol);
        }
    }

    let segments = merge_pieces(pieces);
    let anchors = used_anchors(ch, report, frontier, &segments);
    Ok(TimeShareSchedule {
        channel: *ch,
        segments,
        anchors,
    })
}

fn push_degenerate_stack(pieces: &mut Vec<Piece>, frontier: &TwoUserFrontier, b_op: &OperatingPoint) {
    let a_op = frontier.anchors.a.clone();
    let c_op = frontier.anchors.c.clone();
    let tick = hull::RATE_TICK;
    if (a_op.rates[1] - b_op.rates[1]).abs() > tick {
        pieces.push(Piece::Curve {
            curve: 2,
            lo: 0.0,
            hi: 0.0,
            start: a_op,
            end: b_op.clone(),
        });
    }
    if (b_op.rates[1] - c_op.rates[1]).abs() > tick {
        pieces.push(Piece::Curve {
            curve: 1,
            lo: 0.0,
            hi: 0.0,
            start: b_op.clone(),
            end: c_op,
        });
    }
}

/// Splits one hull edge into curve-attributed spans and labels each span as
/// coinciding with its curve or bridging over it.
fn classify_edge(
    pieces: &mut Vec<Piece>,
    frontier: &TwoUserFrontier,
    u: &HullVertex,
    v: &HullVertex,
    b_op: &OperatingPoint,
    x_b: f64,
    qtol: f64,
) {
    let u_op = OperatingPoint {
        powers: u.powers.clone(),
        rates: u.rates.clone(),
    };
    let v_op = OperatingPoint {
        powers: v.powers.clone(),
        rates: v.rates.clone(),
    };
    let u_pt = (u.rates[0], u.rates[1]);
    let v_pt = (v.rates[0], v.rates[1]);

    // Attribute the edge to curve spans. Vertices sharing a curve keep the
    // edge on it; otherwise the edge crosses the junction B and is split.
    let shared = u.sources.iter().find_map(|su| {
        v.sources
            .iter()
            .find(|sv| sv.curve == su.curve)
            .map(|_| su.curve)
    });
    let spans: Vec<(usize, f64, f64)> = if let Some(k) = shared {
        vec![(k, u_pt.0, v_pt.0)]
    } else {
        let mut s = Vec::new();
        if u_pt.0 < x_b - qtol {
            s.push((2, u_pt.0, v_pt.0.min(x_b)));
        }
        if v_pt.0 > x_b + qtol {
            s.push((1, u_pt.0.max(x_b), v_pt.0));
        }
        if s.is_empty() {
            s.push((2, u_pt.0, v_pt.0));
        }
        s
    };

    let coincides = |curve: usize, lo: f64, hi: f64| -> bool {
        curve_of(frontier, curve)
            .points
            .iter()
            .filter(|p| p.rates[0] >= lo - qtol && p.rates[0] <= hi + qtol)
            .all(|p| {
                hull::point_segment_gap((p.rates[0], p.rates[1]), u_pt, v_pt) <= RATE_TOLERANCE
            })
    };

    let labels: Vec<bool> = spans
        .iter()
        .map(|&(k, lo, hi)| coincides(k, lo, hi))
        .collect();

    if labels.iter().all(|&c| c) {
        for (i, &(k, lo, hi)) in spans.iter().enumerate() {
            let start = if i == 0 { u_op.clone() } else { b_op.clone() };
            let end = if i == spans.len() - 1 {
                v_op.clone()
            } else {
                b_op.clone()
            };
            pieces.push(Piece::Curve {
                curve: k,
                lo,
                hi,
                start,
                end,
            });
        }
    } else if labels.iter().all(|&c| !c) {
        pieces.push(Piece::Line {
            from: u_op,
            to: v_op,
        });
    } else {
        // One half rides its curve, the other bridges; the handoff is at B.
        for (&(k, lo, hi), &on_curve) in spans.iter().zip(&labels) {
            if on_curve {
                let (start, end) = if k == 2 {
                    (u_op.clone(), b_op.clone())
                } else {
                    (b_op.clone(), v_op.clone())
                };
                pieces.push(Piece::Curve {
                    curve: k,
                    lo,
                    hi,
                    start,
                    end,
                });
            } else if k == 2 {
                pieces.push(Piece::Line {
                    from: u_op.clone(),
                    to: b_op.clone(),
                });
            } else {
                pieces.push(Piece::Line {
                    from: b_op.clone(),
                    to: v_op.clone(),
                });
            }
        }
    }
}

fn merge_pieces(pieces: Vec<Piece>) -> Vec<Segment> {
    let mut segments: Vec<Segment> = Vec::new();
    for piece in pieces {
        match piece {
            Piece::Line { from, to } => segments.push(Segment::Line { from, to }),
            Piece::Curve {
                curve,
                lo,
                hi,
                start,
                end,
            } => {
                if let Some(Segment::Curve {
                    pinned_index,
                    c1_end,
                    end: seg_end,
                    ..
                }) = segments.last_mut()
                {
                    if *pinned_index == curve {
                        *c1_end = hi;
                        *seg_end = end;
                        continue;
                    }
                }
                segments.push(Segment::Curve {
                    pinned_index: curve,
                    c1_start: lo,
                    c1_end: hi,
                    start,
                    end,
                });
            }
        }
    }
    segments
}

fn used_anchors(
    ch: &NormalizedTwoUser,
    report: &CurvatureReport,
    frontier: &TwoUserFrontier,
    segments: &[Segment],
) -> Vec<NamedAnchor> {
    let _ = ch;
    let mut candidates: Vec<(&str, OperatingPoint)> = vec![
        ("A", frontier.anchors.a.clone()),
        ("B", frontier.anchors.b.clone()),
        ("C", frontier.anchors.c.clone()),
    ];
    if let Some(e) = &report.f2_inflection {
        candidates.push(("E", e.clone()));
    }
    if let Some(e) = &report.f1_inflection {
        candidates.push(("E'", e.clone()));
    }

    // An anchor counts as used when a segment endpoint lands within one
    // sample cell of it.
    let tol = max_sample_gap(frontier).max(RATE_TOLERANCE);
    let mut endpoints: Vec<(f64, f64)> = Vec::new();
    for seg in segments {
        match seg {
            Segment::Curve { start, end, .. } | Segment::Line { from: start, to: end } => {
                endpoints.push((start.rates[0], start.rates[1]));
                endpoints.push((end.rates[0], end.rates[1]));
            }
        }
    }
    if endpoints.is_empty() {
        endpoints.push((frontier.anchors.a.rates[0], frontier.anchors.a.rates[1]));
    }

    candidates
        .into_iter()
        .filter(|(_, op)| {
            endpoints
                .iter()
                .any(|e| (e.0 - op.rates[0]).abs() <= tol && (e.1 - op.rates[1]).abs() <= tol)
        })
        .map(|(name, point)| NamedAnchor {
            name: name.to_string(),
            point,
        })
        .collect()
}

fn max_sample_gap(frontier: &TwoUserFrontier) -> f64 {
    let mut gap = 0.0f64;
    for curve in [&frontier.f1, &frontier.f2] {
        for w in curve.points.windows(2) {
            let dx = (w[1].rates[0] - w[0].rates[0]).abs();
            let dy = (w[1].rates[1] - w[0].rates[1]).abs();
            gap = gap.max(dx.max(dy));
        }
    }
    gap
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::curvature_report;
    use crate::frontier2::two_user_frontier;
    use approx::assert_abs_diff_eq;

    fn schedule_for(ch: &NormalizedTwoUser, resolution: usize) -> (TimeShareSchedule, TwoUserFrontier) {
        let report = curvature_report(ch);
        let frontier = two_user_frontier(ch, resolution).unwrap();
        let schedule = build_schedule(ch, &report, &frontier).unwrap();
        (schedule, frontier)
    }

    #[test]
    fn ac_condition_high_symmetric_interference() {
        // a=c=1, b=d=2: LHS = 2*3/4 = 1.5, RHS = (4/3)^1; chord A-C wins.
        let ch = NormalizedTwoUser::new(1.0, 2.0, 1.0, 2.0, 1.0).unwrap();
        assert!(ac_timeshare_condition(&ch).unwrap());
    }

    #[test]
    fn ac_condition_unit_channel() {
        // a=b=c=d=1: LHS = 2*2/3 = 4/3 < RHS = 3/2; B stays above the chord.
        let ch = NormalizedTwoUser::new(1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(!ac_timeshare_condition(&ch).unwrap());
    }

    #[test]
    fn ac_condition_no_interference() {
        // b=d=0: LHS = 2*1/2 = 1 < RHS = 2^1; B = (1,1) dominates the chord,
        // so sharing A-C is strictly worse.
        let ch = NormalizedTwoUser::new(1.0, 0.0, 1.0, 0.0, 1.0).unwrap();
        assert!(!ac_timeshare_condition(&ch).unwrap());
    }

    #[test]
    fn ac_condition_needs_gamma() {
        let ch = NormalizedTwoUser::new(0.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            ac_timeshare_condition(&ch),
            Err(Error::GammaUndefined)
        ));
    }

    #[test]
    fn bstar_values() {
        assert_abs_diff_eq!(symmetric_bstar(1.0, 1.0), 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(symmetric_bstar(0.0, 1.0), 1.0, epsilon = 0.0);
        // high SNR: within 0.5% of sqrt(a)/Pmax for a = 100
        let b = symmetric_bstar(100.0, 1.0);
        assert!((b - 10.0).abs() / b < 0.005);
    }

    #[test]
    fn unit_channel_schedule_is_two_chords() {
        let ch = NormalizedTwoUser::new(1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let (schedule, _) = schedule_for(&ch, 257);
        assert_eq!(schedule.segments.len(), 2);
        assert!(matches!(schedule.segments[0], Segment::Line { .. }));
        assert!(matches!(schedule.segments[1], Segment::Line { .. }));
        // A -> B -> C
        let names: Vec<&str> = schedule.anchors.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, vec!["A", "B", "C"]);
    }

    #[test]
    fn high_interference_schedule_is_single_chord() {
        let ch = NormalizedTwoUser::new(1.0, 2.0, 1.0, 2.0, 1.0).unwrap();
        let (schedule, _) = schedule_for(&ch, 257);
        assert_eq!(schedule.segments.len(), 1);
        match &schedule.segments[0] {
            Segment::Line { from, to } => {
                assert_abs_diff_eq!(from.rates[0], 0.0, epsilon = 1e-12);
                assert_abs_diff_eq!(from.rates[1], 1.0, epsilon = 1e-12);
                assert_abs_diff_eq!(to.rates[0], 1.0, epsilon = 1e-12);
                assert_abs_diff_eq!(to.rates[1], 0.0, epsilon = 1e-12);
                // one transmitter at a time, both at full power
                assert_eq!(from.powers.as_slice(), &[0.0, 1.0]);
                assert_eq!(to.powers.as_slice(), &[1.0, 0.0]);
            }
            other => panic!("expected a chord, got {other:?}"),
        }
        let names: Vec<&str> = schedule.anchors.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, vec!["A", "C"]);
    }

    #[test]
    fn chord_parameterization() {
        let ch = NormalizedTwoUser::new(1.0, 2.0, 1.0, 2.0, 1.0).unwrap();
        let (schedule, _) = schedule_for(&ch, 65);
        let mid = schedule.segments[0].line_point(0.5).unwrap();
        assert_abs_diff_eq!(mid[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(mid[1], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn inflected_channel_schedule_structure() {
        // a=20, b=1, c=15, d=5: concave F1 kept whole, one chord from B onto
        // the concave part of F2, then F2 into A. The chord lands at the
        // tangency point, strictly on the A side of the inflection E.
        let ch = NormalizedTwoUser::new(20.0, 1.0, 15.0, 5.0, 1.0).unwrap();
        let (schedule, _frontier) = schedule_for(&ch, 513);
        assert_eq!(schedule.segments.len(), 3);
        match &schedule.segments[0] {
            Segment::Curve { pinned_index, c1_start, .. } => {
                assert_eq!(*pinned_index, 2);
                assert_abs_diff_eq!(*c1_start, 0.0, epsilon = 1e-12);
            }
            other => panic!("expected F2 run, got {other:?}"),
        }
        let (t_c1, b_c1) = match &schedule.segments[1] {
            Segment::Line { from, to } => {
                // lands on B
                assert_abs_diff_eq!(to.rates[0], 11f64.log2(), epsilon = 1e-9);
                assert_abs_diff_eq!(to.rates[1], 3.5f64.log2(), epsilon = 1e-9);
                (from.rates[0], to.rates[0])
            }
            other => panic!("expected chord, got {other:?}"),
        };
        // tangency near c1 = 1.9875, well before E at c1 = 2.4771
        assert!(t_c1 < 2.4, "chord should leave F2 before E, left at {t_c1}");
        assert!((t_c1 - 1.9875).abs() < 0.05);
        assert!(b_c1 > t_c1);
        match &schedule.segments[2] {
            Segment::Curve { pinned_index, c1_end, .. } => {
                assert_eq!(*pinned_index, 1);
                assert_abs_diff_eq!(*c1_end, 21f64.log2(), epsilon = 1e-9);
            }
            other => panic!("expected F1 run, got {other:?}"),
        }
        let names: Vec<&str> = schedule.anchors.iter().map(|a| a.name.as_str()).collect();
        assert!(names.contains(&"A") && names.contains(&"B") && names.contains(&"C"));
    }

    #[test]
    fn chord_can_bypass_b_entirely() {
        // Here the full-power corner B sits strictly below the hull: the
        // schedule is one concave F2 arc and a single chord crossing over
        // B's abscissa onto the C endpoint.
        let ch = NormalizedTwoUser::new(
            50.2764172668248,
            4.790832263615813,
            0.0298725309073939,
            0.4636840170218659,
            3.640158391859076,
        )
        .unwrap();
        let (schedule, frontier) = schedule_for(&ch, 257);
        let b = &frontier.anchors.b.rates;
        let crossing: Vec<&Segment> = schedule
            .segments
            .iter()
            .filter(|s| {
                matches!(s, Segment::Line { from, to }
                    if from.rates[0] < b[0] - 1e-6 && to.rates[0] > b[0] + 1e-6)
            })
            .collect();
        assert_eq!(crossing.len(), 1, "segments: {:?}", schedule.segments);
        if let Segment::Line { from, to } = crossing[0] {
            let t = (b[0] - from.rates[0]) / (to.rates[0] - from.rates[0]);
            let chord_at_b = from.rates[1] + t * (to.rates[1] - from.rates[1]);
            assert!(chord_at_b > b[1] + 1e-9, "chord must pass above B");
        }
        // B is not an anchor of this schedule
        assert!(schedule.anchors.iter().all(|a| a.name != "B"));
    }

    #[test]
    fn double_inflection_keeps_b_as_corner() {
        // Both curves inflected: short concave arcs at the A and C ends,
        // two chords meeting at B, which stays a hull vertex here.
        let ch = NormalizedTwoUser::new(20.0, 2.2, 15.0, 5.0, 1.0).unwrap();
        let (schedule, frontier) = schedule_for(&ch, 513);
        let kinds: Vec<&str> = schedule
            .segments
            .iter()
            .map(|s| match s {
                Segment::Curve { pinned_index: 2, .. } => "C2",
                Segment::Curve { .. } => "C1",
                Segment::Line { .. } => "L",
            })
            .collect();
        assert_eq!(kinds, vec!["C2", "L", "L", "C1"]);
        // the two chords meet at B
        if let (Segment::Line { to, .. }, Segment::Line { from, .. }) =
            (&schedule.segments[1], &schedule.segments[2])
        {
            let b = &frontier.anchors.b.rates;
            assert!((to.rates[0] - b[0]).abs() < 1e-9);
            assert!((from.rates[0] - b[0]).abs() < 1e-9);
        } else {
            panic!("expected two chords in the middle");
        }
    }

    #[test]
    fn no_interference_schedule_is_rectangle_corner() {
        let ch = NormalizedTwoUser::new(1.0, 0.0, 1.0, 0.0, 1.0).unwrap();
        let (schedule, _) = schedule_for(&ch, 65);
        assert_eq!(schedule.segments.len(), 2);
        assert!(matches!(
            schedule.segments[0],
            Segment::Curve { pinned_index: 2, .. }
        ));
        assert!(matches!(
            schedule.segments[1],
            Segment::Curve { pinned_index: 1, .. }
        ));
    }

    #[test]
    fn degenerate_zero_region_schedule() {
        let ch = NormalizedTwoUser::new(0.0, 0.5, 0.0, 1.5, 1.0).unwrap();
        let (schedule, _) = schedule_for(&ch, 17);
        assert!(schedule.segments.is_empty());
    }

    #[test]
    fn degenerate_vertical_region_schedule() {
        let ch = NormalizedTwoUser::new(0.0, 0.5, 2.0, 1.5, 1.0).unwrap();
        let (schedule, _) = schedule_for(&ch, 17);
        assert_eq!(schedule.segments.len(), 2);
        assert!(schedule
            .segments
            .iter()
            .all(|s| matches!(s, Segment::Curve { .. })));
    }

    #[test]
    fn schedule_matches_hull_and_dominates_samples() {
        let channels = [
            NormalizedTwoUser::new(1.0, 1.0, 1.0, 1.0, 1.0).unwrap(),
            NormalizedTwoUser::new(20.0, 1.0, 15.0, 5.0, 1.0).unwrap(),
            NormalizedTwoUser::new(1.0, 2.0, 1.0, 2.0, 1.0).unwrap(),
            NormalizedTwoUser::new(6.0, 0.3, 2.0, 4.0, 1.5).unwrap(),
        ];
        for ch in channels {
            let (schedule, frontier) = schedule_for(&ch, 257);
            let poly = schedule.frontier_polyline(&frontier).unwrap();
            // vertex-for-vertex hull equivalence at segment joints
            for v in &frontier.hull {
                let gap = hull::point_polyline_gap((v.rates[0], v.rates[1]), &poly);
                assert!(gap <= 1e-9, "hull vertex off schedule by {gap}");
            }
            // dominance over every raw sample, within twice the sampling
            // tolerance
            let max_gap = 2.0 * max_sample_gap(&frontier);
            for curve in [&frontier.f1, &frontier.f2] {
                for p in &curve.points {
                    let env = hull::chain_value(&poly, p.rates[0]).unwrap_or(0.0);
                    assert!(
                        env >= p.rates[1] - max_gap,
                        "sample above schedule: {:?} vs {env}",
                        p.rates
                    );
                }
            }
        }
    }

    #[test]
    fn schedule_collapses_exactly_above_bstar() {
        // symmetric channels: at b = b* + 0.1 the schedule is one chord; at
        // b = b* - 0.1 it is not.
        for a in [0.5, 1.0, 3.0, 10.0] {
            let bstar = symmetric_bstar(a, 1.0);
            let above = NormalizedTwoUser::new(a, bstar + 0.1, a, bstar + 0.1, 1.0).unwrap();
            let below = NormalizedTwoUser::new(a, bstar - 0.1, a, bstar - 0.1, 1.0).unwrap();
            let (s_above, _) = schedule_for(&above, 257);
            let (s_below, _) = schedule_for(&below, 257);
            assert_eq!(s_above.segments.len(), 1, "a = {a}");
            assert!(matches!(s_above.segments[0], Segment::Line { .. }));
            assert!(s_below.segments.len() > 1, "a = {a}");
        }
    }

    #[test]
    fn ac_condition_agrees_with_geometry() {
        // In the both-convex regime the closed form must agree with directly
        // comparing the A-C chord against B.
        let cases = [
            (1.0, 2.0, 1.0, 2.0, 1.0),
            (1.0, 1.0, 1.0, 1.0, 1.0),
            (2.0, 3.0, 1.5, 2.5, 1.0),
            (0.8, 1.4, 1.2, 1.9, 2.0),
        ];
        for (a, b, c, d, pm) in cases {
            let ch = NormalizedTwoUser::new(a, b, c, d, pm).unwrap();
            let rep = curvature_report(&ch);
            let convex_regime = rep.q1.is_some_and(|q| q <= 0.0) && rep.q2.is_some_and(|q| q <= 0.0);
            if !convex_regime {
                continue;
            }
            let ya = ch.c2(0.0, pm);
            let xc = ch.c1(pm, 0.0);
            let xb = ch.c1(pm, pm);
            let yb = ch.c2(pm, pm);
            let chord_at_b = ya * (1.0 - xb / xc);
            assert_eq!(
                ac_timeshare_condition(&ch).unwrap(),
                chord_at_b >= yb,
                "disagreement for {:?}",
                (a, b, c, d, pm)
            );
        }
    }

    #[test]
    fn rejects_mismatched_inputs() {
        let ch = NormalizedTwoUser::new(1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let other = NormalizedTwoUser::new(2.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let report = curvature_report(&other);
        let frontier = two_user_frontier(&ch, 17).unwrap();
        assert!(matches!(
            build_schedule(&ch, &report, &frontier),
            Err(Error::InconsistentInputs(_))
        ));
    }

    #[test]
    fn schedule_serializes() {
        let ch = NormalizedTwoUser::new(20.0, 1.0, 15.0, 5.0, 1.0).unwrap();
        let (schedule, _) = schedule_for(&ch, 65);
        let text = serde_json::to_string(&schedule).unwrap();
        let back: TimeShareSchedule = serde_json::from_str(&text).unwrap();
        assert_eq!(back, schedule);
        assert!(text.contains("\"kind\":\"line\""));
    }
}

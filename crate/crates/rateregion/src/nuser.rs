//! The n-user frontier as a union of pinned-power hyper-surfaces.
//!
//! Fixing every power but one turns the n-user rate model into a smaller
//! instance with the pinned interference folded into the noise term, so the
//! two-user frontier structure lifts dimension by dimension: the frontier of
//! the n-user region is the convex hull of the union of the `n`
//! hyper-surfaces `F_i = Φ(:, ..., Pmax, ..., :)`, each of dimension
//! `n - 1`, obtained by holding transmitter `i` at full power and sweeping
//! the rest.
//!
//! This module samples those surfaces on inclusive power grids. Hull
//! construction above three rate dimensions is deliberately out of scope;
//! the exported union plus the Pareto-filtered subset carry the same
//! information for verification and plotting.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{ChannelSpec, OperatingPoint, PowerVector, RatePoint};
use crate::error::{Error, Result};
use crate::export::{csv_field, write_csv_row};
use crate::oracle;

/// Default cap on evaluated power tuples for one frontier or oracle run.
pub const DEFAULT_POINT_BUDGET: u64 = 2_000_000;

/// One sampled hyper-surface `F_i`: transmitter `pinned_index` (1-based) at
/// `p_max`, the other `n - 1` powers on an inclusive grid over
/// `[0, p_max]^(n-1)`, row-major with the highest free index fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperSurfaceSample {
    pub pinned_index: usize,
    pub grid_resolution: usize,
    pub points: Vec<OperatingPoint>,
}

/// All `n` pinned-power surfaces of one channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NUserFrontier {
    pub spec: ChannelSpec,
    pub grid_resolution: usize,
    pub surfaces: Vec<HyperSurfaceSample>,
}

fn grid_value(p_max: f64, k: usize, resolution: usize) -> f64 {
    if k == 0 {
        0.0
    } else if k == resolution - 1 {
        p_max
    } else {
        p_max * k as f64 / (resolution - 1) as f64
    }
}

fn checked_point_count(resolution: usize, dims: u32, copies: u64) -> Result<u64> {
    let per_surface = (resolution as u128).checked_pow(dims).unwrap_or(u128::MAX);
    let required = per_surface.saturating_mul(copies as u128);
    u64::try_from(required).map_err(|_| Error::BudgetExceeded {
        required,
        budget: DEFAULT_POINT_BUDGET,
    })
}

fn guard_budget(required: u64, budget: u64) -> Result<()> {
    if required > budget {
        return Err(Error::BudgetExceeded {
            required: required as u128,
            budget,
        });
    }
    Ok(())
}

/// Samples `F_pinned` with the default point budget.
pub fn sample_surface(
    spec: &ChannelSpec,
    pinned: usize,
    grid_resolution: usize,
) -> Result<HyperSurfaceSample> {
    sample_surface_with_budget(spec, pinned, grid_resolution, DEFAULT_POINT_BUDGET)
}

/// Samples the hyper-surface with transmitter `pinned` (1-based) held at
/// `p_max`, evaluating the rate tuple at every grid point of the free
/// powers. Output order is row-major over the free dimensions in increasing
/// index order, so it is deterministic regardless of evaluation parallelism.
pub fn sample_surface_with_budget(
    spec: &ChannelSpec,
    pinned: usize,
    grid_resolution: usize,
    budget: u64,
) -> Result<HyperSurfaceSample> {
    let n = spec.n();
    if pinned == 0 || pinned > n {
        return Err(Error::InvalidPinnedIndex { pinned, n });
    }
    if grid_resolution < 2 {
        return Err(Error::ResolutionTooSmall(grid_resolution));
    }
    let free: Vec<usize> = (0..n).filter(|&i| i != pinned - 1).collect();
    let count = checked_point_count(grid_resolution, free.len() as u32, 1)?;
    guard_budget(count, budget)?;

    let p_max = spec.p_max();
    let points: Vec<OperatingPoint> = (0..count)
        .into_par_iter()
        .map(|flat| {
            let mut powers = vec![0.0; n];
            powers[pinned - 1] = p_max;
            let mut rem = flat;
            for &dim in free.iter().rev() {
                let k = (rem % grid_resolution as u64) as usize;
                rem /= grid_resolution as u64;
                powers[dim] = grid_value(p_max, k, grid_resolution);
            }
            let mut rates = vec![0.0; n];
            spec.rates_into(&powers, &mut rates);
            OperatingPoint {
                powers: PowerVector::new(powers),
                rates: RatePoint::new(rates),
            }
        })
        .collect();

    Ok(HyperSurfaceSample {
        pinned_index: pinned,
        grid_resolution,
        points,
    })
}

/// Checks that `C_pinned` is nondecreasing as `P_pinned` sweeps `0..p_max`
/// with the other powers frozen at `free_powers` (whose pinned entry is
/// ignored). True for every channel by construction of the rate model;
/// exposed so the claim stays testable.
pub fn surface_monotone_in_pinned_axis(
    spec: &ChannelSpec,
    pinned: usize,
    free_powers: &PowerVector,
) -> Result<bool> {
    let n = spec.n();
    if pinned == 0 || pinned > n {
        return Err(Error::InvalidPinnedIndex { pinned, n });
    }
    if free_powers.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: free_powers.len(),
        });
    }
    const SWEEP: usize = 101;
    let mut powers = free_powers.as_slice().to_vec();
    let mut rates = vec![0.0; n];
    let mut previous = f64::NEG_INFINITY;
    for k in 0..SWEEP {
        powers[pinned - 1] = grid_value(spec.p_max(), k, SWEEP);
        spec.rates_into(&powers, &mut rates);
        if rates[pinned - 1] < previous - 1e-12 {
            return Ok(false);
        }
        previous = rates[pinned - 1];
    }
    Ok(true)
}

/// Samples all `n` surfaces with the default point budget.
pub fn n_user_frontier(spec: &ChannelSpec, grid_resolution: usize) -> Result<NUserFrontier> {
    n_user_frontier_with_budget(spec, grid_resolution, DEFAULT_POINT_BUDGET)
}

/// Samples all `n` pinned-power surfaces. The total
/// `n * grid_resolution^(n-1)` evaluations are checked against `budget`
/// before any work happens.
pub fn n_user_frontier_with_budget(
    spec: &ChannelSpec,
    grid_resolution: usize,
    budget: u64,
) -> Result<NUserFrontier> {
    let n = spec.n();
    if grid_resolution < 2 {
        return Err(Error::ResolutionTooSmall(grid_resolution));
    }
    let total = checked_point_count(grid_resolution, (n - 1) as u32, n as u64)?;
    guard_budget(total, budget)?;

    let surfaces = (1..=n)
        .map(|pinned| sample_surface_with_budget(spec, pinned, grid_resolution, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(NUserFrontier {
        spec: spec.clone(),
        grid_resolution,
        surfaces,
    })
}

impl NUserFrontier {
    /// Every sampled point with its surface's pinned index.
    pub fn all_points(&self) -> impl Iterator<Item = (usize, &OperatingPoint)> {
        self.surfaces
            .iter()
            .flat_map(|s| s.points.iter().map(move |p| (s.pinned_index, p)))
    }

    /// The Pareto-maximal subset of the pooled surface points (ties collapse
    /// to the lexicographically smallest power tuple).
    pub fn pareto_filtered(&self) -> Vec<OperatingPoint> {
        let pooled: Vec<OperatingPoint> =
            self.all_points().map(|(_, p)| p.clone()).collect();
        oracle::pareto_filter(pooled)
    }

    /// Writes `P_1..P_n,C_1..C_n,pinned_index` rows, surfaces in pinned
    /// order.
    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> Result<()> {
        let n = self.spec.n();
        write_surface_csv_header(out, n)?;
        for s in &self.surfaces {
            for p in &s.points {
                write_surface_csv_row(out, p, s.pinned_index)?;
            }
        }
        Ok(())
    }
}

impl HyperSurfaceSample {
    /// Writes `P_1..P_n,C_1..C_n,pinned_index` rows for this surface alone.
    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> Result<()> {
        let n = self.points.first().map_or(0, |p| p.powers.len());
        write_surface_csv_header(out, n)?;
        for p in &self.points {
            write_surface_csv_row(out, p, self.pinned_index)?;
        }
        Ok(())
    }
}

pub(crate) fn write_surface_csv_header<W: std::io::Write>(out: &mut W, n: usize) -> Result<()> {
    let mut cols: Vec<String> = (1..=n).map(|i| format!("P_{i}")).collect();
    cols.extend((1..=n).map(|i| format!("C_{i}")));
    cols.push("pinned_index".into());
    write_csv_row(out, &cols)
}

fn write_surface_csv_row<W: std::io::Write>(
    out: &mut W,
    p: &OperatingPoint,
    pinned: usize,
) -> Result<()> {
    let mut fields: Vec<String> = p.powers.as_slice().iter().map(|&v| csv_field(v)).collect();
    fields.extend(p.rates.as_slice().iter().map(|&v| csv_field(v)));
    fields.push(pinned.to_string());
    write_csv_row(out, &fields)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

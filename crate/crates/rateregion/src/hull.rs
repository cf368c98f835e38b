//! Upper-right convex chain of a planar rate-point set.
//!
//! The frontier of a convex rate region runs from the C2-axis intercept down
//! to the C1-axis intercept; everything achievable lies on or below it. The
//! chain is built with exact integer orientation tests on coordinates
//! quantized to a fixed tick, so nearly-collinear samples never produce
//! spurious vertices.

/// Quantization tick for hull coordinates. Rates live in single to double
/// digits, so an absolute 1e-9 grid keeps 9+ significant digits while making
/// orientation tests exact in i128.
pub(crate) const RATE_TICK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Tick {
    x: i64,
    y: i64,
}

fn quantize(x: f64, y: f64) -> Tick {
    Tick {
        x: (x / RATE_TICK).round() as i64,
        y: (y / RATE_TICK).round() as i64,
    }
}

/// Cross product (b - a) x (c - a) in ticks; positive for a left turn.
fn cross(a: Tick, b: Tick, c: Tick) -> i128 {
    let abx = (b.x - a.x) as i128;
    let aby = (b.y - a.y) as i128;
    let acx = (c.x - a.x) as i128;
    let acy = (c.y - a.y) as i128;
    abx * acy - aby * acx
}

/// Returns indices into `points` forming the upper-right chain, ordered from
/// the highest point on the smallest-C1 column to the lowest point on the
/// largest-C1 column. Interior points of collinear runs are dropped; points
/// identical after quantization collapse to their first occurrence.
pub(crate) fn upper_right_chain(points: &[(f64, f64)]) -> Vec<usize> {
    if points.is_empty() {
        return Vec::new();
    }

    let ticks: Vec<Tick> = points.iter().map(|&(x, y)| quantize(x, y)).collect();

    // Sort by (x asc, y desc); ties keep the earliest input index so the
    // chain is deterministic under duplicate samples.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        ticks[i]
            .x
            .cmp(&ticks[j].x)
            .then(ticks[j].y.cmp(&ticks[i].y))
            .then(i.cmp(&j))
    });
    order.dedup_by(|&mut i, &mut j| ticks[i] == ticks[j]);

    // Monotone scan keeping only clockwise turns. Sorting y descending within
    // a column keeps the top of the first column and the bottom of the last,
    // so vertical end segments survive.
    let mut chain: Vec<usize> = Vec::new();
    for &i in &order {
        while chain.len() >= 2
            && cross(
                ticks[chain[chain.len() - 2]],
                ticks[chain[chain.len() - 1]],
                ticks[i],
            ) >= 0
        {
            chain.pop();
        }
        chain.push(i);
    }
    chain
}

/// Piecewise-linear interpolation of a chain at abscissa `x`. Returns `None`
/// outside the chain's C1 span. Vertical segments report their top value.
pub(crate) fn chain_value(chain: &[(f64, f64)], x: f64) -> Option<f64> {
    let first = chain.first()?;
    let last = chain.last()?;
    if x < first.0 || x > last.0 {
        return None;
    }
    if chain.len() == 1 {
        return Some(first.1);
    }
    for pair in chain.windows(2) {
        let (x0, y0) = pair[0];
        let (x1, y1) = pair[1];
        if x <= x1 {
            if x1 == x0 {
                return Some(y0.max(y1));
            }
            let t = (x - x0) / (x1 - x0);
            return Some(y0 + t * (y1 - y0));
        }
    }
    Some(last.1)
}

/// L-infinity distance from `p` to the segment `a`-`b` (Euclidean closest
/// point, then max coordinate gap).
pub(crate) fn point_segment_gap(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (px, py) = p;
    let (ax, ay) = a;
    let (bx, by) = b;
    let dx = bx - ax;
    let dy = by - ay;
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((px - ax) * dx + (py - ay) * dy) / len2).clamp(0.0, 1.0)
    };
    let cx = ax + t * dx;
    let cy = ay + t * dy;
    (px - cx).abs().max((py - cy).abs())
}

/// Smallest L-infinity distance from `p` to any segment of the polyline.
pub(crate) fn point_polyline_gap(p: (f64, f64), line: &[(f64, f64)]) -> f64 {
    match line.len() {
        0 => f64::INFINITY,
        1 => {
            let (x, y) = line[0];
            (p.0 - x).abs().max((p.1 - y).abs())
        }
        _ => line
            .windows(2)
            .map(|w| point_segment_gap(p, w[0], w[1]))
            .fold(f64::INFINITY, f64::min),
    }
}

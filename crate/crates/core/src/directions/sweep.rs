//! Kinetic walk over the half circle `[0, π)`.
//!
//! The walk tracks the observations at the median ranks of the projections
//! and at the median ranks of the absolute deviations. An event is any angle
//! where a tracked observation ties with another one; between events both
//! `Med` and `MAD` are fixed linear forms in `u`. After each event the tracked
//! observations are re-derived "just after" the event from first-order
//! information (value ties broken by angular derivative), which costs O(n).
//!
//! `Q(−u, x) = −Q(u, x)`, so the breakpoints on `[π, 2π)` are the antipodes
//! of those on `[0, π)`.

use std::f64::consts::PI;

use log::{debug, info};

use super::{DirectionSet, ANGLE_TOL};
use crate::point::Point;
use crate::stats::{median_ranks, DataSet};

/// Sectors of `[0, π)` walked independently. Fixed per `n` so that the output
/// does not depend on the thread count.
fn sector_count(n: usize) -> usize {
    match n {
        0..=63 => 1,
        64..=511 => 16,
        _ => 64,
    }
}

/// Angles where the observations realizing `Med` or `MAD` of the projected
/// sample change, plus their antipodes.
pub fn enumerate_directions(data: &DataSet) -> DirectionSet {
    let center = data.center();
    let pts: Vec<Point> = data.points().iter().map(|p| *p - center).collect();
    let scale = pts.iter().map(|p| p.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let sweep = Sweep { pts: &pts, value_tol: 1e-11 * scale, negligible: 1e-14 * scale };

    let sectors = sector_count(pts.len());
    let bounds: Vec<(f64, f64)> =
        (0..sectors).map(|k| (PI * k as f64 / sectors as f64, PI * (k + 1) as f64 / sectors as f64)).collect();
    let per_sector: Vec<Vec<f64>> = crate::par::map(&bounds, |&(lo, hi)| sweep.run(lo, hi));

    let mut angles: Vec<f64> = bounds.iter().map(|b| b.0).collect();
    angles.extend(per_sector.into_iter().flatten());
    let mirrored: Vec<f64> = angles.iter().map(|a| a + PI).collect();
    angles.extend(mirrored);
    let set = DirectionSet::from_angles(angles);
    info!("enumerated M = {} directions for n = {} ({} sectors)", set.len(), pts.len(), sectors);
    set
}

struct Sweep<'a> {
    pts: &'a [Point],
    value_tol: f64,
    negligible: f64,
}

/// Observations realizing the median and the MAD just after some angle.
struct Tracked {
    median: [usize; 2],
    anchor: Point,
    spread: [usize; 2],
}

impl Sweep<'_> {
    fn run(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut events = Vec::new();
        let mut theta = lo;
        loop {
            let tracked = self.tracked_after(theta);
            let next = self.next_event(&tracked, theta);
            if next >= hi - ANGLE_TOL {
                break;
            }
            events.push(next);
            theta = next;
        }
        events
    }

    fn tracked_after(&self, theta: f64) -> Tracked {
        let u = Point::from_angle(theta);
        let du = u.perp();
        let n = self.pts.len();
        let (k1, k2) = median_ranks(n);

        let values: Vec<f64> = self.pts.iter().map(|p| p.dot(u)).collect();
        let slopes: Vec<f64> = self.pts.iter().map(|p| p.dot(du)).collect();
        let median = self.ranks_after(&values, &slopes, k1, k2);
        let anchor = self.pts[median[0]].midpoint(self.pts[median[1]]);

        let mut dev = Vec::with_capacity(n);
        let mut dev_slope = Vec::with_capacity(n);
        for p in self.pts {
            let w = *p - anchor;
            let (v, s) = (w.dot(u), w.dot(du));
            dev.push(v.abs());
            // at a zero crossing the deviation grows whichever way it moves
            dev_slope.push(if v.abs() <= self.value_tol { s.abs() } else { v.signum() * s });
        }
        let spread = self.ranks_after(&dev, &dev_slope, k1, k2);
        Tracked { median, anchor, spread }
    }

    /// Observations at zero-based ranks `k1 ≤ k2` of `values` just after the
    /// current angle.
    fn ranks_after(&self, values: &[f64], slopes: &[f64], k1: usize, k2: usize) -> [usize; 2] {
        let first = self.rank_after(values, slopes, k1);
        let second = if k2 == k1 { first } else { self.rank_after(values, slopes, k2) };
        [first, second]
    }

    /// Observation at rank `k`, ties within `value_tol` ordered by slope.
    fn rank_after(&self, values: &[f64], slopes: &[f64], k: usize) -> usize {
        let mut work = values.to_vec();
        let (_, kth, _) = work.select_nth_unstable_by(k, f64::total_cmp);
        let pivot = *kth;
        let tol = self.value_tol;
        let below = values.iter().filter(|&&v| v < pivot - tol).count();
        let mut group: Vec<usize> = (0..values.len()).filter(|&j| (values[j] - pivot).abs() <= tol).collect();
        if group.len() > 2 {
            debug!("{} observations tie at one rank; ordered by slope", group.len());
        }
        group.sort_by(|&a, &b| slopes[a].total_cmp(&slopes[b]).then(a.cmp(&b)));
        // at least k + 1 values are ≤ pivot, at most k are < pivot − tol
        group[k - below]
    }

    /// Smallest angle `> theta + ANGLE_TOL` where a tracked observation ties
    /// with any other, or `theta + π` if none.
    fn next_event(&self, tracked: &Tracked, theta: f64) -> f64 {
        let u = Point::from_angle(theta);
        let du = u.perp();
        // v·u(θ + δ) = c cos δ + s sin δ vanishes at the unique δ ∈ (0, π)
        // with cot δ = −s / c; the earliest zero has the largest cotangent.
        let max_cot = 1.0 / ANGLE_TOL;
        let mut best = f64::NEG_INFINITY;
        let mut consider = |v: Point| {
            if v.x.abs() + v.y.abs() <= self.negligible {
                return;
            }
            let c = v.dot(u);
            if c == 0.0 {
                return;
            }
            let cot = -v.dot(du) / c;
            if cot < max_cot && cot > best {
                best = cot;
            }
        };
        let mut medians = tracked.median.to_vec();
        medians.dedup();
        for e in medians {
            let xe = self.pts[e];
            for (j, p) in self.pts.iter().enumerate() {
                if j != e {
                    consider(xe - *p);
                }
            }
        }
        let twice_anchor = tracked.anchor * 2.0;
        let mut spreads = tracked.spread.to_vec();
        spreads.dedup();
        for e in spreads {
            let xe = self.pts[e];
            for (j, p) in self.pts.iter().enumerate() {
                if j != e {
                    consider(xe - *p);
                    consider(xe + *p - twice_anchor);
                }
            }
        }
        if best == f64::NEG_INFINITY {
            theta + PI
        } else {
            theta + 1.0f64.atan2(best)
        }
    }
}

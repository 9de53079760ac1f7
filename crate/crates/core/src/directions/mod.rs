//! Finite, x-free direction sets for exact outlyingness.
//!
//! Along the circle of directions the signed ratio `Q(u, x)` is a ratio of two
//! linear functions of `u` on every arc where the projection median and the MAD
//! are realized by fixed observations. A ratio of linear forms with positive
//! denominator is monotone in the angle, so its supremum over such an arc is
//! attained at an endpoint. Any set of angles containing every arc endpoint
//! therefore reproduces the exact outlyingness as a finite maximum.
//!
//! Two constructions are provided:
//!
//! * [`fragment_arcs`] / [`enumerate_fragment_directions`] split the circle at
//!   every ordering change of the projections and, inside each resulting arc,
//!   at every change of the deviation ordering. Each piece carries a
//!   [`Fragment`] certificate. Cost is quartic in `n`.
//! * [`enumerate_directions`] walks the circle kinetically and only stops
//!   where the observations realizing the median or the MAD change. This is
//!   the production path and scales to thousands of observations.

mod family;
mod fragment;
mod sweep;

use std::f64::consts::{PI, TAU};

use log::debug;
use serde::Serialize;

use crate::error::{DepthError, Result};
use crate::point::{normalize_angle, Point};
use crate::stats::{median_ranks, DataSet, Direction};

pub use family::{halfspace_coefficients, HalfspaceFamily, HalfspaceRow};
pub use fragment::{fragment_certificate, fragment_supremum, Fragment};
pub use sweep::enumerate_directions;

/// Angles closer than this are treated as one.
pub const ANGLE_TOL: f64 = 1e-12;

/// Directions sorted by strictly increasing angle in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectionSet {
    directions: Vec<Direction>,
}

impl DirectionSet {
    /// Normalizes, sorts and merges angles within [`ANGLE_TOL`], keeping the
    /// smaller of two merged angles.
    pub fn from_angles(angles: impl IntoIterator<Item = f64>) -> Self {
        let mut a: Vec<f64> = angles.into_iter().map(normalize_angle).collect();
        a.sort_by(f64::total_cmp);
        let mut kept: Vec<f64> = Vec::with_capacity(a.len());
        for t in a {
            match kept.last() {
                Some(&last) if t - last <= ANGLE_TOL => {}
                _ => kept.push(t),
            }
        }
        if kept.len() > 1 && kept[0] + TAU - kept[kept.len() - 1] <= ANGLE_TOL {
            kept.pop();
        }
        DirectionSet { directions: kept.into_iter().map(Direction::from_angle).collect() }
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        self.directions.iter().map(|d| d.angle)
    }

    /// Arcs between consecutive directions; the last one wraps past `2π`.
    pub fn arcs(&self) -> Vec<Arc> {
        let m = self.directions.len();
        (0..m)
            .map(|i| {
                let start = self.directions[i].angle;
                let end = if i + 1 < m { self.directions[i + 1].angle } else { self.directions[0].angle + TAU };
                Arc::new(start, end)
            })
            .collect()
    }
}

/// Closed angular interval `[start, end]` with `start < end`; `end` may exceed `2π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Arc {
    pub start: f64,
    pub end: f64,
}

impl Arc {
    pub fn new(start: f64, end: f64) -> Self {
        debug_assert!(start < end, "empty arc [{start}, {end}]");
        Arc { start, end }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.start + self.end)
    }

    pub fn width(&self) -> f64 {
        self.end - self.start
    }

    /// The representative of `theta` in `[start, start + 2π)`.
    pub fn unwrap(&self, theta: f64) -> f64 {
        self.start + normalize_angle(theta - self.start)
    }

    /// Whether `theta` lies strictly inside, at least [`ANGLE_TOL`] from both ends.
    pub fn contains_interior(&self, theta: f64) -> bool {
        let t = self.unwrap(theta);
        t > self.start + ANGLE_TOL && t < self.end - ANGLE_TOL
    }

    /// `count` equally spaced angles strictly inside the arc.
    pub fn interior_samples(&self, count: usize) -> impl Iterator<Item = f64> + '_ {
        let step = self.width() / (count + 1) as f64;
        (1..=count).map(move |k| self.start + step * k as f64)
    }
}

/// Which observations realize the projected median on an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MedianInfo {
    /// Odd `n`: the observation at the middle position.
    Odd(usize),
    /// Even `n`: the observations at positions `n/2` and `n/2 + 1`, lower first.
    Even(usize, usize),
}

impl MedianInfo {
    pub fn from_ordering(ordering: &[usize]) -> Self {
        let (lo, hi) = median_ranks(ordering.len());
        if lo == hi {
            MedianInfo::Odd(ordering[lo])
        } else {
            MedianInfo::Even(ordering[lo], ordering[hi])
        }
    }

    /// `X_m` for odd `n`, the midpoint of the median pair for even `n`.
    pub fn anchor(&self, points: &[Point]) -> Point {
        match *self {
            MedianInfo::Odd(m) => points[m],
            MedianInfo::Even(m, m2) => points[m].midpoint(points[m2]),
        }
    }
}

/// Both angles perpendicular to every pairwise difference, sorted and merged.
pub fn ordering_change_angles(data: &DataSet) -> Vec<f64> {
    let pts = data.points();
    let mut angles = Vec::with_capacity(pts.len() * (pts.len() - 1));
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let normal = (pts[j] - pts[i]).angle() + 0.5 * PI;
            angles.push(normal);
            angles.push(normal + PI);
        }
    }
    DirectionSet::from_angles(angles).angles().collect()
}

/// Observation indices sorted by projection onto `(cos θ, sin θ)`; exact ties
/// fall back to index order.
pub fn ordering_at(data: &DataSet, theta: f64) -> Vec<usize> {
    let proj = data.project(Point::from_angle(theta));
    let mut order: Vec<usize> = (0..proj.len()).collect();
    order.sort_by(|&a, &b| proj[a].total_cmp(&proj[b]).then(a.cmp(&b)));
    if order.windows(2).any(|w| proj[w[0]] == proj[w[1]]) {
        debug!("tie in projection ordering at angle {theta}, broken by index");
    }
    order
}

/// Observation indices sorted by absolute deviation from `anchor` along `θ`.
pub(crate) fn deviation_ordering_at(points: &[Point], anchor: Point, theta: f64) -> Vec<usize> {
    let u = Point::from_angle(theta);
    let dev: Vec<f64> = points.iter().map(|p| (*p - anchor).dot(u).abs()).collect();
    let mut order: Vec<usize> = (0..dev.len()).collect();
    order.sort_by(|&a, &b| dev[a].total_cmp(&dev[b]).then(a.cmp(&b)));
    if order.windows(2).any(|w| dev[w[0]] == dev[w[1]]) {
        debug!("tie in deviation ordering at angle {theta}, broken by index");
    }
    order
}

/// Angles strictly inside `arc` where two deviations `|uᵀ(X_a − A)|` and
/// `|uᵀ(X_b − A)|` coincide, `A` being the median anchor of the arc.
///
/// With the projection ordering fixed on the arc, same-side pairs can only
/// tie where their projections cross, which is never interior. Opposite-side
/// pairs tie where `uᵀ(X_a + X_b − 2A) = 0`.
pub fn mad_tie_angles_in_arc(data: &DataSet, arc: &Arc, median: MedianInfo) -> Result<Vec<f64>> {
    let ordering = ordering_at(data, arc.midpoint());
    if MedianInfo::from_ordering(&ordering) != median {
        return Err(DepthError::StaleFragment);
    }
    let pts = data.points();
    let anchor = median.anchor(pts);
    let negligible = 1e-14 * data.diameter().max(f64::MIN_POSITIVE);
    let mut out = Vec::new();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            let normal = pts[a] + pts[b] - anchor * 2.0;
            if normal.norm() <= negligible {
                continue;
            }
            let base = normal.angle() + 0.5 * PI;
            for candidate in [base, base + PI] {
                if arc.contains_interior(candidate) {
                    out.push(arc.unwrap(candidate));
                }
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|b, a| *b - *a <= ANGLE_TOL);
    Ok(out)
}

/// The complete fragment decomposition: arcs on which both the projection
/// ordering and the deviation ordering are constant.
pub fn fragment_arcs(data: &DataSet) -> Vec<Arc> {
    let set = DirectionSet::from_angles(ordering_change_angles(data));
    let mut arcs = Vec::new();
    for arc in set.arcs() {
        let median = MedianInfo::from_ordering(&ordering_at(data, arc.midpoint()));
        let ties = mad_tie_angles_in_arc(data, &arc, median).expect("median re-derived at the same midpoint");
        let mut start = arc.start;
        for t in ties {
            arcs.push(Arc::new(start, t));
            start = t;
        }
        arcs.push(Arc::new(start, arc.end));
    }
    let n = data.len();
    debug!(
        "fragment decomposition: {} fragments, bound n(n-1)(1 + n(n-1)/2) = {}",
        arcs.len(),
        n * (n - 1) * (1 + n * (n - 1) / 2)
    );
    arcs
}

/// Endpoints of every fragment arc, as a direction set.
pub fn enumerate_fragment_directions(data: &DataSet) -> DirectionSet {
    DirectionSet::from_angles(fragment_arcs(data).into_iter().map(|a| a.start))
}

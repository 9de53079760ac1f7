use std::f64::consts::PI;

use serde::Serialize;

use super::{deviation_ordering_at, ordering_at, Arc, MedianInfo};
use crate::error::{DepthError, Result};
use crate::point::Point;
use crate::stats::{median_ranks, DataSet, Direction};

/// Certificate that `Q(u, x)` is a linear fractional function of `u` on an arc.
///
/// Inside the arc, `constraints · u ≥ 0` row-wise, and
/// `Q(u, x) = (x − anchor)ᵀu / denominatorᵀu`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fragment {
    pub arc: Arc,
    /// Observations in increasing order of projection.
    pub ordering: Vec<usize>,
    /// Observations in increasing order of absolute deviation from the median.
    pub deviation_ordering: Vec<usize>,
    pub median: MedianInfo,
    /// `X_m` for odd `n`, midpoint of the median pair for even `n`.
    pub anchor: Point,
    /// `−1` for observations strictly below the median position, `+1` otherwise; indexed by observation.
    pub signs: Vec<i8>,
    /// `n − 1` projection-order rows followed by `n − 1` deviation-order rows.
    pub constraints: Vec<Point>,
    /// `denominatorᵀu = MAD(uᵀX)` throughout the arc.
    pub denominator: Point,
}

impl Fragment {
    /// Numerator vector `x − anchor`.
    pub fn numerator(&self, x: Point) -> Point {
        x - self.anchor
    }

    /// `(x − anchor)ᵀu / denominatorᵀu` at angle `theta`.
    pub fn ratio_at(&self, x: Point, theta: f64) -> f64 {
        let u = Point::from_angle(theta);
        self.numerator(x).dot(u) / self.denominator.dot(u)
    }

    /// The projection-order block of the constraints.
    pub fn ordering_rows(&self) -> &[Point] {
        &self.constraints[..self.ordering.len() - 1]
    }

    /// The deviation-order block of the constraints.
    pub fn deviation_rows(&self) -> &[Point] {
        &self.constraints[self.ordering.len() - 1..]
    }
}

/// Builds the certificate for an arc free of critical angles.
pub fn fragment_certificate(data: &DataSet, arc: Arc) -> Result<Fragment> {
    let pure_err = DepthError::ArcNotFragmentPure { start: arc.start, end: arc.end };
    if !(arc.width() > 0.0 && arc.width() < PI) {
        return Err(pure_err);
    }
    let pts = data.points();
    let n = pts.len();
    let mid = arc.midpoint();
    let ordering = ordering_at(data, mid);
    let median = MedianInfo::from_ordering(&ordering);
    let anchor = median.anchor(pts);
    let deviation_ordering = deviation_ordering_at(pts, anchor, mid);

    let below = match median {
        MedianInfo::Odd(_) => (n - 1) / 2,
        MedianInfo::Even(..) => n / 2,
    };
    let mut signs = vec![1i8; n];
    for &i in &ordering[..below] {
        signs[i] = -1;
    }
    let signed = |j: usize| (pts[j] - anchor) * f64::from(signs[j]);

    let mut constraints = Vec::with_capacity(2 * (n - 1));
    constraints.extend(ordering.windows(2).map(|w| pts[w[1]] - pts[w[0]]));
    constraints.extend(deviation_ordering.windows(2).map(|w| signed(w[1]) - signed(w[0])));

    let (k1, k2) = median_ranks(n);
    let denominator = (signed(deviation_ordering[k1]) + signed(deviation_ordering[k2])) * 0.5;

    for theta in [arc.start, arc.end] {
        let u = Point::from_angle(theta);
        if constraints.iter().any(|r| r.dot(u) < -1e-9 * r.norm().max(1.0)) {
            return Err(pure_err);
        }
    }

    Ok(Fragment { arc, ordering, deviation_ordering, median, anchor, signs, constraints, denominator })
}

/// Supremum of `Q(·, x)` over the closed arc, attained at one of its two
/// bounding directions, together with that direction.
pub fn fragment_supremum(fragment: &Fragment, x: Point) -> Result<(f64, Direction)> {
    let c = fragment.numerator(x);
    let mut best: Option<(f64, f64)> = None;
    for theta in [fragment.arc.start, fragment.arc.end] {
        let u = Point::from_angle(theta);
        let den = fragment.denominator.dot(u);
        if den <= 0.0 {
            return Err(DepthError::DegenerateFragment);
        }
        let value = c.dot(u) / den;
        if best.is_none_or(|(v, _)| value > v) {
            best = Some((value, theta));
        }
    }
    let (value, theta) = best.expect("two endpoints");
    Ok((value, Direction::from_angle(theta)))
}

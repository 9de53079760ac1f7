//! Order-statistic primitives and the validated sample type.
//!
//! `Med` follows the floor-index convention: the average of the order
//! statistics at ranks ⌊(n+1)/2⌋ and ⌊(n+2)/2⌋ (one-based), which is the usual
//! middle value for odd `n` and the mean of the two middle values for even `n`.
//! `MAD` is `Med` of the absolute deviations from `Med`, without any
//! consistency constant.

use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result, Violation};
use crate::point::{normalize_angle, Point};

/// Relative tolerance on cross products for the collinearity test.
pub const COLLINEAR_REL_TOL: f64 = 1e-12;

/// Zero-based ranks `(⌊(n+1)/2⌋ - 1, ⌊(n+2)/2⌋ - 1)` of the median order statistics.
#[inline]
pub fn median_ranks(n: usize) -> (usize, usize) {
    (n.div_ceil(2) - 1, (n + 2) / 2 - 1)
}

/// Median of a sample; the input is not modified.
pub fn median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(DepthError::EmptySample);
    }
    let mut work = values.to_vec();
    Ok(median_in_place(&mut work))
}

/// Median absolute deviation about the median.
pub fn mad(values: &[f64]) -> Result<f64> {
    median_mad(values).map(|(_, s)| s)
}

/// `(Med, MAD)` in one pass over a single scratch copy.
pub fn median_mad(values: &[f64]) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(DepthError::EmptySample);
    }
    let mut work = values.to_vec();
    let med = median_in_place(&mut work);
    for v in work.iter_mut() {
        *v = (*v - med).abs();
    }
    let spread = median_in_place(&mut work);
    Ok((med, spread))
}

/// Reorders `work` arbitrarily. `work` must be non-empty.
pub(crate) fn median_in_place(work: &mut [f64]) -> f64 {
    let (lo, hi) = median_ranks(work.len());
    let (_, lo_val, upper) = work.select_nth_unstable_by(lo, f64::total_cmp);
    let lo_val = *lo_val;
    if hi == lo {
        lo_val
    } else {
        let hi_val = upper.iter().copied().min_by(f64::total_cmp).expect("even n has an upper half");
        0.5 * (lo_val + hi_val)
    }
}

/// A unit direction in the plane together with its polar angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    pub angle: f64,
    pub vector: Point,
}

impl Direction {
    pub fn from_angle(theta: f64) -> Self {
        let angle = normalize_angle(theta);
        Direction { angle, vector: Point::from_angle(angle) }
    }

    pub fn opposite(&self) -> Self {
        Direction::from_angle(self.angle + std::f64::consts::PI)
    }
}

/// A bivariate sample in which every direction has a strictly positive MAD.
///
/// Constructed either with the strict general-position check (no coincident
/// points, no three collinear) or, for contaminated samples, with the weaker
/// condition that no line carries more than ⌊n/2⌋ observations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DataSet {
    points: Vec<Point>,
    strict: bool,
}

impl DataSet {
    /// Validates general position. Same as [`check_general_position`].
    pub fn new(points: Vec<Point>) -> Result<Self> {
        check_general_position(points)
    }

    /// Accepts collinear subsets as long as the MAD of every projection stays
    /// positive: at most ⌊n/2⌋ points on any line and no coincident points.
    pub fn with_positive_mad(points: Vec<Point>) -> Result<Self> {
        check_len(&points)?;
        if let Some(v) = find_duplicate(&points) {
            return Err(DepthError::GeneralPosition(v));
        }
        let limit = points.len() / 2;
        if let Some(v) = find_crowded_line(&points, limit) {
            return Err(DepthError::GeneralPosition(v));
        }
        Ok(DataSet { points, strict: false })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Whether the strict general-position check was applied.
    pub fn is_general_position(&self) -> bool {
        self.strict
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// Projections `uᵀX_i` in observation order.
    pub fn project(&self, u: Point) -> Vec<f64> {
        self.points.iter().map(|p| p.dot(u)).collect()
    }

    /// `(Med, MAD)` of the projected sample.
    pub fn projected_median_mad(&self, u: Point) -> (f64, f64) {
        let mut work = self.project(u);
        let med = median_in_place(&mut work);
        for v in work.iter_mut() {
            *v = (*v - med).abs();
        }
        (med, median_in_place(&mut work))
    }

    /// Length of the bounding-box diagonal.
    pub fn diameter(&self) -> f64 {
        bbox_diagonal(&self.points)
    }

    /// Midpoint of the bounding box.
    pub fn center(&self) -> Point {
        let (lo, hi) = bbox(&self.points);
        lo.midpoint(hi)
    }

    /// Applies `p ↦ M p + t` to every observation and re-validates.
    pub fn map_affine(&self, m: [[f64; 2]; 2], t: Point) -> Result<Self> {
        let pts = self.points.iter().map(|p| apply_affine(m, t, *p)).collect();
        if self.strict {
            DataSet::new(pts)
        } else {
            DataSet::with_positive_mad(pts)
        }
    }
}

pub fn apply_affine(m: [[f64; 2]; 2], t: Point, p: Point) -> Point {
    Point::new(m[0][0] * p.x + m[0][1] * p.y + t.x, m[1][0] * p.x + m[1][1] * p.y + t.y)
}

/// Signed outlyingness ratio `(uᵀx − Med(uᵀX)) / MAD(uᵀX)`.
pub fn q_value(u: &Direction, x: Point, data: &DataSet) -> Result<f64> {
    q_value_along(u.vector, x, data)
}

/// [`q_value`] for an arbitrary non-zero vector; invariant under positive scaling.
pub fn q_value_along(v: Point, x: Point, data: &DataSet) -> Result<f64> {
    let (med, spread) = data.projected_median_mad(v);
    let num = v.dot(x) - med;
    if spread == 0.0 {
        return if num == 0.0 { Ok(0.0) } else { Err(DepthError::DegenerateProjection) };
    }
    Ok(num / spread)
}

/// Validates a raw point list: n ≥ 4, no coincident points, and no triple
/// with `|cross| ≤ 1e-12 · diag²` where `diag` is the bounding-box diagonal.
pub fn check_general_position(points: Vec<Point>) -> Result<DataSet> {
    check_len(&points)?;
    if let Some(v) = find_duplicate(&points) {
        return Err(DepthError::GeneralPosition(v));
    }
    if let Some(v) = find_collinear_triple(&points) {
        return Err(DepthError::GeneralPosition(v));
    }
    Ok(DataSet { points, strict: true })
}

fn check_len(points: &[Point]) -> Result<()> {
    if points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(DepthError::InvalidInput("non-finite coordinate".into()));
    }
    if points.len() < 4 {
        return Err(DepthError::SampleTooSmall(points.len()));
    }
    Ok(())
}

fn bbox(points: &[Point]) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

pub(crate) fn bbox_diagonal(points: &[Point]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let (lo, hi) = bbox(points);
    (hi - lo).norm()
}

fn find_duplicate(points: &[Point]) -> Option<Violation> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[a].x.total_cmp(&points[b].x).then(points[a].y.total_cmp(&points[b].y)).then(a.cmp(&b))
    });
    order
        .windows(2)
        .find(|w| points[w[0]] == points[w[1]])
        .map(|w| Violation::Duplicate { first: w[0].min(w[1]), second: w[0].max(w[1]) })
}

const BRUTE_FORCE_LIMIT: usize = 64;

fn collinear_tol(points: &[Point]) -> f64 {
    let d = bbox_diagonal(points);
    COLLINEAR_REL_TOL * d * d
}

fn find_collinear_triple(points: &[Point]) -> Option<Violation> {
    let tol = collinear_tol(points);
    if points.len() <= BRUTE_FORCE_LIMIT {
        return brute_force_collinear(points, tol);
    }
    let mut best: Option<[usize; 3]> = None;
    for i in 0..points.len() {
        for_each_near_parallel(points, i, tol, |j, k| {
            let mut t = [i, j, k];
            t.sort_unstable();
            if best.is_none_or(|b| t < b) {
                best = Some(t);
            }
            false
        });
        if best.is_some() {
            break;
        }
    }
    best.map(|indices| Violation::Collinear { indices })
}

fn brute_force_collinear(points: &[Point], tol: f64) -> Option<Violation> {
    let n = points.len();
    for a in 0..n {
        for b in a + 1..n {
            let ab = points[b] - points[a];
            for c in b + 1..n {
                if ab.cross(points[c] - points[a]).abs() <= tol {
                    return Some(Violation::Collinear { indices: [a, b, c] });
                }
            }
        }
    }
    None
}

/// Calls `f(j, k)` for pairs of other points whose offsets from `points[i]`
/// have `|cross| ≤ tol`, i.e. `{i, j, k}` collinear within tolerance.
/// Stops early when `f` returns `true`.
fn for_each_near_parallel(points: &[Point], i: usize, tol: f64, mut f: impl FnMut(usize, usize) -> bool) {
    let pi = std::f64::consts::PI;
    let origin = points[i];
    let mut rays: Vec<(f64, usize, f64)> = points
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(j, p)| {
            let v = *p - origin;
            (v.y.atan2(v.x).rem_euclid(pi), j, v.norm())
        })
        .collect();
    rays.sort_by(|a, b| a.0.total_cmp(&b.0));
    let min_len = rays.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
    let m = rays.len();
    for p in 0..m {
        let (phi_p, jp, len_p) = rays[p];
        let ratio = tol / (len_p * min_len);
        let window = if ratio >= 0.5 { pi } else { ratio.asin() * (1.0 + 1e-6) + 1e-15 };
        let vp = points[jp] - origin;
        for step in 1..m {
            let q = (p + step) % m;
            let wrapped = if q < p { pi } else { 0.0 };
            if rays[q].0 + wrapped - phi_p > window {
                break;
            }
            let jq = rays[q].1;
            if vp.cross(points[jq] - origin).abs() <= tol && f(jp, jq) {
                return;
            }
        }
    }
}

fn find_crowded_line(points: &[Point], limit: usize) -> Option<Violation> {
    let tol = collinear_tol(points);
    let mut worst: Option<Vec<usize>> = None;
    for i in 0..points.len() {
        let mut lines: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<usize> = None;
        for_each_near_parallel(points, i, tol, |j, k| {
            if current != Some(j) {
                current = Some(j);
                lines.push(vec![i, j]);
            }
            lines.last_mut().expect("pushed above").push(k);
            false
        });
        for mut line in lines {
            line.sort_unstable();
            line.dedup();
            if line.len() > limit && worst.as_ref().is_none_or(|w| line.len() > w.len()) {
                worst = Some(line);
            }
        }
    }
    worst.map(|indices| Violation::CrowdedLine { count: indices.len(), limit, indices })
}

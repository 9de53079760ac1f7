//! Pointwise outlyingness and projection depth.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::directions::HalfspaceFamily;
use crate::error::{DepthError, Result};
use crate::point::Point;
use crate::stats::{DataSet, Direction};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DepthResult {
    pub outlyingness: f64,
    /// `1 / (1 + outlyingness)`.
    pub depth: f64,
    /// Lowest index of a maximizing row.
    pub attaining_index: usize,
}

/// Exact outlyingness `max_i (a_iᵀx − b_i)` and the matching depth.
pub fn outlyingness(x: Point, family: &HalfspaceFamily) -> Result<DepthResult> {
    let (value, index) = family.max_at(x).ok_or(DepthError::EmptyFamily)?;
    Ok(DepthResult { outlyingness: value, depth: 1.0 / (1.0 + value), attaining_index: index })
}

/// Brute-force reference: `Med`/`MAD` tabulated on an equally spaced angular
/// grid, then `max Q(u, x)` over the grid for any number of query points.
#[derive(Debug, Clone)]
pub struct GridOracle {
    rows: Vec<(Point, f64, f64)>,
}

impl GridOracle {
    /// Grid angles `2πk / grid_size`, `k = 0..grid_size`.
    pub fn new(data: &DataSet, grid_size: usize) -> Self {
        assert!(grid_size >= 4, "grid_size must be at least 4");
        let angles: Vec<f64> = (0..grid_size).map(|k| TAU * k as f64 / grid_size as f64).collect();
        Self::over_angles(data, &angles)
    }

    /// Oracle restricted to `[lo, hi]` with `grid_size + 1` points including both ends.
    pub fn over_interval(data: &DataSet, lo: f64, hi: f64, grid_size: usize) -> Self {
        let angles: Vec<f64> = (0..=grid_size).map(|k| lo + (hi - lo) * k as f64 / grid_size as f64).collect();
        Self::over_angles(data, &angles)
    }

    fn over_angles(data: &DataSet, angles: &[f64]) -> Self {
        let rows = crate::par::map(angles, |&t| {
            let u = Point::from_angle(t);
            let (med, spread) = data.projected_median_mad(u);
            (u, med, spread)
        });
        GridOracle { rows }
    }

    /// `(max Q, maximizing angle)` over the grid.
    pub fn max_q(&self, x: Point) -> (f64, f64) {
        let mut best = (f64::NEG_INFINITY, 0.0);
        for &(u, med, spread) in &self.rows {
            let num = u.dot(x) - med;
            let q = if spread == 0.0 && num == 0.0 { 0.0 } else { num / spread };
            if q > best.0 {
                best = (q, u.angle());
            }
        }
        best
    }

    /// Zooms in on the maximizer near `theta`: each level lays `points + 1`
    /// angles over the current window and shrinks the window around the best
    /// one, until the window falls below 1e-15 rad.
    pub fn zoom(data: &DataSet, x: Point, theta: f64, half_width: f64, points: usize) -> (f64, f64) {
        let mut best = (f64::NEG_INFINITY, theta);
        let mut center = theta;
        let mut half = half_width;
        while half > 1e-15 {
            let level = Self::over_interval(data, center - half, center + half, points).max_q(x);
            if level.0 > best.0 {
                best = level;
            }
            center = level.1;
            half *= 4.0 / points as f64;
        }
        best
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// `max Q(u, x)` over `grid_size` equally spaced directions.
pub fn outlyingness_grid_oracle(x: Point, data: &DataSet, grid_size: usize) -> f64 {
    GridOracle::new(data, grid_size).max_q(x).0
}

/// Grid oracle followed by repeated local grids of `refine` points zooming
/// in on its maximizer.
pub fn refined_grid_oracle(x: Point, data: &DataSet, grid_size: usize, refine: usize) -> (f64, Direction) {
    let (coarse, theta) = GridOracle::new(data, grid_size).max_q(x);
    let step = TAU / grid_size as f64;
    let (fine, fine_theta) = GridOracle::zoom(data, x, theta, step, refine.max(8));
    if fine >= coarse {
        (fine, Direction::from_angle(fine_theta))
    } else {
        (coarse, Direction::from_angle(theta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directions::{enumerate_directions, halfspace_coefficients};

    fn diamond() -> DataSet {
        DataSet::new(vec![Point::new(1.0, 0.0), Point::new(-1.0, 0.0), Point::new(0.0, 1.0), Point::new(0.0, -1.0)])
            .unwrap()
    }

    fn family(data: &DataSet) -> HalfspaceFamily {
        halfspace_coefficients(data, &enumerate_directions(data)).unwrap()
    }

    #[test]
    fn diamond_depths() {
        let fam = family(&diamond());
        let r = outlyingness(Point::ORIGIN, &fam).unwrap();
        assert_eq!((r.outlyingness, r.depth), (0.0, 1.0));
        let r = outlyingness(Point::new(1.0, 0.0), &fam).unwrap();
        assert!((r.outlyingness - 2.0).abs() < 1e-12);
        assert!((r.depth - 1.0 / 3.0).abs() < 1e-12);
        let r = outlyingness(Point::new(1.0, 1.0), &fam).unwrap();
        assert!((r.outlyingness - 2.0).abs() < 1e-12);
    }

    #[test]
    fn empty_family_errors() {
        assert_eq!(outlyingness(Point::ORIGIN, &HalfspaceFamily::default()), Err(DepthError::EmptyFamily));
    }

    #[test]
    fn diamond_grid_oracle() {
        let data = diamond();
        assert_eq!(outlyingness_grid_oracle(Point::ORIGIN, &data, 64), 0.0);
        let g = outlyingness_grid_oracle(Point::new(1.0, 0.0), &data, 360_000);
        assert!(g <= 2.0 + 1e-12 && 2.0 - g <= 1e-9);
    }
}

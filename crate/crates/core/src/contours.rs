//! Maximal depth, projection median and depth regions.

use log::{debug, warn};
use serde::Serialize;

use crate::depth::{outlyingness, DepthResult};
use crate::directions::{enumerate_directions, halfspace_coefficients, DirectionSet, HalfspaceFamily};
use crate::error::{DepthError, Result};
use crate::point::Point;
use crate::polytope::{
    bounding_square, clip_halfplanes, eliminate_redundant, polygon_metrics, solve_minimax_lp, ChunkPlan, ConvexPolygon,
    MinimaxSolution, DEFAULT_CHUNK_WIDTH,
};
use crate::stats::DataSet;

/// Depth levels used for figure-style contour plots.
pub const FIGURE_ALPHAS: [f64; 10] = [0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// Slack added to the optimal level when extracting the median set.
pub const MEDIAN_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourRequest {
    pub alpha: f64,
    /// Outlyingness level `1/α − 1`.
    pub beta: f64,
}

impl ContourRequest {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(DepthError::InvalidAlpha(alpha));
        }
        Ok(ContourRequest { alpha, beta: 1.0 / alpha - 1.0 })
    }
}

/// `α* = 1 / (1 + t*)`.
pub fn max_depth(family: &HalfspaceFamily) -> Result<f64> {
    Ok(1.0 / (1.0 + solve_minimax_lp(family)?.value))
}

/// `{x : O(x) ≤ β}` as a convex polygon, empty when `α > α*`.
pub fn depth_region(family: &HalfspaceFamily, request: &ContourRequest) -> Result<ConvexPolygon> {
    region_at(family, request.beta, DEFAULT_CHUNK_WIDTH)
}

pub(crate) fn region_at(family: &HalfspaceFamily, beta: f64, chunk_width: usize) -> Result<ConvexPolygon> {
    let Some(bbox) = bounding_square(family, beta)? else {
        return Ok(ConvexPolygon::empty());
    };
    let plan = ChunkPlan::new(family.len(), chunk_width)?;
    let reduced = eliminate_redundant(family, beta, &plan)?;
    Ok(clip_halfplanes(&reduced, beta, &bbox))
}

/// Boundary cycle of the depth region at level `α`.
pub fn depth_contour(family: &HalfspaceFamily, request: &ContourRequest) -> Result<ConvexPolygon> {
    contour_at(family, request, DEFAULT_CHUNK_WIDTH)
}

fn contour_at(family: &HalfspaceFamily, request: &ContourRequest, chunk_width: usize) -> Result<ConvexPolygon> {
    let poly = region_at(family, request.beta, chunk_width)?;
    if poly.is_empty() {
        return Err(DepthError::AlphaExceedsMaximalDepth { alpha: request.alpha, max_depth: max_depth(family)? });
    }
    Ok(poly)
}

/// The set of maximal-depth points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MedianSet {
    /// `t* = min_x O(x)`.
    pub outlyingness: f64,
    /// `α* = 1 / (1 + t*)`.
    pub depth: f64,
    /// Minimizer returned by the LP.
    pub lp_point: Point,
    /// Level set at `t* + MEDIAN_SLACK`; a point, segment or small polygon.
    pub region: ConvexPolygon,
    /// Centroid of `region`, used as the displayed median.
    pub centroid: Point,
}

pub fn median_set(family: &HalfspaceFamily) -> Result<MedianSet> {
    median_from(family, solve_minimax_lp(family)?, DEFAULT_CHUNK_WIDTH)
}

fn median_from(family: &HalfspaceFamily, sol: MinimaxSolution, chunk_width: usize) -> Result<MedianSet> {
    let beta = sol.value + MEDIAN_SLACK;
    let mut region = region_at(family, beta, chunk_width)?;
    if region.is_empty() {
        warn!("median level set came out empty, reporting the LP minimizer");
        region = ConvexPolygon::from_ccw(vec![sol.point]);
    }
    let centroid = polygon_metrics(&region).1.unwrap_or(sol.point);
    Ok(MedianSet { outlyingness: sol.value, depth: 1.0 / (1.0 + sol.value), lp_point: sol.point, region, centroid })
}

/// One contour of a batch; `polygon` is empty when `alpha` exceeds `α*`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contour {
    pub alpha: f64,
    pub polygon: ConvexPolygon,
}

/// Data, exact direction set and halfspace family built once and queried
/// many times.
#[derive(Debug, Clone)]
pub struct DepthModel {
    data: DataSet,
    directions: DirectionSet,
    family: HalfspaceFamily,
    chunk_width: usize,
    solution: MinimaxSolution,
}

impl DepthModel {
    pub fn fit(data: DataSet) -> Result<Self> {
        Self::fit_with_chunk_width(data, DEFAULT_CHUNK_WIDTH)
    }

    pub fn fit_with_chunk_width(data: DataSet, chunk_width: usize) -> Result<Self> {
        ChunkPlan::new(0, chunk_width)?;
        let directions = enumerate_directions(&data);
        let family = halfspace_coefficients(&data, &directions)?;
        let solution = solve_minimax_lp(&family)?;
        debug!("model: n = {}, M = {}, t* = {}", data.len(), family.len(), solution.value);
        Ok(DepthModel { data, directions, family, chunk_width, solution })
    }

    pub fn data(&self) -> &DataSet {
        &self.data
    }

    pub fn directions(&self) -> &DirectionSet {
        &self.directions
    }

    pub fn family(&self) -> &HalfspaceFamily {
        &self.family
    }

    pub fn chunk_width(&self) -> usize {
        self.chunk_width
    }

    pub fn depth(&self, x: Point) -> DepthResult {
        outlyingness(x, &self.family).expect("fitted family is non-empty")
    }

    /// Angle of the direction attaining the outlyingness at `x`.
    pub fn attaining_angle(&self, x: Point) -> f64 {
        self.directions.directions()[self.depth(x).attaining_index].angle
    }

    pub fn max_depth(&self) -> f64 {
        1.0 / (1.0 + self.solution.value)
    }

    pub fn lp_solution(&self) -> MinimaxSolution {
        self.solution
    }

    pub fn median(&self) -> Result<MedianSet> {
        median_from(&self.family, self.solution, self.chunk_width)
    }

    pub fn region(&self, alpha: f64) -> Result<ConvexPolygon> {
        let req = ContourRequest::new(alpha)?;
        if alpha > self.max_depth() + 1e-12 {
            return Ok(ConvexPolygon::empty());
        }
        region_at(&self.family, req.beta, self.chunk_width)
    }

    pub fn contour(&self, alpha: f64) -> Result<ConvexPolygon> {
        let poly = self.region(alpha)?;
        if poly.is_empty() {
            return Err(DepthError::AlphaExceedsMaximalDepth { alpha, max_depth: self.max_depth() });
        }
        Ok(poly)
    }

    /// Regions for several levels, computed independently.
    pub fn contours(&self, alphas: &[f64]) -> Result<Vec<Contour>> {
        crate::par::map(alphas, |&alpha| self.region(alpha).map(|polygon| Contour { alpha, polygon }))
            .into_iter()
            .collect()
    }
}

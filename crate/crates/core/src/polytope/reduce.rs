use std::ops::Range;

use log::debug;
use serde::Serialize;

use super::polygon::{bounding_square, clip_labeled, tolerance_scale, ConvexPolygon};
use crate::directions::HalfspaceFamily;
use crate::error::{DepthError, Result};

pub const MIN_CHUNK_WIDTH: usize = 16;
pub const DEFAULT_CHUNK_WIDTH: usize = 512;

/// Consecutive index ranges covering `0..M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChunkPlan {
    breakpoints: Vec<usize>,
}

impl ChunkPlan {
    /// Chunks of `width` rows; a tail shorter than `MIN_CHUNK_WIDTH` joins
    /// the previous chunk.
    pub fn new(rows: usize, width: usize) -> Result<Self> {
        if width < MIN_CHUNK_WIDTH {
            return Err(DepthError::ChunkTooNarrow(width));
        }
        let mut breakpoints: Vec<usize> = (0..rows).step_by(width).collect();
        if breakpoints.len() > 1 && rows - breakpoints[breakpoints.len() - 1] < MIN_CHUNK_WIDTH {
            breakpoints.pop();
        }
        breakpoints.push(rows);
        Ok(ChunkPlan { breakpoints })
    }

    pub fn with_default_width(rows: usize) -> Self {
        Self::new(rows, DEFAULT_CHUNK_WIDTH).expect("default width is valid")
    }

    pub fn breakpoints(&self) -> &[usize] {
        &self.breakpoints
    }

    /// Number of chunks.
    pub fn count(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn chunks(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.breakpoints.windows(2).map(|w| w[0]..w[1])
    }

    pub fn rows(&self) -> usize {
        *self.breakpoints.last().expect("at least one breakpoint")
    }
}

/// Drops rows that cannot touch the boundary of `{x : g_i(x) ≤ β}`.
///
/// Each chunk is clipped on its own and keeps only rows that label an edge of
/// its polygon; a final pass over the survivors makes the result idempotent.
/// When the region is empty or a chunk polygon collapses, the affected rows
/// are kept, so the region of the returned family always equals the original.
pub fn eliminate_redundant(family: &HalfspaceFamily, beta: f64, plan: &ChunkPlan) -> Result<HalfspaceFamily> {
    if plan.rows() != family.len() {
        return Err(DepthError::InvalidInput(format!(
            "chunk plan covers {} rows, family has {}",
            plan.rows(),
            family.len()
        )));
    }
    let Some(bbox) = bounding_square(family, beta)? else {
        return Ok(family.clone());
    };
    let ranges: Vec<Range<usize>> = plan.chunks().collect();
    let per_chunk = crate::par::map(&ranges, |r| survivors(family, beta, &bbox, r.clone()));
    let merged: Vec<usize> = per_chunk.into_iter().flatten().collect();
    let last = survivors(family, beta, &bbox, merged.iter().copied());
    debug!("redundancy elimination: {} rows, {} after chunks, {} kept", family.len(), merged.len(), last.len());
    Ok(family.subset(last))
}

fn survivors(
    family: &HalfspaceFamily,
    beta: f64,
    bbox: &ConvexPolygon,
    indices: impl IntoIterator<Item = usize> + Clone,
) -> Vec<usize> {
    let poly = clip_labeled(family, beta, bbox, indices.clone());
    if poly.pts.len() >= 3 {
        return poly.edge_labels();
    }
    if poly.is_empty() {
        return indices.into_iter().collect();
    }
    // a segment or point: keep every row active at one of its vertices
    let rows = family.rows();
    let tol = super::MERGE_REL_TOL * tolerance_scale(family, bbox);
    indices
        .into_iter()
        .filter(|&i| {
            let r = rows[i];
            let norm = r.a.norm();
            poly.pts.iter().any(|p| (r.eval(*p) - beta).abs() / norm <= tol)
        })
        .collect()
}

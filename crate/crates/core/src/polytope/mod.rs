//! Halfplane geometry for the level sets of the outlyingness: the min-max LP,
//! polygon clipping and chunked removal of redundant rows.

mod lp;
mod polygon;
mod reduce;

pub use lp::{solve_minimax_lp, MinimaxSolution, PIVOT_TOL};
pub use polygon::{
    bounding_square, clip_halfplanes, polygon_metrics, ConvexPolygon, PolygonKind, INSIDE_REL_TOL, MERGE_REL_TOL,
};
pub use reduce::{eliminate_redundant, ChunkPlan, DEFAULT_CHUNK_WIDTH, MIN_CHUNK_WIDTH};

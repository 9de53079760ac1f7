//! Exact bivariate projection depth with median/MAD standardization.
//!
//! The outlyingness `O(x) = sup_u (uᵀx − Med(uᵀX)) / MAD(uᵀX)` is computed
//! exactly by reducing the supremum to a finite set of directions, after which
//! `O` is the maximum of finitely many affine functions. Depth regions are
//! then convex polygons and the projection median solves a small LP.
//!
//! ```
//! use depthscope::{DataSet, DepthModel, Point};
//!
//! let data = DataSet::new(vec![
//!     Point::new(1.0, 0.0),
//!     Point::new(-1.0, 0.0),
//!     Point::new(0.0, 1.0),
//!     Point::new(0.0, -1.0),
//! ])?;
//! let model = DepthModel::fit(data)?;
//! assert!((model.depth(Point::new(1.0, 0.0)).depth - 1.0 / 3.0).abs() < 1e-12);
//! assert_eq!(model.contour(1.0 / 3.0)?.len(), 4);
//! # Ok::<(), depthscope::DepthError>(())
//! ```

pub mod contours;
pub mod datasets;
pub mod depth;
pub mod directions;
pub mod error;
mod par;
pub mod point;
pub mod polytope;
pub mod stats;

pub use contours::{
    depth_contour, depth_region, max_depth, median_set, Contour, ContourRequest, DepthModel, MedianSet, FIGURE_ALPHAS,
};
pub use depth::{outlyingness, outlyingness_grid_oracle, refined_grid_oracle, DepthResult, GridOracle};
pub use directions::{enumerate_directions, halfspace_coefficients, DirectionSet, HalfspaceFamily, HalfspaceRow};
pub use error::{DepthError, Result, Violation};
pub use point::Point;
pub use polytope::{ConvexPolygon, PolygonKind};
pub use stats::{check_general_position, mad, median, q_value, DataSet, Direction};

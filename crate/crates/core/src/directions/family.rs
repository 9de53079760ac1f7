use serde::{Deserialize, Serialize};

use super::DirectionSet;
use crate::error::{DepthError, Result};
use crate::point::Point;
use crate::stats::DataSet;

/// One affine piece `g(x) = aᵀx − b` of the outlyingness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfspaceRow {
    pub a: Point,
    pub b: f64,
}

impl HalfspaceRow {
    pub fn new(a: Point, b: f64) -> Self {
        HalfspaceRow { a, b }
    }

    #[inline]
    pub fn eval(&self, x: Point) -> f64 {
        self.a.dot(x) - self.b
    }

    /// Polar angle of the direction this row was built from.
    pub fn angle(&self) -> f64 {
        self.a.angle()
    }
}

/// The finite family whose pointwise maximum is the outlyingness.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct HalfspaceFamily {
    rows: Vec<HalfspaceRow>,
}

impl HalfspaceFamily {
    pub fn new(rows: Vec<HalfspaceRow>) -> Self {
        HalfspaceFamily { rows }
    }

    pub fn rows(&self) -> &[HalfspaceRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `(max_i g_i(x), first maximizing index)`, or `None` for an empty family.
    pub fn max_at(&self, x: Point) -> Option<(f64, usize)> {
        let mut best: Option<(f64, usize)> = None;
        for (i, r) in self.rows.iter().enumerate() {
            let g = r.eval(x);
            if best.is_none_or(|(v, _)| g > v) {
                best = Some((g, i));
            }
        }
        best
    }

    /// Largest `MAD + |Med|` over the rows; a length comparable to the data
    /// spread, used to scale geometric tolerances.
    pub fn length_scale(&self) -> f64 {
        self.rows.iter().map(|r| (1.0 + r.b.abs()) / r.a.norm()).fold(0.0, f64::max)
    }

    pub(crate) fn subset(&self, indices: impl IntoIterator<Item = usize>) -> Self {
        HalfspaceFamily { rows: indices.into_iter().map(|i| self.rows[i]).collect() }
    }
}

impl FromIterator<HalfspaceRow> for HalfspaceFamily {
    fn from_iter<I: IntoIterator<Item = HalfspaceRow>>(iter: I) -> Self {
        HalfspaceFamily { rows: iter.into_iter().collect() }
    }
}

/// `a_i = u_i / MAD(u_iᵀX)`, `b_i = Med(u_iᵀX) / MAD(u_iᵀX)`, one row per
/// direction in direction order.
pub fn halfspace_coefficients(data: &DataSet, dirs: &DirectionSet) -> Result<HalfspaceFamily> {
    let rows: Vec<Result<HalfspaceRow>> = crate::par::map(dirs.directions(), |u| {
        let (med, spread) = data.projected_median_mad(u.vector);
        if spread <= 0.0 {
            return Err(DepthError::DegenerateProjection);
        }
        Ok(HalfspaceRow { a: u.vector * (1.0 / spread), b: med / spread })
    });
    rows.into_iter().collect::<Result<Vec<_>>>().map(HalfspaceFamily::new)
}

//! `min_{t, x} t` subject to `t ≥ a_iᵀx − b_i`.
//!
//! The problem has three unknowns and one constraint per row, so the simplex
//! runs on its dual in standard form,
//!
//! ```text
//! min Σ b_i y_i   s.t.   Σ y_i = 1,  Σ y_i a_i = 0,  y ≥ 0,
//! ```
//!
//! which has only three equality rows. The simplex multipliers `π` of the
//! optimal basis give the primal solution: `t* = −π₀`, `x* = (π₁, π₂)`.

use log::debug;
use serde::Serialize;

use crate::directions::HalfspaceFamily;
use crate::error::{DepthError, Result};
use crate::point::Point;

/// Pivot and reduced-cost tolerance.
pub const PIVOT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinimaxSolution {
    /// `t* = min_x max_i g_i(x)`.
    pub value: f64,
    /// One minimizer `x*`.
    pub point: Point,
    pub iterations: usize,
}

/// Two-phase revised simplex with Bland's rule on the dual.
pub fn solve_minimax_lp(family: &HalfspaceFamily) -> Result<MinimaxSolution> {
    let rows = family.rows();
    if rows.is_empty() {
        return Err(DepthError::EmptyFamily);
    }
    let m = rows.len();
    let column = |j: usize| -> [f64; 3] {
        if j < m {
            [1.0, rows[j].a.x, rows[j].a.y]
        } else {
            let mut e = [0.0; 3];
            e[j - m] = 1.0;
            e
        }
    };
    let rhs = [1.0, 0.0, 0.0];
    let mut basis = [m, m + 1, m + 2];
    let mut iterations = 0;

    // phase 1: drive the artificials to zero
    let phase1_cost = |j: usize| if j < m { 0.0 } else { 1.0 };
    run_simplex(&mut basis, &column, &phase1_cost, rhs, m, &mut iterations)?;
    let binv = invert(&basis, &column).ok_or(DepthError::NotPositivelySpanning)?;
    let xb = mul(&binv, rhs);
    let infeasibility: f64 = (0..3).filter(|&r| basis[r] >= m).map(|r| xb[r]).sum();
    if infeasibility > 1e-9 {
        return Err(DepthError::NotPositivelySpanning);
    }
    for r in 0..3 {
        if basis[r] < m {
            continue;
        }
        let binv = invert(&basis, &column).ok_or(DepthError::NotPositivelySpanning)?;
        if let Some(j) = (0..m).find(|j| !basis.contains(j) && mul(&binv, column(*j))[r].abs() > PIVOT_TOL) {
            basis[r] = j;
        }
    }
    if basis.iter().any(|&j| j >= m) {
        // a redundant equality means the a_i do not span the plane
        return Err(DepthError::NotPositivelySpanning);
    }

    // phase 2: minimize Σ b_i y_i
    let phase2_cost = |j: usize| if j < m { rows[j].b } else { f64::INFINITY };
    run_simplex(&mut basis, &column, &phase2_cost, rhs, m, &mut iterations)?;
    let binv = invert(&basis, &column).ok_or(DepthError::NotPositivelySpanning)?;
    let cb = [phase2_cost(basis[0]), phase2_cost(basis[1]), phase2_cost(basis[2])];
    let pi = row_mul(cb, &binv);
    let point = Point::new(pi[1], pi[2]);
    let (value, _) = family.max_at(point).expect("non-empty");
    debug!("minimax LP: {iterations} pivots, dual bound {}, attained {}", -pi[0], value);
    Ok(MinimaxSolution { value, point, iterations })
}

type Matrix = [[f64; 3]; 3];

fn run_simplex(
    basis: &mut [usize; 3],
    column: &impl Fn(usize) -> [f64; 3],
    cost: &impl Fn(usize) -> f64,
    rhs: [f64; 3],
    m: usize,
    iterations: &mut usize,
) -> Result<()> {
    loop {
        let binv = invert(basis, column).ok_or(DepthError::NotPositivelySpanning)?;
        let xb = mul(&binv, rhs);
        let cb = [cost(basis[0]), cost(basis[1]), cost(basis[2])];
        let pi = row_mul(cb, &binv);
        // Bland: lowest-index improving column; artificials never re-enter
        let entering = (0..m).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let col = column(j);
            let reduced = cost(j) - (pi[0] * col[0] + pi[1] * col[1] + pi[2] * col[2]);
            reduced < -PIVOT_TOL
        });
        let Some(j) = entering else { return Ok(()) };
        let d = mul(&binv, column(j));
        let mut leave: Option<(f64, usize)> = None;
        for r in 0..3 {
            if d[r] > PIVOT_TOL {
                let ratio = xb[r].max(0.0) / d[r];
                let better = match leave {
                    None => true,
                    Some((best, br)) => ratio < best - 1e-15 || (ratio <= best + 1e-15 && basis[r] < basis[br]),
                };
                if better {
                    leave = Some((ratio, r));
                }
            }
        }
        // the dual feasible set is bounded, so an unbounded ray means bad data
        let Some((_, r)) = leave else { return Err(DepthError::NotPositivelySpanning) };
        basis[r] = j;
        *iterations += 1;
    }
}

fn invert(basis: &[usize; 3], column: &impl Fn(usize) -> [f64; 3]) -> Option<Matrix> {
    let mut a = [[0.0; 6]; 3];
    for (c, &j) in basis.iter().enumerate() {
        let col = column(j);
        for r in 0..3 {
            a[r][c] = col[r];
        }
    }
    for (r, row) in a.iter_mut().enumerate() {
        row[3 + r] = 1.0;
    }
    for c in 0..3 {
        let p = (c..3).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))?;
        if a[p][c].abs() < 1e-14 {
            return None;
        }
        a.swap(c, p);
        let inv = 1.0 / a[c][c];
        for v in a[c].iter_mut() {
            *v *= inv;
        }
        let pivot = a[c];
        for (r, row) in a.iter_mut().enumerate() {
            let f = row[c];
            if r != c && f != 0.0 {
                for (v, p) in row.iter_mut().zip(pivot) {
                    *v -= f * p;
                }
            }
        }
    }
    let mut out = [[0.0; 3]; 3];
    for r in 0..3 {
        out[r].copy_from_slice(&a[r][3..]);
    }
    Some(out)
}

fn mul(m: &Matrix, v: [f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|r| m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2])
}

fn row_mul(v: [f64; 3], m: &Matrix) -> [f64; 3] {
    [0, 1, 2].map(|c| v[0] * m[0][c] + v[1] * m[1][c] + v[2] * m[2][c])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directions::HalfspaceRow;

    #[test]
    fn absolute_value_family() {
        let fam: HalfspaceFamily = [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)]
            .into_iter()
            .map(|(x, y)| HalfspaceRow::new(Point::new(x, y), 0.0))
            .collect();
        let sol = solve_minimax_lp(&fam).unwrap();
        assert!(sol.value.abs() < 1e-12);
        assert!(sol.point.norm() < 1e-12);
    }

    #[test]
    fn shifted_triangle() {
        // max of three planes through (1, 2) with value 0.5 there
        let c = Point::new(1.0, 2.0);
        let fam: HalfspaceFamily = [0.3, 2.4, 4.5]
            .into_iter()
            .map(|t: f64| {
                let a = Point::from_angle(t) * 1.7;
                HalfspaceRow::new(a, a.dot(c) - 0.5)
            })
            .collect();
        let sol = solve_minimax_lp(&fam).unwrap();
        assert!((sol.value - 0.5).abs() < 1e-10);
        assert!(sol.point.distance(c) < 1e-9);
    }

    #[test]
    fn half_plane_family_is_unbounded() {
        let fam: HalfspaceFamily = [(1.0, 0.0), (1.0, 1.0), (1.0, -1.0)]
            .into_iter()
            .map(|(x, y)| HalfspaceRow::new(Point::new(x, y), 0.0))
            .collect();
        assert_eq!(solve_minimax_lp(&fam), Err(DepthError::NotPositivelySpanning));
    }
}

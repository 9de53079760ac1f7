#![allow(dead_code)]

use depthscope::directions::{HalfspaceFamily, HalfspaceRow};
use depthscope::{ConvexPolygon, DataSet, Point};
use rand::Rng;
use rand_chacha::ChaCha20Rng;

/// Uniform points in `[-3, 3]²`, redrawn until in general position.
pub fn random_dataset(rng: &mut ChaCha20Rng, n: usize) -> DataSet {
    loop {
        let pts = (0..n).map(|_| Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))).collect();
        if let Ok(d) = DataSet::new(pts) {
            return d;
        }
    }
}

/// Random rows whose directions positively span the plane.
pub fn random_family(rng: &mut ChaCha20Rng, m: usize) -> HalfspaceFamily {
    let m = m.max(3);
    let offset: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (0..m)
        .map(|i| {
            // the first three directions are 120° apart
            let theta = if i < 3 {
                offset + i as f64 * std::f64::consts::TAU / 3.0
            } else {
                rng.gen_range(0.0..std::f64::consts::TAU)
            };
            let a = Point::from_angle(theta) * rng.gen_range(0.3..3.0);
            HalfspaceRow::new(a, rng.gen_range(-2.0..2.0))
        })
        .collect()
}

/// Vertex enumeration by brute force: intersect every pair of boundary
/// lines, keep the feasible points, and take their convex hull.
pub fn brute_force_region(family: &HalfspaceFamily, beta: f64) -> Vec<Point> {
    let rows = family.rows();
    let mut cands = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (r, s) = (rows[i], rows[j]);
            let det = r.a.cross(s.a);
            if det.abs() < 1e-14 {
                continue;
            }
            let (ci, cj) = (r.b + beta, s.b + beta);
            let p = Point::new((ci * s.a.y - cj * r.a.y) / det, (r.a.x * cj - s.a.x * ci) / det);
            if rows.iter().all(|q| (q.eval(p) - beta) / q.a.norm() <= 1e-10) {
                cands.push(p);
            }
        }
    }
    convex_hull(cands, 1e-9)
}

/// Monotone-chain hull, counter-clockwise, without collinear or repeated points.
pub fn convex_hull(mut pts: Vec<Point>, tol: f64) -> Vec<Point> {
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    let mut uniq: Vec<Point> = Vec::new();
    for p in pts {
        if !uniq.iter().any(|q| q.distance(p) <= tol) {
            uniq.push(p);
        }
    }
    uniq.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    if uniq.len() <= 2 {
        return uniq;
    }
    let turn = |o: Point, a: Point, b: Point| (a - o).cross(b - o);
    let mut hull: Vec<Point> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> =
            if pass == 0 { Box::new(uniq.iter()) } else { Box::new(uniq.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= tol * tol {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Largest distance from a vertex of one list to the nearest vertex of the
/// other, in both directions; infinite when exactly one list is empty.
pub fn vertex_mismatch(a: &[Point], b: &[Point]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let one_way = |x: &[Point], y: &[Point]| {
        x.iter().map(|p| y.iter().map(|q| p.distance(*q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Counter-clockwise convexity with a small slack for near-straight corners.
pub fn is_convex_ccw(poly: &ConvexPolygon) -> bool {
    let v = poly.vertices();
    let n = v.len();
    if n < 3 {
        return true;
    }
    let scale = v.iter().map(|p| p.norm()).fold(1.0, f64::max);
    (0..n).all(|i| {
        let (a, b, c) = (v[i], v[(i + 1) % n], v[(i + 2) % n]);
        (b - a).cross(c - b) >= -1e-12 * scale * scale
    })
}

/// Whether every vertex of `inner` lies in `outer` up to `slack`.
pub fn nested(inner: &ConvexPolygon, outer: &ConvexPolygon, slack: f64) -> bool {
    inner.vertices().iter().all(|p| outer.contains(*p, slack))
}

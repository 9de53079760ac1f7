use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::directions::HalfspaceFamily;
use crate::error::{DepthError, Result};
use crate::point::Point;

/// Relative tolerance for merging vertices.
pub const MERGE_REL_TOL: f64 = 1e-9;
/// Relative tolerance of the inside test for a halfplane.
pub const INSIDE_REL_TOL: f64 = 1e-12;

/// Convex polygon with counter-clockwise vertices. May be degenerate:
/// a segment (2 vertices), a point (1) or empty (0).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonKind {
    Empty,
    Point,
    Segment,
    Polygon,
}

impl ConvexPolygon {
    /// Wraps vertices that are already convex and counter-clockwise.
    pub fn from_ccw(vertices: Vec<Point>) -> Self {
        ConvexPolygon { vertices }
    }

    pub fn empty() -> Self {
        ConvexPolygon { vertices: Vec::new() }
    }

    /// Axis-aligned square, counter-clockwise from the lower-left corner.
    pub fn square(center: Point, half_width: f64) -> Self {
        let h = half_width;
        ConvexPolygon::from_ccw(vec![
            center + Point::new(-h, -h),
            center + Point::new(h, -h),
            center + Point::new(h, h),
            center + Point::new(-h, h),
        ])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn kind(&self) -> PolygonKind {
        match self.vertices.len() {
            0 => PolygonKind::Empty,
            1 => PolygonKind::Point,
            2 => PolygonKind::Segment,
            _ => PolygonKind::Polygon,
        }
    }

    /// Largest vertex distance from the origin plus the polygon diameter;
    /// the length unit for relative tolerances.
    pub fn scale(&self) -> f64 {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut far: f64 = 0.0;
        for v in &self.vertices {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
            far = far.max(v.norm());
        }
        if self.vertices.is_empty() {
            return 1.0;
        }
        ((hi - lo).norm() + far).max(f64::MIN_POSITIVE)
    }

    /// Whether `p` lies inside or within `slack` of the polygon.
    pub fn contains(&self, p: Point, slack: f64) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => self.vertices[0].distance(p) <= slack,
            2 => distance_to_segment(p, self.vertices[0], self.vertices[1]) <= slack,
            n => (0..n).all(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                let edge = b - a;
                edge.cross(p - a) / edge.norm() >= -slack
            }),
        }
    }
}

fn distance_to_segment(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Shoelace area and centroid. The centroid is `None` for an empty polygon;
/// segments and points report their midpoint.
pub fn polygon_metrics(poly: &ConvexPolygon) -> (f64, Option<Point>) {
    let v = poly.vertices();
    match v.len() {
        0 => (0.0, None),
        1 => (0.0, Some(v[0])),
        2 => (0.0, Some(v[0].midpoint(v[1]))),
        n => {
            let origin = v[0];
            let mut twice_area = 0.0;
            let mut acc = Point::ORIGIN;
            for i in 1..n - 1 {
                let (p, q) = (v[i] - origin, v[i + 1] - origin);
                let w = p.cross(q);
                twice_area += w;
                acc = acc + (p + q) * w;
            }
            if twice_area.abs() <= f64::MIN_POSITIVE {
                let mean = v.iter().fold(Point::ORIGIN, |s, p| s + *p) * (1.0 / n as f64);
                return (0.0, Some(mean));
            }
            (0.5 * twice_area.abs(), Some(origin + acc * (1.0 / (3.0 * twice_area))))
        }
    }
}

/// Working polygon that remembers which constraint produced each edge.
/// `labels[i]` belongs to the edge from vertex `i` to vertex `i + 1`.
#[derive(Debug, Clone)]
pub(crate) struct LabeledPolygon {
    pub pts: Vec<Point>,
    pub labels: Vec<Option<usize>>,
    inside_tol: f64,
    merge_tol: f64,
}

impl LabeledPolygon {
    pub fn new(start: &ConvexPolygon, scale: f64) -> Self {
        LabeledPolygon {
            pts: start.vertices().to_vec(),
            labels: vec![None; start.len()],
            inside_tol: INSIDE_REL_TOL * scale,
            merge_tol: MERGE_REL_TOL * scale,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    /// Intersects with `{x : aᵀx ≤ rhs}`; the new edge carries `label`.
    pub fn clip(&mut self, a: Point, rhs: f64, label: usize) {
        let n = self.pts.len();
        if n == 0 {
            return;
        }
        let inv = 1.0 / a.norm();
        let dist: Vec<f64> = self.pts.iter().map(|p| (a.dot(*p) - rhs) * inv).collect();
        // a point or segment left by merging is only known up to merge_tol
        let tol = if n <= 2 { self.merge_tol } else { self.inside_tol };
        if dist.iter().all(|&d| d <= tol) {
            return;
        }
        if n == 1 {
            self.pts.clear();
            self.labels.clear();
            return;
        }
        let mut pts = Vec::with_capacity(n + 1);
        let mut labels = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (p, q) = (self.pts[i], self.pts[j]);
            let (dp, dq) = (dist[i], dist[j]);
            let p_in = dp <= tol;
            let q_in = dq <= tol;
            if p_in {
                pts.push(p);
                labels.push(self.labels[i]);
            }
            if p_in != q_in {
                let t = if dp == dq { 0.0 } else { (dp / (dp - dq)).clamp(0.0, 1.0) };
                let hit = p + (q - p) * t;
                pts.push(hit);
                // leaving: the edge from the exit point runs along the cut
                labels.push(if p_in { Some(label) } else { self.labels[i] });
            }
        }
        self.pts = pts;
        self.labels = labels;
        self.tidy();
    }

    /// Merges near-coincident vertices and drops vertices on a straight edge.
    fn tidy(&mut self) {
        let tol = self.merge_tol;
        let mut pts: Vec<Point> = Vec::with_capacity(self.pts.len());
        let mut labels: Vec<Option<usize>> = Vec::with_capacity(self.pts.len());
        for (p, l) in self.pts.iter().zip(&self.labels) {
            if let Some(last) = pts.last() {
                if last.distance(*p) <= tol {
                    // the degenerate edge disappears; keep the one leaving p
                    *labels.last_mut().expect("non-empty") = *l;
                    continue;
                }
            }
            pts.push(*p);
            labels.push(*l);
        }
        while pts.len() > 1 && pts[0].distance(*pts.last().expect("non-empty")) <= tol {
            pts.pop();
            labels.pop();
        }
        let mut k = 0;
        while pts.len() >= 3 && k < pts.len() {
            let m = pts.len();
            let prev = pts[(k + m - 1) % m];
            let next = pts[(k + 1) % m];
            let base = next - prev;
            let len = base.norm();
            let off = if len == 0.0 { 0.0 } else { base.cross(pts[k] - prev).abs() / len };
            if off <= tol {
                let keep = labels[(k + m - 1) % m].or(labels[k]);
                pts.remove(k);
                labels.remove(k);
                let m = pts.len();
                labels[(k + m - 1) % m] = keep;
                k = k.saturating_sub(1);
            } else {
                k += 1;
            }
        }
        if pts.len() == 2 && pts[0].distance(pts[1]) <= tol {
            pts.pop();
            labels.pop();
        }
        self.pts = pts;
        self.labels = labels;
    }

    /// Constraint labels of the boundary edges (bounding-box edges excluded).
    pub fn edge_labels(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.labels.iter().flatten().copied().collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn to_polygon(&self) -> ConvexPolygon {
        ConvexPolygon::from_ccw(self.pts.clone())
    }
}

/// `bbox ∩ {x : a_iᵀx − b_i ≤ β for all i}` by successive clipping.
pub fn clip_halfplanes(family: &HalfspaceFamily, beta: f64, bbox: &ConvexPolygon) -> ConvexPolygon {
    clip_labeled(family, beta, bbox, 0..family.len()).to_polygon()
}

pub(crate) fn clip_labeled(
    family: &HalfspaceFamily,
    beta: f64,
    bbox: &ConvexPolygon,
    indices: impl IntoIterator<Item = usize>,
) -> LabeledPolygon {
    let mut poly = LabeledPolygon::new(bbox, tolerance_scale(family, bbox));
    let rows = family.rows();
    for i in indices {
        if poly.is_empty() {
            break;
        }
        poly.clip(rows[i].a, rows[i].b + beta, i);
    }
    poly
}

/// Length unit for clipping tolerances: the larger of the box size and the
/// spread of the data behind the family.
pub(crate) fn tolerance_scale(family: &HalfspaceFamily, bbox: &ConvexPolygon) -> f64 {
    bbox.scale().max(family.length_scale())
}

/// A square containing `{x : max_i g_i(x) ≤ β}`, or `None` when that set is
/// empty. The square is derived from a few rows whose directions positively
/// span the plane, so it also bounds the full region.
pub fn bounding_square(family: &HalfspaceFamily, beta: f64) -> Result<Option<ConvexPolygon>> {
    let rows = family.rows();
    if rows.is_empty() {
        return Err(DepthError::EmptyFamily);
    }
    let mut by_angle: Vec<(f64, usize)> = rows.iter().enumerate().map(|(i, r)| (r.angle(), i)).collect();
    by_angle.sort_by(|a, b| a.0.total_cmp(&b.0));
    if max_gap(by_angle.iter().map(|p| p.0)) >= PI - 1e-12 {
        return Err(DepthError::NotPositivelySpanning);
    }

    let mut targets = 8;
    let chosen = loop {
        let mut pick: Vec<usize> =
            (0..targets).map(|k| nearest_by_angle(&by_angle, 2.0 * PI * k as f64 / targets as f64)).collect();
        pick.sort_unstable();
        pick.dedup();
        let gap = max_gap(sorted_angles(rows, &pick).into_iter());
        if gap < PI - 1e-9 || targets >= rows.len() {
            break if gap < PI - 1e-9 { pick } else { (0..rows.len()).collect() };
        }
        targets *= 2;
    };

    let mut vertices = Vec::new();
    let feasible_tol = 1e-9;
    for (x, &i) in chosen.iter().enumerate() {
        for &j in &chosen[x + 1..] {
            let (ri, rj) = (rows[i], rows[j]);
            let det = ri.a.cross(rj.a);
            if det.abs() <= 1e-14 * ri.a.norm() * rj.a.norm() {
                continue;
            }
            let (ci, cj) = (ri.b + beta, rj.b + beta);
            let p = Point::new((ci * rj.a.y - cj * ri.a.y) / det, (ri.a.x * cj - rj.a.x * ci) / det);
            let ok = chosen.iter().all(|&k| {
                let r = rows[k];
                (r.a.dot(p) - r.b - beta) / r.a.norm() <= feasible_tol * (1.0 + p.norm())
            });
            if ok {
                vertices.push(p);
            }
        }
    }
    if vertices.is_empty() {
        return Ok(None);
    }
    let (mut lo, mut hi) = (vertices[0], vertices[0]);
    for v in &vertices {
        lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
        hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
    }
    let center = lo.midpoint(hi);
    let half = 0.5 * (hi.x - lo.x).max(hi.y - lo.y);
    let half = 1.25 * half + 1e-6 * (1.0 + center.norm() + half);
    Ok(Some(ConvexPolygon::square(center, half)))
}

fn sorted_angles(rows: &[crate::directions::HalfspaceRow], pick: &[usize]) -> Vec<f64> {
    let mut a: Vec<f64> = pick.iter().map(|&i| rows[i].angle()).collect();
    a.sort_by(f64::total_cmp);
    a
}

/// Largest angular gap between consecutive sorted angles, wrapping around.
fn max_gap(sorted: impl Iterator<Item = f64>) -> f64 {
    let a: Vec<f64> = sorted.collect();
    if a.is_empty() {
        return 2.0 * PI;
    }
    let mut gap = a[0] + 2.0 * PI - a[a.len() - 1];
    for w in a.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    gap
}

fn nearest_by_angle(by_angle: &[(f64, usize)], target: f64) -> usize {
    let pos = by_angle.partition_point(|p| p.0 < target);
    let m = by_angle.len();
    let cands = [by_angle[pos % m], by_angle[(pos + m - 1) % m]];
    let dist = |t: f64| {
        let d = (t - target).rem_euclid(2.0 * PI);
        d.min(2.0 * PI - d)
    };
    if dist(cands[0].0) <= dist(cands[1].0) {
        cands[0].1
    } else {
        cands[1].1
    }
}

//! Static SVG figures: sample scatter, nested contours and the median.

use std::fmt::Write;

use depthscope::Point;

const SIZE: f64 = 640.0;
const PALETTE: [&str; 10] =
    ["#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#d62728"];

#[derive(Debug, Default)]
pub struct Figure {
    pub title: String,
    pub points: Vec<Point>,
    pub queries: Vec<Point>,
    /// `(label, vertices)`, drawn in the given order.
    pub curves: Vec<(String, Vec<Point>)>,
    pub median: Option<Point>,
}

impl Figure {
    fn extent(&self) -> (Point, Point) {
        let all = self
            .points
            .iter()
            .chain(&self.queries)
            .chain(self.curves.iter().flat_map(|c| c.1.iter()))
            .chain(self.median.iter());
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in all {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if !lo.x.is_finite() {
            return (Point::new(-1.0, -1.0), Point::new(1.0, 1.0));
        }
        let pad = Point::new((hi.x - lo.x).max(1e-9) * 0.1, (hi.y - lo.y).max(1e-9) * 0.1);
        (lo - pad, hi + pad)
    }

    pub fn render(&self) -> String {
        let (lo, hi) = self.extent();
        let scale = (SIZE / (hi.x - lo.x)).min(SIZE / (hi.y - lo.y));
        let off = Point::new((SIZE - (hi.x - lo.x) * scale) / 2.0, (SIZE - (hi.y - lo.y) * scale) / 2.0);
        let map = |p: Point| Point::new(off.x + (p.x - lo.x) * scale, SIZE - off.y - (p.y - lo.y) * scale);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(s, r#"<title>{}</title>"#, escape(&self.title));
        for (i, (label, verts)) in self.curves.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let coords: Vec<String> = verts.iter().map(|p| map(*p)).map(|q| format!("{:.2},{:.2}", q.x, q.y)).collect();
            let label = escape(label);
            match verts.len() {
                0 => {}
                1 => {
                    let q = map(verts[0]);
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{color}"><title>{label}</title></circle>"#,
                        q.x, q.y
                    );
                }
                2 => {
                    let _ = writeln!(
                        s,
                        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"><title>{label}</title></polyline>"#,
                        coords.join(" ")
                    );
                }
                _ => {
                    let _ = writeln!(
                        s,
                        r#"<polygon points="{}" fill="none" stroke="{color}" stroke-width="1.5"><title>{label}</title></polygon>"#,
                        coords.join(" ")
                    );
                }
            }
            let _ = writeln!(
                s,
                r#"<text x="8" y="{:.0}" font-family="sans-serif" font-size="11" fill="{color}">{label}</text>"#,
                16.0 + 14.0 * i as f64
            );
        }
        for p in &self.points {
            let q = map(*p);
            let _ = writeln!(s, r##"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="#333"/>"##, q.x, q.y);
        }
        for p in &self.queries {
            let q = map(*p);
            let _ = writeln!(
                s,
                r##"<rect x="{:.2}" y="{:.2}" width="6" height="6" fill="none" stroke="#1f77b4"/>"##,
                q.x - 3.0,
                q.y - 3.0
            );
        }
        if let Some(m) = self.median {
            let q = map(m);
            let _ = writeln!(
                s,
                r##"<circle cx="{:.2}" cy="{:.2}" r="5" fill="#d62728"><title>median</title></circle>"##,
                q.x, q.y
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_every_layer() {
        let fig = Figure {
            title: "a < b".into(),
            points: vec![Point::new(0.0, 0.0), Point::new(1.0, 1.0)],
            queries: vec![Point::new(0.5, 0.5)],
            curves: vec![
                ("alpha = 0.1".into(), vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)]),
                ("segment".into(), vec![Point::new(0.0, 0.0), Point::new(1.0, 1.0)]),
            ],
            median: Some(Point::new(0.3, 0.3)),
        };
        let svg = fig.render();
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains("a &lt; b"));
    }

    #[test]
    fn y_axis_points_up() {
        let fig = Figure { points: vec![Point::new(0.0, 0.0), Point::new(0.0, 1.0)], ..Default::default() };
        let svg = fig.render();
        let ys: Vec<f64> = svg
            .lines()
            .filter(|l| l.contains(r##"fill="#333""##))
            .map(|l| l.split("cy=\"").nth(1).unwrap().split('"').next().unwrap().parse().unwrap())
            .collect();
        assert!(ys[1] < ys[0]);
    }
}

//! Plain-Rust state behind the browser bindings.

use depthscope::datasets::Scenario;
use depthscope::{DataSet, DepthError, DepthModel, Point};
use serde::Serialize;

/// Points closer than this (in data units) to an existing one are treated as a click on it.
pub const PICK_RADIUS: f64 = 0.15;

#[derive(Debug, Serialize)]
pub struct Level {
    pub alpha: f64,
    pub vertices: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct Snapshot {
    pub points: Vec<[f64; 2]>,
    /// `None` while the sample cannot be fitted.
    pub max_depth: Option<f64>,
    pub median: Option<[f64; 2]>,
    pub levels: Vec<Level>,
    /// Why the last fit failed, if it did.
    pub error: Option<String>,
}

/// An editable sample and its fitted model.
#[derive(Debug, Default)]
pub struct Session {
    points: Vec<Point>,
    model: Option<DepthModel>,
    error: Option<String>,
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_scenario(name: &str, n: usize, seed: u64) -> Result<Self, DepthError> {
        let scenario: Scenario = name.parse()?;
        let data = scenario.generate(Some(n), seed)?;
        let mut s = Session { points: data.points().to_vec(), ..Self::default() };
        s.model = Some(DepthModel::fit(data)?);
        Ok(s)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Adds `p`, or removes the nearest point within [`PICK_RADIUS`].
    pub fn toggle(&mut self, p: Point) {
        let nearest =
            self.points.iter().enumerate().map(|(i, q)| (q.distance(p), i)).min_by(|a, b| a.0.total_cmp(&b.0));
        match nearest {
            Some((d, i)) if d <= PICK_RADIUS => {
                self.points.remove(i);
            }
            _ => self.points.push(p),
        }
        self.refit();
    }

    pub fn clear(&mut self) {
        self.points.clear();
        self.refit();
    }

    fn refit(&mut self) {
        let fitted = DataSet::with_positive_mad(self.points.clone()).and_then(DepthModel::fit);
        match fitted {
            Ok(m) => {
                self.model = Some(m);
                self.error = None;
            }
            Err(e) => {
                self.model = None;
                self.error = Some(e.to_string());
            }
        }
    }

    /// Depth at `p`, or `None` without a fitted model.
    pub fn depth_at(&self, p: Point) -> Option<f64> {
        self.model.as_ref().map(|m| m.depth(p).depth)
    }

    pub fn snapshot(&self, alphas: &[f64]) -> Result<Snapshot, DepthError> {
        let points = self.points.iter().map(|p| [p.x, p.y]).collect();
        let Some(model) = &self.model else {
            let error = self.error.clone().or_else(|| Some("need at least 4 points".into()));
            return Ok(Snapshot { points, max_depth: None, median: None, levels: Vec::new(), error });
        };
        let median = model.median()?.centroid;
        let levels = model
            .contours(alphas)?
            .into_iter()
            .filter(|c| !c.polygon.is_empty())
            .map(|c| Level { alpha: c.alpha, vertices: c.polygon.vertices().iter().map(|v| [v.x, v.y]).collect() })
            .collect();
        Ok(Snapshot {
            points,
            max_depth: Some(model.max_depth()),
            median: Some([median.x, median.y]),
            levels,
            error: None,
        })
    }
}

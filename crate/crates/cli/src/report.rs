//! Report assembly and serialization for each subcommand.

use std::fmt::Write;

use depthscope::datasets::{population_normal_contour, Matrix2, MixtureSpec, Scenario};
use depthscope::{ContourRequest, DepthModel, GridOracle, Point, PolygonKind};
use log::warn;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::svg::Figure;
use crate::{Format, Source};

/// Bumped whenever a JSON field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
struct Oracle {
    grid: usize,
    outlyingness: f64,
    /// Exact minus grid value; never meaningfully negative.
    gap: f64,
}

#[derive(Debug, Serialize)]
struct DepthRow {
    x: f64,
    y: f64,
    outlyingness: f64,
    depth: f64,
    attaining_angle: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<Oracle>,
}

#[derive(Debug, Serialize)]
struct DepthReport {
    schema_version: u32,
    command: &'static str,
    data: Source,
    rows: Vec<DepthRow>,
}

#[derive(Debug, Serialize)]
struct MedianReport {
    schema_version: u32,
    command: &'static str,
    data: Source,
    max_depth: f64,
    outlyingness: f64,
    kind: PolygonKind,
    vertices: Vec<Point>,
    centroid: Point,
    lp_point: Point,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<Oracle>,
}

#[derive(Debug, Serialize)]
struct ContourEntry {
    alpha: f64,
    empty: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<PolygonKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    area: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius: Option<f64>,
    vertices: Vec<Point>,
    /// Largest exact-minus-grid outlyingness over the vertices.
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_gap: Option<f64>,
}

#[derive(Debug, Serialize)]
struct ContoursReport {
    schema_version: u32,
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<Source>,
    #[serde(skip_serializing_if = "Option::is_none")]
    population_sigma: Option<Matrix2>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_depth: Option<f64>,
    median: Point,
    contours: Vec<ContourEntry>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

fn oracle_for(model: &DepthModel, grid: usize) -> CliResult<Option<GridOracle>> {
    match grid {
        0 => Ok(None),
        1..=3 => Err(CliError::Usage(format!("--oracle-grid must be 0 or at least 4, got {grid}"))),
        k => Ok(Some(GridOracle::new(model.data(), k))),
    }
}

fn audit(oracle: &GridOracle, exact: f64, x: Point) -> Oracle {
    let grid = oracle.max_q(x).0;
    Oracle { grid: oracle.len(), outlyingness: grid, gap: exact - grid }
}

pub fn points_csv(points: &[Point]) -> String {
    let mut s = String::new();
    for p in points {
        let _ = writeln!(s, "{},{}", p.x, p.y);
    }
    s
}

pub fn depth(model: &DepthModel, data: Source, queries: &[Point], grid: usize, format: Format) -> CliResult<String> {
    let oracle = oracle_for(model, grid)?;
    let rows: Vec<DepthRow> = queries
        .iter()
        .map(|&q| {
            let r = model.depth(q);
            DepthRow {
                x: q.x,
                y: q.y,
                outlyingness: r.outlyingness,
                depth: r.depth,
                attaining_angle: model.attaining_angle(q),
                oracle: oracle.as_ref().map(|o| audit(o, r.outlyingness, q)),
            }
        })
        .collect();
    Ok(match format {
        Format::Json => to_json(&DepthReport { schema_version: SCHEMA_VERSION, command: "depth", data, rows }),
        Format::Csv => {
            let mut s = String::from("x,y,outlyingness,depth,attaining_angle");
            s.push_str(if oracle.is_some() { ",oracle_outlyingness,oracle_gap\n" } else { "\n" });
            for r in &rows {
                let _ = write!(s, "{},{},{},{},{}", r.x, r.y, r.outlyingness, r.depth, r.attaining_angle);
                if let Some(o) = &r.oracle {
                    let _ = write!(s, ",{},{}", o.outlyingness, o.gap);
                }
                s.push('\n');
            }
            s
        }
        Format::Svg => Figure {
            title: format!("depth of {} query points", queries.len()),
            points: model.data().points().to_vec(),
            queries: queries.to_vec(),
            ..Default::default()
        }
        .render(),
    })
}

pub fn median(model: &DepthModel, data: Source, grid: usize, format: Format) -> CliResult<String> {
    let med = model.median()?;
    let oracle = oracle_for(model, grid)?.map(|o| audit(&o, model.depth(med.centroid).outlyingness, med.centroid));
    Ok(match format {
        Format::Json => to_json(&MedianReport {
            schema_version: SCHEMA_VERSION,
            command: "median",
            data,
            max_depth: med.depth,
            outlyingness: med.outlyingness,
            kind: med.region.kind(),
            vertices: med.region.vertices().to_vec(),
            centroid: med.centroid,
            lp_point: med.lp_point,
            oracle,
        }),
        Format::Csv => {
            let mut s = format!("# max_depth {}\nrole,x,y\n", med.depth);
            for v in med.region.vertices() {
                let _ = writeln!(s, "vertex,{},{}", v.x, v.y);
            }
            let _ = writeln!(s, "centroid,{},{}", med.centroid.x, med.centroid.y);
            let _ = writeln!(s, "lp_point,{},{}", med.lp_point.x, med.lp_point.y);
            s
        }
        Format::Svg => Figure {
            title: format!("median set, maximal depth {:.6}", med.depth),
            points: model.data().points().to_vec(),
            curves: vec![("median set".into(), med.region.vertices().to_vec())],
            median: Some(med.centroid),
            ..Default::default()
        }
        .render(),
    })
}

fn contours_csv(entries: &[ContourEntry]) -> String {
    let mut s = String::from("alpha,vertex,x,y\n");
    for e in entries {
        for (i, v) in e.vertices.iter().enumerate() {
            let _ = writeln!(s, "{},{},{},{}", e.alpha, i, v.x, v.y);
        }
    }
    s
}

/// Curves ordered from the lowest level (outermost) inwards.
fn nested_curves(entries: &[ContourEntry]) -> Vec<(String, Vec<Point>)> {
    let mut order: Vec<&ContourEntry> = entries.iter().filter(|e| !e.empty).collect();
    order.sort_by(|a, b| a.alpha.total_cmp(&b.alpha));
    order.into_iter().map(|e| (format!("alpha = {}", e.alpha), e.vertices.clone())).collect()
}

pub fn contours(model: &DepthModel, data: Source, alphas: &[f64], grid: usize, format: Format) -> CliResult<String> {
    let oracle = oracle_for(model, grid)?;
    let max_depth = model.max_depth();
    let mut entries = Vec::with_capacity(alphas.len());
    for c in model.contours(alphas)? {
        let empty = c.polygon.is_empty();
        if empty {
            warn!("alpha = {} exceeds the maximal depth {max_depth:.6}; contour is empty", c.alpha);
        }
        let oracle_gap = oracle.as_ref().filter(|_| !empty).map(|o| {
            c.polygon.vertices().iter().map(|&v| model.depth(v).outlyingness - o.max_q(v).0).fold(0.0, f64::max)
        });
        let (area, _) = depthscope::polytope::polygon_metrics(&c.polygon);
        entries.push(ContourEntry {
            alpha: c.alpha,
            empty,
            kind: (!empty).then(|| c.polygon.kind()),
            area: (!empty).then_some(area),
            radius: None,
            vertices: c.polygon.vertices().to_vec(),
            oracle_gap,
        });
    }
    if entries.iter().all(|e| e.empty) {
        return Err(CliError::Degenerate(format!(
            "every requested contour is empty: all alphas exceed the maximal depth {max_depth:.6}"
        )));
    }
    let median = model.median()?.centroid;
    Ok(match format {
        Format::Json => to_json(&ContoursReport {
            schema_version: SCHEMA_VERSION,
            command: "contours",
            data: Some(data),
            population_sigma: None,
            max_depth: Some(max_depth),
            median,
            contours: entries,
        }),
        Format::Csv => contours_csv(&entries),
        Format::Svg => Figure {
            title: format!("depth contours of {} ({} points)", data.name, data.n),
            points: model.data().points().to_vec(),
            curves: nested_curves(&entries),
            median: Some(median),
            ..Default::default()
        }
        .render(),
    })
}

pub fn population(sigma: Matrix2, alphas: &[f64], resolution: usize, format: Format) -> CliResult<String> {
    if resolution < 3 {
        return Err(CliError::Usage(format!("--resolution must be at least 3, got {resolution}")));
    }
    let mut entries = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        ContourRequest::new(alpha)?;
        if alpha >= 1.0 {
            // the population contour at level 1 is the center alone
            entries.push(ContourEntry {
                alpha,
                empty: false,
                kind: Some(PolygonKind::Point),
                area: Some(0.0),
                radius: Some(0.0),
                vertices: vec![Point::ORIGIN],
                oracle_gap: None,
            });
            continue;
        }
        let e = population_normal_contour(sigma, alpha)?;
        entries.push(ContourEntry {
            alpha,
            empty: false,
            kind: None,
            area: None,
            radius: Some(e.radius()),
            vertices: e.boundary(resolution),
            oracle_gap: None,
        });
    }
    Ok(match format {
        Format::Json => to_json(&ContoursReport {
            schema_version: SCHEMA_VERSION,
            command: "contours",
            data: None,
            population_sigma: Some(sigma),
            max_depth: Some(1.0),
            median: Point::ORIGIN,
            contours: entries,
        }),
        Format::Csv => contours_csv(&entries),
        Format::Svg => Figure {
            title: "population depth contours".into(),
            curves: nested_curves(&entries),
            median: Some(Point::ORIGIN),
            ..Default::default()
        }
        .render(),
    })
}

pub fn provenance(scenario: Scenario, n: usize, seed: u64) -> Value {
    let parameters = match scenario {
        Scenario::Example1 | Scenario::Example2 | Scenario::Normal => {
            let contamination = match scenario {
                Scenario::Example1 => json!({ "coordinate": 1, "value": 6.0, "probability": 0.05 }),
                Scenario::Example2 => json!({ "coordinate": 1, "value": 6.0, "probability": 0.10 }),
                _ => Value::Null,
            };
            json!({ "distribution": "normal", "mean": [0.0, 0.0], "sigma": scenario.sigma(), "contamination": contamination })
        }
        Scenario::Triangle => {
            json!({ "distribution": "uniform", "region": "triangle", "vertices": [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0]] })
        }
        Scenario::Square => {
            json!({ "distribution": "uniform", "region": "square", "vertices": [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]] })
        }
        Scenario::Mixture => {
            let m = MixtureSpec::default();
            json!({ "distribution": "mixture", "weights": [0.5, 0.5], "means": [m.mu1, m.mu2], "sigma": [[1.0, 0.0], [0.0, 1.0]] })
        }
    };
    json!({
        "schema_version": SCHEMA_VERSION,
        "scenario": scenario,
        "n": n,
        "seed": seed,
        "generator": "chacha20",
        "parameters": parameters,
    })
}

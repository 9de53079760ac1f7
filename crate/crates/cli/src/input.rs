use std::fs;
use std::path::Path;

use depthscope::Point;

use crate::error::{CliError, CliResult};

/// Headerless two-column CSV; `#` starts a comment line, blank lines are skipped.
pub fn parse_points(text: &str, source: &str) -> CliResult<Vec<Point>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| CliError::Parse { file: source.to_string(), line: k as u64 + 1, msg };
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(err(format!("expected 2 columns, found {}", fields.len())));
        }
        let field = |f: &str| -> CliResult<f64> {
            let v: f64 = f.parse().map_err(|_| err(format!("'{f}' is not a number")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(err(format!("'{f}' is not finite")))
            }
        };
        out.push(Point::new(field(fields[0])?, field(fields[1])?));
    }
    Ok(out)
}

pub fn read_points(path: &Path) -> CliResult<Vec<Point>> {
    let text = fs::read_to_string(path).map_err(|err| CliError::Io { path: path.to_path_buf(), err })?;
    parse_points(&text, &path.display().to_string())
}

/// `"x,y"` from the command line.
pub fn parse_pair(s: &str) -> CliResult<Point> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || CliError::Usage(format!("expected a point as x,y, got '{s}'"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let x: f64 = parts[0].parse().map_err(|_| bad())?;
    let y: f64 = parts[1].parse().map_err(|_| bad())?;
    Ok(Point::new(x, y))
}

//! Point-set and reference-file parsing.

use std::path::Path;

use serde::Deserialize;
use sweepcount_core::geom::{Point, Segment};

use crate::CliError;

#[derive(Deserialize)]
struct JsonPoints {
    points: Vec<[i64; 2]>,
}

/// Whitespace-separated `x y` lines with `#` comments, or `{"points": [[x, y], ...]}`.
pub fn parse_points(text: &str) -> Result<Vec<Point>, CliError> {
    if text.trim_start().starts_with('{') {
        let doc: JsonPoints = serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad JSON point file: {e}")))?;
        return Ok(doc.points.into_iter().map(|[x, y]| Point::new(x, y)).collect());
    }
    let mut pts = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [x, y] = fields[..] else {
            return Err(CliError::Input(format!("line {}: expected two integers, got '{line}'", k + 1)));
        };
        let num = |s: &str| s.parse::<i64>().map_err(|_| CliError::Input(format!("line {}: '{s}' is not an integer", k + 1)));
        pts.push(Point::new(num(x)?, num(y)?));
    }
    Ok(pts)
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

/// A JSON array of `[a, b]` vertex pairs.
pub fn parse_edges(text: &str, n: usize) -> Result<Vec<Segment>, CliError> {
    let pairs: Vec<[usize; 2]> = serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad structure file: {e}")))?;
    pairs
        .into_iter()
        .map(|[a, b]| {
            if a >= n || b >= n {
                Err(CliError::Input(format!("edge {a}-{b} references a vertex outside 0..{n}")))
            } else if a == b {
                Err(CliError::Input(format!("edge {a}-{b} is a loop")))
            } else {
                Ok(Segment::new(a, b))
            }
        })
        .collect()
}

/// A JSON array of vertex indices.
pub fn parse_path(text: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let path: Vec<usize> = serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad path file: {e}")))?;
    if let Some(v) = path.iter().find(|&&v| v >= n) {
        return Err(CliError::Input(format!("path references vertex {v} outside 0..{n}")));
    }
    if path.windows(2).any(|w| w[0] == w[1]) {
        return Err(CliError::Input("path repeats a vertex consecutively".into()));
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_agree() {
        let text = "# fan\n0 0\n2 2   # corner\n\n3 7\n";
        let json = r#"{"points": [[0, 0], [2, 2], [3, 7]]}"#;
        assert_eq!(parse_points(text).unwrap(), parse_points(json).unwrap());
    }

    #[test]
    fn bad_lines() {
        assert!(parse_points("1 2 3\n").is_err());
        assert!(parse_points("1 x\n").is_err());
        assert!(parse_edges("[[0, 5]]", 5).is_err());
        assert!(parse_path("[0, 9]", 5).is_err());
    }
}

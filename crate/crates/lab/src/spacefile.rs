//! Text format for a finite measured metric space.
//!
//! Line 1 holds the point count `k`, the next `k` lines hold one mass each,
//! and the final `k` lines hold the rows of the distance matrix with entries
//! separated by whitespace. Blank lines and `#` comments are allowed.

use std::path::Path;

use mstlab_core::metric::FiniteMeasuredMetricSpace;

use crate::LabError;

pub fn read_space(path: &Path) -> Result<FiniteMeasuredMetricSpace, LabError> {
    let text = std::fs::read_to_string(path)?;
    parse_space(&text).map_err(|msg| LabError::Parse(format!("{}: {msg}", path.display())))
}

fn parse_space(text: &str) -> Result<FiniteMeasuredMetricSpace, String> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        (!line.is_empty()).then_some((i + 1, line))
    });
    let (lineno, first) = lines.next().ok_or("empty file")?;
    let k: usize = first
        .parse()
        .map_err(|_| format!("line {lineno}: point count must be an integer, got {first:?}"))?;
    if k == 0 {
        return Err(format!("line {lineno}: point count must be positive"));
    }
    let mut mass = Vec::with_capacity(k);
    for _ in 0..k {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| format!("expected {k} mass lines"))?;
        let m: f64 = line
            .parse()
            .map_err(|_| format!("line {lineno}: bad mass {line:?}"))?;
        mass.push(m);
    }
    let mut dist = Vec::with_capacity(k * k);
    for _ in 0..k {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| format!("expected {k} matrix rows"))?;
        let row: Vec<f64> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse()
                    .map_err(|_| format!("line {lineno}: bad distance {tok:?}"))
            })
            .collect::<Result<_, _>>()?;
        if row.len() != k {
            return Err(format!(
                "line {lineno}: expected {k} entries, got {}",
                row.len()
            ));
        }
        dist.extend_from_slice(&row);
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(format!("line {lineno}: trailing content after matrix"));
    }
    FiniteMeasuredMetricSpace::new(k, dist, mass).map_err(|e| format!("{e:?}"))
}

pub fn format_space(space: &FiniteMeasuredMetricSpace) -> String {
    let k = space.point_count();
    let mut out = String::new();
    out.push_str(&format!("{k}\n"));
    for i in 0..k {
        out.push_str(&format!("{:.16e}\n", space.mass(i)));
    }
    for i in 0..k {
        let row: Vec<String> = (0..k)
            .map(|j| format!("{:.16e}", space.distance(i, j)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

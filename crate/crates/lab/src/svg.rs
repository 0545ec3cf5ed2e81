//! Deterministic SVG line plots for sweep results. The same input always
//! renders to the same bytes, so plots can be diffed and cached.

use crate::report::SweepFile;
use crate::LabError;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

#[derive(Clone, Copy, Debug)]
pub struct PlotPoint {
    pub x: f64,
    pub y: f64,
    /// Confidence band (low, high) drawn as a whisker.
    pub ci: Option<(f64, f64)>,
}

#[derive(Clone, Debug)]
pub struct PlotOptions {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
}

/// Extracts one (x, y) series from a sweep file. `x_key` is `value` or
/// `eps3n`; `y_key` names a correlation as `r_<name>`, otherwise a scalar or
/// extra field of the per-point summaries.
pub fn sweep_series(sweep: &SweepFile, x_key: &str, y_key: &str) -> Result<Vec<PlotPoint>, LabError> {
    let mut points = Vec::with_capacity(sweep.points.len());
    for point in &sweep.points {
        let x = match x_key {
            "value" => point.value,
            "eps3n" => point.eps3n,
            other => {
                return Err(LabError::Config(format!(
                    "unknown x-axis field {other:?}; choose value or eps3n"
                )))
            }
        };
        let summary = &point.summary;
        let (y, ci) = if let Some(name) = y_key.strip_prefix("r_") {
            let c = summary.correlations.get(name).ok_or_else(|| {
                LabError::Config(format!("no correlation named {name:?} in sweep point"))
            })?;
            (c.r, Some((c.ci_low, c.ci_high)))
        } else if let Some(s) = summary.scalars.get(y_key) {
            (s.mean, Some((s.mean - s.ci95, s.mean + s.ci95)))
        } else if let Some(&v) = summary.extras.get(y_key) {
            (v, None)
        } else {
            return Err(LabError::Config(format!(
                "no field named {y_key:?} in sweep point"
            )));
        };
        points.push(PlotPoint { x, y, ci });
    }
    Ok(points)
}

pub fn render_plot(points: &[PlotPoint], opts: &PlotOptions) -> Result<String, LabError> {
    if points.is_empty() {
        return Err(LabError::Config("cannot plot an empty series".into()));
    }
    for p in points {
        if !p.x.is_finite() || !p.y.is_finite() {
            return Err(LabError::Config(format!(
                "plot point ({}, {}) is not finite",
                p.x, p.y
            )));
        }
        if opts.log_x && p.x <= 0.0 {
            return Err(LabError::Config(format!(
                "log scale needs positive x values, got {}",
                p.x
            )));
        }
        if let Some((lo, hi)) = p.ci {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(LabError::Config("confidence band is not finite".into()));
            }
        }
    }
    let tx = |x: f64| if opts.log_x { x.ln() } else { x };
    let mut sorted: Vec<PlotPoint> = points.to_vec();
    sorted.sort_by(|a, b| a.x.total_cmp(&b.x));

    let (mut x_lo, mut x_hi) = span(sorted.iter().map(|p| tx(p.x)));
    let (mut y_lo, mut y_hi) = span(
        sorted
            .iter()
            .flat_map(|p| match p.ci {
                Some((lo, hi)) => vec![p.y, lo, hi],
                None => vec![p.y],
            }),
    );
    pad(&mut x_lo, &mut x_hi);
    pad(&mut y_lo, &mut y_hi);

    let px = |x: f64| MARGIN_LEFT + (tx(x) - x_lo) / (x_hi - x_lo) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT);
    let py = |y: f64| HEIGHT - MARGIN_BOTTOM - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"28\" font-family=\"monospace\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
        fmt(WIDTH / 2.0),
        escape(&opts.title)
    ));

    // axes
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        fmt(x0), fmt(y0), fmt(x1), fmt(y0)
    ));
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        fmt(x0), fmt(y0), fmt(x0), fmt(y1)
    ));

    for i in 0..TICKS {
        let frac = i as f64 / (TICKS - 1) as f64;
        let xv = x_lo + frac * (x_hi - x_lo);
        let xp = x0 + frac * (x1 - x0);
        let label = if opts.log_x { xv.exp() } else { xv };
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            fmt(xp), fmt(y0), fmt(xp), fmt(y0 + 6.0)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            fmt(xp), fmt(y0 + 20.0), tick_label(label)
        ));
        let yv = y_lo + frac * (y_hi - y_lo);
        let yp = y0 + frac * (y1 - y0);
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            fmt(x0 - 6.0), fmt(yp), fmt(x0), fmt(yp)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
            fmt(x0 - 10.0), fmt(yp + 4.0), tick_label(yv)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
        fmt((x0 + x1) / 2.0),
        fmt(HEIGHT - 14.0),
        escape(&opts.x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{}</text>\n",
        fmt((y0 + y1) / 2.0),
        fmt((y0 + y1) / 2.0),
        escape(&opts.y_label)
    ));

    // confidence whiskers under the line
    for p in &sorted {
        if let Some((lo, hi)) = p.ci {
            let xp = px(p.x);
            svg.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"steelblue\" stroke-width=\"1\"/>\n",
                fmt(xp), fmt(py(lo)), fmt(xp), fmt(py(hi))
            ));
            for v in [lo, hi] {
                svg.push_str(&format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"steelblue\" stroke-width=\"1\"/>\n",
                    fmt(xp - 4.0), fmt(py(v)), fmt(xp + 4.0), fmt(py(v))
                ));
            }
        }
    }

    let path: Vec<String> = sorted
        .iter()
        .map(|p| format!("{},{}", fmt(px(p.x)), fmt(py(p.y))))
        .collect();
    svg.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\"/>\n",
        path.join(" ")
    ));
    for p in &sorted {
        svg.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"crimson\"/>\n",
            fmt(px(p.x)),
            fmt(py(p.y))
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

fn pad(lo: &mut f64, hi: &mut f64) {
    if *hi > *lo {
        let m = 0.05 * (*hi - *lo);
        *lo -= m;
        *hi += m;
    } else {
        let m = if *lo == 0.0 { 1.0 } else { lo.abs() * 0.1 };
        *lo -= m;
        *hi += m;
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (1e-3..1e5).contains(&a) {
        let s = format!("{v:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{v:.3e}")
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

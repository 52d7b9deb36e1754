//! Convergence logs: CSV rows and an SVG plot with a logarithmic time axis.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::solver::ConvergenceRecord;

pub const CSV_HEADER: &str = "time,iter,lb,ub,n_triangles,n_lollipops";

/// Fixed nine decimals with trailing zeros removed; `-0` prints as `0`.
pub fn format_objective(value: f64) -> String {
    let mut s = format!("{value:.9}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn ensure_nonempty(records: &[ConvergenceRecord]) -> Result<()> {
    if records.is_empty() {
        return Err(Error::Config("no convergence records to write".into()));
    }
    Ok(())
}

pub fn csv_string(records: &[ConvergenceRecord]) -> Result<String> {
    ensure_nonempty(records)?;
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        writeln!(
            out,
            "{:.6},{},{},{},{},{}",
            r.wall_time,
            r.iteration,
            format_objective(r.lower_bound),
            format_objective(r.best_upper_bound),
            r.triangles,
            r.lollipops
        )
        .unwrap();
    }
    Ok(out)
}

pub fn write_csv(records: &[ConvergenceRecord], path: &Path) -> Result<()> {
    fs::write(path, csv_string(records)?)?;
    Ok(())
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;
// times are clamped here before taking the logarithm
const MIN_TIME: f64 = 1e-6;

struct Axes {
    t_lo: f64,
    t_hi: f64,
    y_lo: f64,
    y_hi: f64,
}

impl Axes {
    fn new(records: &[ConvergenceRecord]) -> Self {
        let logs = records.iter().map(|r| r.wall_time.max(MIN_TIME).log10());
        let (mut t_lo, mut t_hi) = logs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| {
            (lo.min(t), hi.max(t))
        });
        if t_hi - t_lo < 1e-12 {
            t_lo -= 0.5;
            t_hi += 0.5;
        }
        let values = records
            .iter()
            .flat_map(|r| [r.lower_bound, r.best_upper_bound]);
        let (mut y_lo, mut y_hi) = values
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            });
        let pad = if y_hi - y_lo < 1e-12 {
            1.0
        } else {
            0.05 * (y_hi - y_lo)
        };
        y_lo -= pad;
        y_hi += pad;
        Axes {
            t_lo,
            t_hi,
            y_lo,
            y_hi,
        }
    }

    fn x(&self, time: f64) -> f64 {
        let t = time.max(MIN_TIME).log10();
        LEFT + (t - self.t_lo) / (self.t_hi - self.t_lo) * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, value: f64) -> f64 {
        HEIGHT - BOTTOM - (value - self.y_lo) / (self.y_hi - self.y_lo) * (HEIGHT - TOP - BOTTOM)
    }
}

fn polyline(
    axes: &Axes,
    records: &[ConvergenceRecord],
    value: impl Fn(&ConvergenceRecord) -> f64,
) -> String {
    records
        .iter()
        .map(|r| format!("{:.2},{:.2}", axes.x(r.wall_time), axes.y(value(r))))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Lower bound as a solid line, upper bound dashed, against log10 time.
pub fn svg_string(records: &[ConvergenceRecord]) -> Result<String> {
    ensure_nonempty(records)?;
    let axes = Axes::new(records);
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<path d="M{x0},{y1} L{x0},{y0} L{x1},{y0}" fill="none" stroke="black" stroke-width="1"/>"#
    )
    .unwrap();

    let first_decade = axes.t_lo.ceil() as i32;
    let last_decade = axes.t_hi.floor() as i32;
    for d in first_decade..=last_decade {
        let x = axes.x(10f64.powi(d));
        writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" font-size="11" text-anchor="middle">1e{d}</text>"#,
            y0 + 5.0,
            y0 + 18.0
        )
        .unwrap();
    }
    for (value, anchor) in [(axes.y_lo, "lo"), (axes.y_hi, "hi")] {
        let y = axes.y(value);
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end" class="tick-{anchor}">{}</text>"#,
            x0 - 6.0,
            y + 4.0,
            format_objective((value * 1e4).round() / 1e4)
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">time [s] (log scale)</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 10.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="15" y="{:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 15 {:.2})">objective</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<polyline id="lower-bound" fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#,
        polyline(&axes, records, |r| r.lower_bound)
    )
    .unwrap();
    writeln!(
        s,
        r#"<polyline id="upper-bound" fill="none" stroke="firebrick" stroke-width="2" stroke-dasharray="6,4" points="{}"/>"#,
        polyline(&axes, records, |r| r.best_upper_bound)
    )
    .unwrap();
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn write_svg(records: &[ConvergenceRecord], path: &Path) -> Result<()> {
    fs::write(path, svg_string(records)?)?;
    Ok(())
}

//! Minimal SVG line plots of sweep results.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::experiments::{SweepResult, SweepRow};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 70.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

fn range(column: &str, values: impl Iterator<Item = f64>) -> Result<(f64, f64)> {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::Plot(format!("column `{column}` has no finite values")));
    }
    if lo == hi {
        return Err(Error::Plot(format!("column `{column}` has equal min and max ({lo})")));
    }
    Ok((lo, hi))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders a line plot. `x_label` and `y_label` double as the column names
/// reported for a degenerate axis.
pub fn line_plot(title: &str, x_label: &str, y_label: &str, series: &[Series], footer: &str) -> Result<String> {
    if series.iter().all(|s| s.points.len() < 2) {
        return Err(Error::Plot(format!("`{y_label}` needs at least two rows")));
    }
    let all = || series.iter().flat_map(|s| s.points.iter());
    let (x0, x1) = range(x_label, all().map(|p| p.0))?;
    let (y0, y1) = range(y_label, all().map(|p| p.1))?;
    let (pw, ph) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ =
        writeln!(s, r#"<text x="{}" y="30" text-anchor="middle" font-size="15">{}</text>"#, WIDTH / 2.0, escape(title));
    let _ = writeln!(s, r#"<rect x="{MARGIN}" y="{MARGIN}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let (x, y) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            sx(x),
            HEIGHT - MARGIN + 18.0,
            fmt_tick(x)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            MARGIN - 6.0,
            sy(y) + 4.0,
            fmt_tick(y)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - MARGIN + 40.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{0}" text-anchor="middle" transform="rotate(-90 18 {0})">{1}</text>"#,
        HEIGHT / 2.0,
        escape(y_label)
    );
    for (i, ser) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = ser.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ =
            writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
        let ly = MARGIN + 16.0 + 16.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{ly}" fill="{color}" text-anchor="end">{}</text>"#,
            WIDTH - MARGIN - 8.0,
            escape(&ser.label)
        );
    }
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="{}" font-size="10">{}</text>"#, HEIGHT - 12.0, escape(footer));
    s.push_str("</svg>\n");
    Ok(s)
}

fn fmt_tick(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e4) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

fn series(result: &SweepResult, label: &str, f: impl Fn(&SweepRow) -> Option<f64>) -> Series {
    Series { label: label.into(), points: result.rows.iter().filter_map(|r| f(r).map(|y| (r.x, y))).collect() }
}

fn footer(result: &SweepResult) -> String {
    let p = &result.spec.base;
    format!(
        "g={} p1={} p2={} omega42={} gamma0={} n0={:e} L={} omega={} slabs={}",
        p.g, p.p1, p.p2, p.omega42, p.gamma0, p.n0, p.length, result.spec.omega, result.spec.slabs
    )
}

/// Writes `<name>_v12.svg`, `<name>_populations.svg` and, when absorption
/// is defined, `<name>_alpha.svg` into `dir`.
pub fn emit_plots(result: &SweepResult, dir: &Path) -> Result<Vec<PathBuf>> {
    if result.rows.len() < 2 {
        return Err(Error::Plot(format!("need at least two rows, got {}", result.rows.len())));
    }
    let axis = result.spec.axis;
    let x_label = format!("{} [{}]", axis.name(), axis.unit());
    let foot = footer(result);
    let name = &result.spec.name;
    let mut written = Vec::new();
    let mut emit = |suffix: &str, y_label: &str, s: Vec<Series>| -> Result<()> {
        let svg = line_plot(&format!("{name}: {y_label}"), &x_label, y_label, &s, &foot)?;
        let path = dir.join(format!("{name}_{suffix}.svg"));
        std::fs::write(&path, svg)?;
        written.push(path);
        Ok(())
    };
    emit("v12", "v12 [1]", vec![series(result, "V12", |r| r.v12)])?;
    let pops = (0..4).map(|k| series(result, &format!("pop{}", k + 1), move |r| r.populations.map(|p| p[k]))).collect();
    emit("populations", "population [1]", pops)?;
    if result.rows.iter().any(|r| r.alpha1.is_some()) {
        emit(
            "alpha",
            "alpha [1/m]",
            vec![series(result, "alpha1", |r| r.alpha1), series(result, "alpha2", |r| r.alpha2)],
        )?;
    }
    Ok(written)
}

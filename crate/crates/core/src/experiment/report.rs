use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

use super::sweep::{CurvePoint, RunResult};

/// Six significant digits, plain notation for ordinary magnitudes and
/// trailing zeros trimmed.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{x:.5e}");
    let exp: i32 = sci
        .split_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if !(-5..6).contains(&exp) {
        return sci;
    }
    let decimals = (5 - exp).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

pub fn results_csv(results: &[RunResult]) -> String {
    let mut out = String::from("repeat,fold,fraction,sample_id,accuracy,nodes,runtime_ms\n");
    for r in results {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.repeat,
            r.fold,
            fmt_sig6(r.fraction),
            r.sample_id,
            fmt_sig6(r.accuracy),
            r.nodes,
            r.runtime_ms
        );
    }
    out
}

pub fn curve_csv(curve: &[CurvePoint]) -> String {
    let mut out = String::from("fraction,mean_best_accuracy,std_best_accuracy\n");
    for p in curve {
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_sig6(p.fraction),
            fmt_sig6(p.mean),
            fmt_sig6(p.std)
        );
    }
    out
}

pub fn emit_results(results: &[RunResult], path: impl AsRef<Path>) -> Result<()> {
    if results.is_empty() {
        return Err(Error::Data("no results to write".into()));
    }
    fs::write(path, results_csv(results))?;
    Ok(())
}

pub fn emit_curve(curve: &[CurvePoint], path: impl AsRef<Path>) -> Result<()> {
    if curve.is_empty() {
        return Err(Error::Data("empty curve".into()));
    }
    fs::write(path, curve_csv(curve))?;
    Ok(())
}

/// Line plot of mean best accuracy against supervision level, with
/// one-standard-deviation whiskers.
pub fn emit_curve_svg(curve: &[CurvePoint], path: impl AsRef<Path>) -> Result<()> {
    if curve.is_empty() {
        return Err(Error::Data("empty curve".into()));
    }
    const W: f64 = 480.0;
    const H: f64 = 320.0;
    const PAD: f64 = 48.0;
    let sx = |f: f64| PAD + f * (W - 2.0 * PAD);
    let sy = |a: f64| H - PAD - a.clamp(0.0, 1.0) * (H - 2.0 * PAD);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<path d="M{x0},{y1} L{x0},{y0} L{x1},{y0}" stroke="black" fill="none"/>"#,
        x0 = sx(0.0),
        x1 = sx(1.0),
        y0 = sy(0.0),
        y1 = sy(1.0)
    );
    for tick in 0..=4 {
        let v = tick as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="end">{v:.2}</text>"#,
            sx(0.0) - 6.0,
            sy(v) + 4.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle">{:.0}%</text>"#,
            sx(v),
            sy(0.0) + 16.0,
            v * 100.0
        );
    }
    let points: Vec<String> = curve
        .iter()
        .map(|p| format!("{:.2},{:.2}", sx(p.fraction), sy(p.mean)))
        .collect();
    let _ = writeln!(
        svg,
        r#"<polyline points="{}" stroke="steelblue" stroke-width="2" fill="none"/>"#,
        points.join(" ")
    );
    for p in curve {
        let (x, lo, hi) = (sx(p.fraction), sy(p.mean - p.std), sy(p.mean + p.std));
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{lo:.2}" x2="{x:.2}" y2="{hi:.2}" stroke="steelblue"/><circle cx="{x:.2}" cy="{:.2}" r="3" fill="steelblue"/>"#,
            sy(p.mean)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">labeled fraction</text>"#,
        W / 2.0,
        H - 8.0
    );
    svg.push_str("</svg>\n");
    fs::write(path, svg)?;
    Ok(())
}

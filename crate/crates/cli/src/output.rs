//! CSV and SVG writers.

use std::fmt::Write as _;
use std::path::Path;

use fracio_core::Trajectory;

use crate::numfmt::sig;

/// `t,sector_1,…,sector_n`, one row per sample.
pub fn write_csv(path: &Path, tr: &Trajectory, n: usize) -> Result<(), String> {
    let mut w = csv::Writer::from_path(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut header = vec!["t".to_string()];
    header.extend((1..=n).map(|j| format!("sector_{j}")));
    w.write_record(&header).map_err(|e| e.to_string())?;
    for (t, v) in tr.times.iter().zip(&tr.values) {
        let mut row = vec![sig(*t)];
        row.extend(v.iter().map(|x| sig(*x)));
        w.write_record(&row).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 * hi.abs().max(1.0) {
        (lo - 1.0, hi + 1.0)
    } else {
        (lo, hi)
    }
}

/// Line chart of every sector of `tr`.
pub fn render_svg(tr: &Trajectory, title: &str) -> String {
    let n = tr.values.first().map_or(0, Vec::len);
    let (t0, t1) = range(tr.times.iter().copied());
    let (y0, y1) = range(tr.values.iter().flatten().copied());
    let px = |t: f64| LEFT + (t - t0) / (t1 - t0) * (WIDTH - LEFT - RIGHT);
    let py = |y: f64| HEIGHT - BOTTOM - (y - y0) / (y1 - y0) * (HEIGHT - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">{title}</text>"#, WIDTH / 2.0);
    // axes
    let (xa, xb, ya, yb) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
    let _ = writeln!(s, r#"<line x1="{xa}" y1="{yb}" x2="{xb}" y2="{yb}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<line x1="{xa}" y1="{ya}" x2="{xa}" y2="{yb}" stroke="black"/>"#);
    for (value, x) in [(t0, xa), (t1, xb)] {
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            yb + 16.0,
            sig(value)
        );
    }
    for (value, y) in [(y0, yb), (y1, ya)] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            xa - 4.0,
            y + 4.0,
            sig(value)
        );
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">t</text>"#, (xa + xb) / 2.0, HEIGHT - 12.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        (ya + yb) / 2.0,
        (ya + yb) / 2.0,
        tr.variable.symbol()
    );
    for j in 0..n {
        let color = COLORS[j % COLORS.len()];
        let points: Vec<String> = tr
            .times
            .iter()
            .zip(&tr.values)
            .filter(|(_, v)| v[j].is_finite())
            .map(|(t, v)| format!("{:.2},{:.2}", px(*t), py(v[j])))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="{color}">sector {}</text>"#,
            xb - 70.0,
            ya + 14.0 * (j as f64 + 1.0),
            j + 1
        );
    }
    s.push_str("</svg>\n");
    s
}

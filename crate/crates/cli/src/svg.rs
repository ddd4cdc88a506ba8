//! Minimal SVG polyline plots for the figure data.  Rendering is a thin
//! optional layer; the CSVs are the reproducible artifact.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

pub fn plot(
    path: &Path,
    title: &str,
    xs: &[f64],
    series: &[(&str, &[Option<f64>])],
) -> io::Result<()> {
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for (_, ys) in series {
        for (x, y) in xs.iter().zip(ys.iter()) {
            if let Some(y) = y {
                xmin = xmin.min(*x);
                xmax = xmax.max(*x);
                ymin = ymin.min(*y);
                ymax = ymax.max(*y);
            }
        }
    }
    if !(xmin.is_finite() && ymin.is_finite()) {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    if xmax == xmin {
        xmax = xmin + 1.0;
    }
    if ymax == ymin {
        ymax = ymin + 1.0;
    }
    let sx = (WIDTH - 2.0 * MARGIN) / (xmax - xmin);
    let sy = (HEIGHT - 2.0 * MARGIN) / (ymax - ymin);
    let px = |x: f64| MARGIN + (x - xmin) * sx;
    let py = |y: f64| HEIGHT - MARGIN - (y - ymin) * sy;

    let mut out = BufWriter::new(File::create(path)?);
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )?;
    writeln!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )?;
    writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16">{title}</text>"#,
        MARGIN
    )?;
    // axes
    writeln!(
        out,
        r##"<line x1="{m}" y1="{b}" x2="{r}" y2="{b}" stroke="#333"/><line x1="{m}" y1="{t}" x2="{m}" y2="{b}" stroke="#333"/>"##,
        m = MARGIN,
        r = WIDTH - MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN
    )?;
    // y = 0 guide when visible
    if ymin < 0.0 && ymax > 0.0 {
        writeln!(
            out,
            r##"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="#bbb" stroke-dasharray="4 4"/>"##,
            MARGIN,
            WIDTH - MARGIN,
            y = py(0.0)
        )?;
    }
    for (label, x, anchor) in [
        (format!("{xmin:.3}"), MARGIN, "middle"),
        (format!("{xmax:.3}"), WIDTH - MARGIN, "middle"),
    ] {
        writeln!(
            out,
            r#"<text x="{x}" y="{}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">{label}</text>"#,
            HEIGHT - MARGIN + 18.0
        )?;
    }
    for (label, y) in [
        (format!("{ymin:.3}"), py(ymin)),
        (format!("{ymax:.3}"), py(ymax)),
    ] {
        writeln!(
            out,
            r#"<text x="{}" y="{y}" font-family="sans-serif" font-size="12" text-anchor="end">{label}</text>"#,
            MARGIN - 6.0
        )?;
    }

    for (i, (name, ys)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut points = String::new();
        for (x, y) in xs.iter().zip(ys.iter()) {
            if let Some(y) = y {
                points.push_str(&format!("{:.2},{:.2} ", px(*x), py(*y)));
            }
        }
        writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>"#
        )?;
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" fill="{color}">{name}</text>"#,
            WIDTH - MARGIN - 120.0,
            MARGIN + 18.0 * (i + 1) as f64
        )?;
    }
    writeln!(out, "</svg>")?;
    out.flush()
}

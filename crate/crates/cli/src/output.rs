//! CSV, JSON and SVG emission.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};

/// Version of every CSV layout written by this binary; bumped when columns change.
pub const CSV_SCHEMA_VERSION: u32 = 1;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// CSV writer that emits a `# schema` comment line, then the header.
pub fn csv_writer(out: Option<&Path>, table: &str, header: &[&str]) -> Result<csv::Writer<Box<dyn Write>>> {
    let mut w = sink(out)?;
    writeln!(w, "# goldilocks {table} schema {CSV_SCHEMA_VERSION}")?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(header)?;
    Ok(csv)
}

pub fn write_json(out: Option<&Path>, value: &serde_json::Value) -> Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Diverging blue–white–red colour for `v ∈ [−1, 1]`.
fn diverging(v: f64) -> (u8, u8, u8) {
    let v = v.clamp(-1.0, 1.0);
    let fade = |t: f64| (255.0 * (1.0 - t)).round() as u8;
    if v >= 0.0 {
        (255, fade(v), fade(v))
    } else {
        (fade(-v), fade(-v), 255)
    }
}

/// Rect-grid heatmap: `values[i][j]` is drawn at column `i` (x) and row `j` (y, upwards).
pub fn heatmap_svg(xs: &[f64], ys: &[f64], values: &[Vec<f64>], x_label: &str, y_label: &str) -> String {
    let (cell_w, cell_h) = (4.0, 8.0);
    let (left, top, bottom) = (60.0, 20.0, 50.0);
    let width = left + cell_w * xs.len() as f64 + 80.0;
    let plot_h = cell_h * ys.len() as f64;
    let height = top + plot_h + bottom;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" shape-rendering="crispEdges">"#
    );
    for (i, column) in values.iter().enumerate() {
        for (j, v) in column.iter().enumerate() {
            let (r, g, b) = diverging(*v);
            let x = left + cell_w * i as f64;
            let y = top + plot_h - cell_h * (j + 1) as f64;
            let _ = writeln!(
                s,
                r##"<rect x="{x}" y="{y}" width="{cell_w}" height="{cell_h}" fill="#{r:02x}{g:02x}{b:02x}"/>"##
            );
        }
    }
    let axis_y = top + plot_h;
    let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="11">"#);
    if let (Some(x0), Some(x1)) = (xs.first(), xs.last()) {
        let _ = writeln!(s, r#"<text x="{left}" y="{}">{x0}</text>"#, axis_y + 14.0);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{x1}</text>"#,
            width - 80.0,
            axis_y + 14.0
        );
    }
    if let (Some(y0), Some(y1)) = (ys.first(), ys.last()) {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{axis_y}" text-anchor="end">{y0}</text>"#,
            left - 4.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{y1}</text>"#,
            left - 4.0,
            top + 10.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{x_label}</text>"#,
        left + cell_w * xs.len() as f64 / 2.0,
        axis_y + 34.0
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">{y_label}</text>"#,
        top + plot_h / 2.0,
        top + plot_h / 2.0
    );
    // Colour bar from −1 (bottom) to 1 (top).
    let bar_x = width - 50.0;
    for k in 0..50 {
        let v = -1.0 + 2.0 * (k as f64 + 0.5) / 50.0;
        let (r, g, b) = diverging(v);
        let y = top + plot_h * (1.0 - (k + 1) as f64 / 50.0);
        let _ = writeln!(
            s,
            r##"<rect x="{bar_x}" y="{y}" width="12" height="{}" fill="#{r:02x}{g:02x}{b:02x}"/>"##,
            plot_h / 50.0
        );
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}">1</text>"#, bar_x + 16.0, top + 10.0);
    let _ = writeln!(s, r#"<text x="{}" y="{axis_y}">-1</text>"#, bar_x + 16.0);
    s.push_str("</g>\n</svg>\n");
    s
}

pub struct Series<'a> {
    pub label: &'a str,
    pub colour: &'a str,
    pub points: Vec<(f64, f64)>,
}

/// Polyline plot; `log_x` plots `log10 x` and skips non-positive abscissae.
pub fn curves_svg(series: &[Series<'_>], log_x: bool, x_label: &str, y_label: &str) -> String {
    let (w, h, margin) = (640.0, 400.0, 50.0);
    let tx = |x: f64| if log_x { x.log10() } else { x };
    let visible = |&(x, y): &(f64, f64)| y.is_finite() && (!log_x || x > 0.0);
    let all: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.points.iter().copied().filter(visible))
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &all {
        x0 = x0.min(tx(x));
        x1 = x1.max(tx(x));
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if all.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let px = |x: f64| margin + (tx(x) - x0) / (x1 - x0) * (w - 2.0 * margin);
    let py = |y: f64| h - margin - (y - y0) / (y1 - y0) * (h - 2.0 * margin);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="{margin}" y="{margin}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        w - 2.0 * margin,
        h - 2.0 * margin
    );
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            s,
            r#"<line x1="{margin}" y1="{0:.2}" x2="{1}" y2="{0:.2}" stroke="grey" stroke-dasharray="4 3"/>"#,
            py(0.0),
            w - margin
        );
    }
    for (k, series) in series.iter().enumerate() {
        let pts: Vec<String> = series
            .points
            .iter()
            .filter(|p| visible(p))
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
            series.colour,
            pts.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="{}">{}</text>"#,
            margin + 8.0,
            margin + 14.0 * (k + 1) as f64,
            series.colour,
            series.label
        );
    }
    let axis = if log_x {
        format!("log10 {x_label}")
    } else {
        x_label.to_string()
    };
    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="11"><text x="{}" y="{}" text-anchor="middle">{axis}</text>"#,
        w / 2.0,
        h - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{margin}" y="{}">{x0:.3}</text><text x="{}" y="{}" text-anchor="end">{x1:.3}</text>"#,
        h - margin + 14.0,
        w - margin,
        h - margin + 14.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end">{y0:.3}</text><text x="{}" y="{}" text-anchor="end">{y1:.3}</text>"#,
        margin - 4.0,
        h - margin,
        margin - 4.0,
        margin + 10.0
    );
    let _ = writeln!(
        s,
        r#"<text x="12" y="{0}" text-anchor="middle" transform="rotate(-90 12 {0})">{y_label}</text></g>"#,
        h / 2.0
    );
    s.push_str("</svg>\n");
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

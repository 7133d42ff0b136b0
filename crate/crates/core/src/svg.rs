//! Minimal SVG plots: a persistence barcode and the accuracy-vs-size curves.

use std::fmt::Write as _;

use crate::experiments::AccuracyRow;
use crate::homology::Barcode;

const DIM_COLORS: [&str; 3] = ["#d62728", "#2ca02c", "#1f77b4"];

fn header(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
}

/// Horizontal bars grouped by dimension (H0 red, H1 green, H2 blue); bars
/// shorter than `min_length` are skipped, unbounded bars run to the right
/// edge with an arrow.
pub fn barcode_svg(bc: &Barcode, min_length: f64) -> String {
    let bars: Vec<_> = bc.filter(min_length).intervals().to_vec();
    let x_max = {
        let finite = bars
            .iter()
            .flat_map(|iv| [iv.birth, iv.death])
            .filter(|x| x.is_finite())
            .fold(0.0f64, f64::max);
        let r = bc.max_radius();
        if r.is_finite() { r.max(finite) } else { finite.max(1e-9) * 1.1 }
    };
    let (left, right, top, row) = (50.0, 20.0, 20.0, 6.0);
    let width = 640.0;
    let height = top * 2.0 + 20.0 + row * bars.len() as f64 + 12.0 * 3.0;
    let scale = (width - left - right) / x_max;
    let mut out = String::new();
    header(&mut out, width, height);
    let mut y = top;
    let mut last_dim = None;
    for iv in &bars {
        if last_dim != Some(iv.dim) {
            if last_dim.is_some() {
                y += 12.0;
            }
            let _ = writeln!(out, r#"<text x="4" y="{:.1}">H{}</text>"#, y + row, iv.dim);
            last_dim = Some(iv.dim);
        }
        let x0 = left + iv.birth * scale;
        let x1 = left + iv.death.min(x_max) * scale;
        let color = DIM_COLORS[iv.dim.min(2)];
        let _ = writeln!(
            out,
            r#"<line x1="{x0:.2}" y1="{y:.1}" x2="{x1:.2}" y2="{y:.1}" stroke="{color}" stroke-width="3"/>"#,
            y = y + row / 2.0
        );
        if !iv.death.is_finite() {
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.1}" fill="{color}">&#8594;</text>"#,
                x1 + 2.0,
                y + row
            );
        }
        y += row;
    }
    let axis_y = y + 10.0;
    let _ = writeln!(
        out,
        r#"<line x1="{left}" y1="{axis_y:.1}" x2="{:.1}" y2="{axis_y:.1}" stroke="black"/>"#,
        width - right
    );
    for k in 0..=4 {
        let v = x_max * k as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{v:.2}</text>"#,
            left + v * scale,
            axis_y + 14.0
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Mean success of the three policies against sample size (taught blue,
/// uniform orange, persistent green).
pub fn accuracy_svg(table: &[AccuracyRow]) -> String {
    let (width, height) = (640.0, 400.0);
    let (left, right, top, bottom) = (50.0, 120.0, 20.0, 40.0);
    let x_min = table.first().map_or(0.0, |r| r.size as f64);
    let x_max = table.last().map_or(1.0, |r| r.size as f64).max(x_min + 1.0);
    let sx = |s: usize| left + (s as f64 - x_min) / (x_max - x_min) * (width - left - right);
    let sy = |v: f64| top + (1.0 - v) * (height - top - bottom);
    let mut out = String::new();
    header(&mut out, width, height);
    let _ = writeln!(
        out,
        r#"<polyline points="{left},{top} {left},{b} {r},{b}" fill="none" stroke="black"/>"#,
        b = height - bottom,
        r = width - right
    );
    for k in 0..=4 {
        let v = k as f64 / 4.0;
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{v:.2}</text>"#, left - 4.0, sy(v) + 4.0);
    }
    for r in table {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            sx(r.size),
            height - bottom + 16.0,
            r.size
        );
    }
    let series: [(&str, &str, fn(&AccuracyRow) -> f64); 3] = [
        ("taught", "#1f77b4", |r| r.taught),
        ("uniform", "#ff7f0e", |r| r.uniform),
        ("persistent", "#2ca02c", |r| r.persistent),
    ];
    for (i, (name, color, get)) in series.iter().enumerate() {
        let pts: Vec<String> = table
            .iter()
            .map(|r| format!("{:.2},{:.2}", sx(r.size), sy(get(r))))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            pts.join(" ")
        );
        let ly = top + 16.0 * i as f64 + 8.0;
        let lx = width - right + 10.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx}" y1="{ly}" x2="{:.1}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{:.1}" y="{:.1}">{name}</text>"#,
            lx + 20.0,
            lx + 24.0,
            ly + 4.0
        );
    }
    out.push_str("</svg>\n");
    out
}

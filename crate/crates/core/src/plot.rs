//! Static SVG rendering of sweep summaries: median normalized rank against
//! the swept value, with the interquartile range as a shaded band and the
//! mean as a dashed line.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::{write_summary, SummaryRow};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 24.0;
const BOTTOM: f64 = 48.0;

struct Scale {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
}

impl Scale {
    fn map(&self, v: f64) -> f64 {
        if self.hi == self.lo {
            return (self.px_lo + self.px_hi) / 2.0;
        }
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }
}

fn fmt_value(v: f64) -> String {
    format!("{v}")
}

/// Renders `summary` as an SVG document. Points are drawn in summary order.
pub fn render_svg(summary: &[SummaryRow]) -> Result<String> {
    if summary.is_empty() {
        return Err(Error::Empty("summary"));
    }
    let xs: Vec<f64> = summary
        .iter()
        .enumerate()
        .map(|(i, r)| r.sweep_value.unwrap_or(i as f64))
        .collect();
    let (x_lo, x_hi) = xs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let y_top = summary
        .iter()
        .map(|r| r.q3.max(r.median).max(r.mean))
        .fold(0.0, f64::max);
    let y_hi = (y_top * 1.1).clamp(0.01, 1.0);

    let sx = Scale {
        lo: x_lo,
        hi: x_hi,
        px_lo: LEFT,
        px_hi: WIDTH - RIGHT,
    };
    let sy = Scale {
        lo: 0.0,
        hi: y_hi,
        px_lo: HEIGHT - BOTTOM,
        px_hi: TOP,
    };
    let param = &summary[0].param;

    let mut svg = String::new();
    // writing into a String cannot fail
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        "<style>.axis{{stroke:#000;stroke-width:1}} .iqr{{fill:#4a78b5;fill-opacity:0.25;stroke:none}} \
         .median{{fill:#1f4e8c}} .median-line{{fill:none;stroke:#1f4e8c;stroke-width:2}} \
         .mean{{fill:none;stroke:#b5541f;stroke-width:1;stroke-dasharray:4 3}} \
         text{{font-family:sans-serif;font-size:11px}}</style>"
    );

    let x0 = LEFT;
    let x1 = WIDTH - RIGHT;
    let y0 = HEIGHT - BOTTOM;
    let _ = writeln!(
        svg,
        r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{x0}" y2="{TOP}"/>"#
    );
    for i in 0..=4 {
        let v = y_hi * f64::from(i) / 4.0;
        let y = sy.map(v);
        let _ = writeln!(
            svg,
            r#"<line class="axis" x1="{:.2}" y1="{y:.2}" x2="{x0}" y2="{y:.2}"/><text x="{:.2}" y="{:.2}" text-anchor="end">{v:.3}</text>"#,
            x0 - 4.0,
            x0 - 6.0,
            y + 4.0
        );
    }
    for &x in &xs {
        let px = sx.map(x);
        let _ = writeln!(
            svg,
            r#"<line class="axis" x1="{px:.2}" y1="{y0}" x2="{px:.2}" y2="{:.2}"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y0 + 4.0,
            y0 + 16.0,
            fmt_value(x)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{param}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{:.2}" text-anchor="middle" transform="rotate(-90 14 {:.2})">normalized rank of true source</text>"#,
        (TOP + y0) / 2.0,
        (TOP + y0) / 2.0
    );

    let upper = xs
        .iter()
        .zip(summary)
        .map(|(&x, r)| (sx.map(x), sy.map(r.q3)));
    let lower = xs
        .iter()
        .zip(summary)
        .rev()
        .map(|(&x, r)| (sx.map(x), sy.map(r.q1)));
    let band: Vec<String> = upper
        .chain(lower)
        .map(|(x, y)| format!("{x:.2},{y:.2}"))
        .collect();
    let _ = writeln!(svg, r#"<polygon class="iqr" points="{}"/>"#, band.join(" "));

    let line = |f: fn(&SummaryRow) -> f64| -> String {
        xs.iter()
            .zip(summary)
            .map(|(&x, r)| format!("{:.2},{:.2}", sx.map(x), sy.map(f(r))))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(
        svg,
        r#"<polyline class="mean" points="{}"/>"#,
        line(|r| r.mean)
    );
    let _ = writeln!(
        svg,
        r#"<polyline class="median-line" points="{}"/>"#,
        line(|r| r.median)
    );
    for (&x, r) in xs.iter().zip(summary) {
        let _ = writeln!(
            svg,
            r#"<circle class="median" cx="{:.2}" cy="{:.2}" r="3" data-x="{}" data-y="{}"/>"#,
            sx.map(x),
            sy.map(r.median),
            fmt_value(x),
            r.median
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Writes the plot to `svg_path` and the summary table to `summary.csv` in
/// the same directory.
pub fn emit_plot(summary: &[SummaryRow], svg_path: &Path) -> Result<()> {
    let svg = render_svg(summary)?;
    let mut out = BufWriter::new(File::create(svg_path)?);
    out.write_all(svg.as_bytes())?;
    out.flush()?;
    let csv_path = svg_path.with_file_name("summary.csv");
    write_summary(summary, BufWriter::new(File::create(csv_path)?))
}

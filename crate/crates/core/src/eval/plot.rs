//! Minimal SVG charts for the CSV artifacts.

use std::io::Write;

use crate::error::Result;

const W: f64 = 640.0;
const H: f64 = 420.0;
const PAD: f64 = 48.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn fit<'a>(xs: impl Iterator<Item = &'a f64> + Clone, ys: impl Iterator<Item = &'a f64> + Clone) -> Frame {
        let span = |it: &mut dyn Iterator<Item = &'a f64>| {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for v in it {
                lo = lo.min(*v);
                hi = hi.max(*v);
            }
            if !lo.is_finite() {
                (0.0, 1.0)
            } else if lo == hi {
                (lo - 0.5, hi + 0.5)
            } else {
                (lo, hi)
            }
        };
        let (x0, x1) = span(&mut xs.clone());
        let (y0, y1) = span(&mut ys.clone());
        Frame { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        PAD + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * PAD)
    }

    fn py(&self, y: f64) -> f64 {
        H - PAD - (y - self.y0) / (self.y1 - self.y0) * (H - 2.0 * PAD)
    }
}

fn header<Wr: Write>(out: &mut Wr, f: &Frame, title: &str, xlabel: &str, ylabel: &str) -> Result<()> {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#
    )?;
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(out, r#"<text x="{}" y="20" text-anchor="middle">{}</text>"#, W / 2.0, escape(title))?;
    writeln!(
        out,
        r#"<path d="M{PAD} {PAD} V{} H{}" fill="none" stroke="black"/>"#,
        H - PAD,
        W - PAD
    )?;
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, W / 2.0, H - 10.0, escape(xlabel))?;
    writeln!(
        out,
        r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(ylabel)
    )?;
    for (v, anchor_x, anchor_y) in [
        (f.x0, f.px(f.x0), H - PAD + 16.0),
        (f.x1, f.px(f.x1), H - PAD + 16.0),
    ] {
        writeln!(out, r#"<text x="{anchor_x}" y="{anchor_y}" text-anchor="middle">{v:.3}</text>"#)?;
    }
    for v in [f.y0, f.y1] {
        writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{v:.3}</text>"#, PAD - 4.0, f.py(v) + 4.0)?;
    }
    Ok(())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn polyline(points: &[(f64, f64)], f: &Frame) -> String {
    points
        .iter()
        .map(|(x, y)| format!("{:.2},{:.2}", f.px(*x), f.py(*y)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Scatter of `(x, y, yhat)` rows with the fitted curve drawn on top.
pub fn write_scatter_svg<Wr: Write>(mut out: Wr, rows: &[(f64, f64, f64)], title: &str) -> Result<()> {
    let f = Frame::fit(
        rows.iter().map(|r| &r.0),
        rows.iter().flat_map(|r| [&r.1, &r.2]),
    );
    header(&mut out, &f, title, "measure score", "gold score")?;
    for (x, y, _) in rows {
        writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="steelblue"/>"#,
            f.px(*x),
            f.py(*y)
        )?;
    }
    let line: Vec<(f64, f64)> = rows.iter().map(|r| (r.0, r.2)).collect();
    writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="crimson" stroke-width="2"/>"#,
        polyline(&line, &f)
    )?;
    writeln!(out, "</svg>")?;
    Ok(())
}

/// Line chart, e.g. ρ against the number of removed pairs.
pub fn write_curve_svg<Wr: Write>(mut out: Wr, points: &[(f64, f64)], title: &str, xlabel: &str, ylabel: &str) -> Result<()> {
    let f = Frame::fit(points.iter().map(|p| &p.0), points.iter().map(|p| &p.1));
    header(&mut out, &f, title, xlabel, ylabel)?;
    writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#,
        polyline(points, &f)
    )?;
    writeln!(out, "</svg>")?;
    Ok(())
}

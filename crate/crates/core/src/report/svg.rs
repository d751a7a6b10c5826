//! Static P-L diagram of one cycle.

use std::fmt::Write as _;
use std::path::Path;

use crate::engine::{CycleKind, CycleReport};
use crate::error::{Error, Result};

use super::format::round_sig;

pub const MIN_STROKE_SAMPLES: usize = 16;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;
const TICKS: usize = 5;
const COLORS: [&str; 4] = ["#c0392b", "#2c3e50", "#2471a3", "#7d8c8d"];

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn around(report: &CycleReport) -> Self {
        let pts = report.strokes.iter().flat_map(|s| s.samples.iter());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in pts {
            x0 = x0.min(p.length);
            x1 = x1.max(p.length);
            y0 = y0.min(p.pressure);
            y1 = y1.max(p.pressure);
        }
        let pad = |lo: f64, hi: f64| {
            let span = if hi > lo { hi - lo } else { lo.abs().max(1.0) };
            (lo - 0.05 * span, hi + 0.05 * span)
        };
        let (x0, x1) = pad(x0, x1);
        let (y0, y1) = pad(y0, y1);
        Self { x0, x1, y0, y1 }
    }

    fn px(&self, l: f64) -> f64 {
        MARGIN_LEFT + (l - self.x0) / (self.x1 - self.x0) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn py(&self, p: f64) -> f64 {
        HEIGHT - MARGIN_BOTTOM - (p - self.y0) / (self.y1 - self.y0) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn tick_label(x: f64) -> String {
    format!("{}", round_sig(x, 3))
}

/// Filled triangle at the middle of a stroke, pointing along traversal.
fn arrowhead(out: &mut String, from: (f64, f64), to: (f64, f64), color: &str) {
    let (dx, dy) = (to.0 - from.0, to.1 - from.1);
    let norm = dx.hypot(dy);
    if norm == 0.0 {
        return;
    }
    let (ux, uy) = (dx / norm, dy / norm);
    let (tip_x, tip_y) = (0.5 * (from.0 + to.0) + 6.0 * ux, 0.5 * (from.1 + to.1) + 6.0 * uy);
    let (bx, by) = (tip_x - 12.0 * ux, tip_y - 12.0 * uy);
    let _ = writeln!(
        out,
        r#"  <polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{color}"/>"#,
        tip_x,
        tip_y,
        bx - 5.0 * uy,
        by + 5.0 * ux,
        bx + 5.0 * uy,
        by - 5.0 * ux,
    );
}

/// Standalone SVG for `report`; identical input gives identical bytes.
pub fn pl_svg(report: &CycleReport) -> Result<String> {
    if report.strokes.len() != 4 {
        return Err(Error::invalid(
            "strokes",
            report.strokes.len() as f64,
            "a cycle has four strokes",
        ));
    }
    if let Some(s) = report.strokes.iter().find(|s| s.samples.len() < MIN_STROKE_SAMPLES) {
        return Err(Error::invalid(
            "samples",
            s.samples.len() as f64,
            "need at least 16 samples per stroke",
        ));
    }
    let f = Frame::around(report);
    let title = match report.cycle {
        CycleKind::JouleBrayton => "Joule-Brayton",
        CycleKind::Otto => "Otto",
    };
    let mode = match report.mode {
        crate::engine::Mode::Exact => "exact",
        crate::engine::Mode::Paper => "paper",
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"  <rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"  <text x="{:.2}" y="24" text-anchor="middle" font-size="14">{title} cycle ({mode} mode)</text>"#,
        WIDTH / 2.0
    );
    let (ax0, ax1, ay0, ay1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT, HEIGHT - MARGIN_BOTTOM, MARGIN_TOP);
    let _ = writeln!(
        out,
        r#"  <line x1="{ax0:.2}" y1="{ay0:.2}" x2="{ax1:.2}" y2="{ay0:.2}" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"  <line x1="{ax0:.2}" y1="{ay0:.2}" x2="{ax0:.2}" y2="{ay1:.2}" stroke="black"/>"#
    );
    for i in 0..TICKS {
        let t = i as f64 / (TICKS - 1) as f64;
        let l = f.x0 + t * (f.x1 - f.x0);
        let x = f.px(l);
        let _ = writeln!(
            out,
            r#"  <line x1="{x:.2}" y1="{ay0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            ay0 + 5.0
        );
        let _ = writeln!(
            out,
            r#"  <text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            ay0 + 18.0,
            tick_label(l)
        );
        let p = f.y0 + t * (f.y1 - f.y0);
        let y = f.py(p);
        let _ = writeln!(
            out,
            r#"  <line x1="{:.2}" y1="{y:.2}" x2="{ax0:.2}" y2="{y:.2}" stroke="black"/>"#,
            ax0 - 5.0
        );
        let _ = writeln!(
            out,
            r#"  <text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            ax0 - 8.0,
            y + 4.0,
            tick_label(p)
        );
    }
    let _ = writeln!(
        out,
        r#"  <text x="{:.2}" y="{:.2}" text-anchor="middle">L</text>"#,
        0.5 * (ax0 + ax1),
        HEIGHT - 16.0
    );
    let _ = writeln!(
        out,
        r#"  <text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">P</text>"#,
        0.5 * (ay0 + ay1),
        0.5 * (ay0 + ay1)
    );
    for (i, stroke) in report.strokes.iter().enumerate() {
        let color = COLORS[i];
        let pts: Vec<(f64, f64)> = stroke
            .samples
            .iter()
            .map(|s| (f.px(s.length), f.py(s.pressure)))
            .collect();
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            out,
            r#"  <polyline class="{}" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            stroke.kind.name(),
            coords.join(" ")
        );
        let mid = pts.len() / 2;
        arrowhead(&mut out, pts[mid - 1], pts[mid], color);
    }
    for (i, stroke) in report.strokes.iter().enumerate() {
        let s = stroke.start();
        let (x, y) = (f.px(s.length), f.py(s.pressure));
        let _ = writeln!(out, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
        let _ = writeln!(
            out,
            r#"  <text x="{:.2}" y="{:.2}" font-weight="bold">{}</text>"#,
            x + 6.0,
            y - 6.0,
            i + 1
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn render_pl_svg(report: &CycleReport, path: &Path) -> Result<()> {
    let svg = pl_svg(report)?;
    std::fs::write(path, svg)?;
    Ok(())
}

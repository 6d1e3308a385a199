//! Deterministic SVG drawings: the instance bounding box is fitted into a
//! 1000 x 1000 viewport with a 5% margin and the y axis pointing up.

use std::fmt::Write as _;

use crate::error::Result;
use crate::geometry::Point;
use crate::intersect::count_pair;
use crate::morph::FlipSequence;
use crate::triangulation::{Edge, Instance, Triangulation};

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 50.0;

struct Viewport {
    min_x: i64,
    min_y: i64,
    scale: f64,
}

impl Viewport {
    fn fit(inst: &Instance) -> Self {
        let pts = inst.points();
        let min_x = pts.iter().map(|p| p.x).min().unwrap_or(0);
        let max_x = pts.iter().map(|p| p.x).max().unwrap_or(0);
        let min_y = pts.iter().map(|p| p.y).min().unwrap_or(0);
        let max_y = pts.iter().map(|p| p.y).max().unwrap_or(0);
        let span = (max_x - min_x).max(max_y - min_y).max(1);
        Viewport {
            min_x,
            min_y,
            scale: (SIZE - 2.0 * MARGIN) / span as f64,
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (
            MARGIN + (p.x - self.min_x) as f64 * self.scale,
            SIZE - MARGIN - (p.y - self.min_y) as f64 * self.scale,
        )
    }
}

fn line(out: &mut String, vp: &Viewport, inst: &Instance, e: Edge, class: &str, style: &str) {
    let (x1, y1) = vp.map(inst.point(e.lo()));
    let (x2, y2) = vp.map(inst.point(e.hi()));
    let _ = writeln!(
        out,
        "  <line class=\"{class}\" x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" {style}/>"
    );
}

fn draw(t: &Triangulation, overlay: Option<&Triangulation>, caption: &str) -> String {
    let inst = t.instance();
    let vp = Viewport::fit(inst);
    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    for &e in t.edges() {
        let width = if inst.is_border_edge(e) { 3 } else { 1 };
        line(
            &mut out,
            &vp,
            inst,
            e,
            "t1",
            &format!("stroke=\"black\" stroke-width=\"{width}\""),
        );
    }
    if let Some(t2) = overlay {
        for e in t2.interior_edges() {
            line(
                &mut out,
                &vp,
                inst,
                e,
                "t2",
                "stroke=\"red\" stroke-width=\"1\"",
            );
        }
    }
    for (v, &p) in inst.points().iter().enumerate() {
        let (x, y) = vp.map(p);
        let _ = writeln!(
            out,
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"black\"/>"
        );
        let _ = writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" fill=\"blue\">{v}</text>",
            x + 6.0,
            y - 6.0
        );
    }
    if !caption.is_empty() {
        let _ = writeln!(
            out,
            "  <text x=\"10\" y=\"24\" font-size=\"18\" fill=\"black\">{caption}</text>"
        );
    }
    out.push_str("</svg>\n");
    out
}

/// `t` in black; the interior edges of `overlay`, if any, in red.
pub fn render_svg(t: &Triangulation, overlay: Option<&Triangulation>) -> Result<String> {
    let caption = match overlay {
        Some(t2) => format!("crossings={}", count_pair(t, t2)?.total),
        None => String::new(),
    };
    Ok(draw(t, overlay, &caption))
}

/// One frame per triangulation along the sequence, each overlaid with the target.
pub fn render_sequence(seq: &FlipSequence) -> Result<Vec<String>> {
    let states = seq.replay()?;
    let last = states.len() - 1;
    states
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let total = count_pair(t, &seq.target)?.total;
            Ok(draw(
                t,
                Some(&seq.target),
                &format!("step {i}/{last} crossings={total}"),
            ))
        })
        .collect()
}

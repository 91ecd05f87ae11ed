//! SVG drawings of scenes: black dots for vertices, crossed circles for
//! positive witnesses, circles with a bar for negative ones.

use std::fmt::Write;

use wrg_core::geom::{PlanePoint, Scene};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 30.0;
const MARK: f64 = 5.0;

struct Frame {
    x0: i64,
    y0: i64,
    scale: f64,
}

impl Frame {
    fn of(scene: &Scene) -> Frame {
        match scene.bounds() {
            None => Frame {
                x0: 0,
                y0: 0,
                scale: 1.0,
            },
            Some((x0, x1, y0, y1)) => {
                let span = (x1 - x0).max(y1 - y0).max(1) as f64;
                Frame {
                    x0,
                    y0,
                    scale: (SIZE - 2.0 * MARGIN) / span,
                }
            }
        }
    }

    fn at(&self, p: &PlanePoint) -> (f64, f64) {
        let x = MARGIN + (p.x - self.x0) as f64 * self.scale;
        let y = SIZE - MARGIN - (p.y - self.y0) as f64 * self.scale;
        (x, y)
    }
}

/// Renders `scene` with straight segments for `edges` (pairs of point ids).
pub fn render_svg(scene: &Scene, edges: &[(String, String)]) -> String {
    let f = Frame::of(scene);
    let mut out = String::new();
    writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#
    )
    .unwrap();

    let by_id = |id: &str| scene.points.iter().find(|p| p.id == id);
    for (a, b) in edges {
        if let (Some(p), Some(q)) = (by_id(a), by_id(b)) {
            let ((x1, y1), (x2, y2)) = (f.at(p), f.at(q));
            writeln!(out, r#"<line class="edge" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="1"/>"#).unwrap();
        }
    }
    for w in &scene.pos_witnesses {
        let (x, y) = f.at(w);
        let d = MARK * std::f64::consts::FRAC_1_SQRT_2;
        writeln!(out, r#"<g class="witness-pos"><circle cx="{x:.2}" cy="{y:.2}" r="{MARK}" fill="white" stroke="black"/>"#).unwrap();
        writeln!(
            out,
            r#"<path d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}" stroke="black"/></g>"#,
            x - d,
            y - d,
            x + d,
            y + d,
            x - d,
            y + d,
            x + d,
            y - d
        )
        .unwrap();
    }
    for w in &scene.neg_witnesses {
        let (x, y) = f.at(w);
        writeln!(out, r#"<g class="witness-neg"><circle cx="{x:.2}" cy="{y:.2}" r="{MARK}" fill="white" stroke="black"/>"#).unwrap();
        writeln!(
            out,
            r#"<path d="M{:.2} {y:.2}L{:.2} {y:.2}" stroke="black"/></g>"#,
            x - MARK,
            x + MARK
        )
        .unwrap();
    }
    for p in &scene.points {
        let (x, y) = f.at(p);
        writeln!(out, r#"<circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="4" fill="black"><title>{}</title></circle>"#, escape(&p.id)).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

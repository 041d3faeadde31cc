//! Deterministic SVG rendering of scenes.

use std::fmt::Write as _;

use crate::balls;
use crate::error::Result;
use crate::geometry::{ray_boundary_intersection, ConvexPolygon, Point};
use crate::scene::Scene;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    pub width: u32,
    pub height: u32,
    pub show_spokes: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { width: 800, height: 800, show_spokes: false }
    }
}

const FILL_OPACITY: &str = "0.25";
const MARGIN: f64 = 0.05;

/// World-to-pixel map: domain bounding box plus a 5% margin, uniform scale,
/// centered, y pointing up.
struct View {
    lo: Point,
    hi: Point,
    scale: f64,
    offset: Point,
}

impl View {
    fn new(domain: &ConvexPolygon, opts: &SvgOptions) -> Self {
        let (lo, hi) = domain.bounding_box();
        let pad = (hi - lo) * MARGIN;
        let (lo, hi) = (lo - pad, hi + pad);
        let (w, h) = (f64::from(opts.width), f64::from(opts.height));
        let scale = (w / (hi.x - lo.x)).min(h / (hi.y - lo.y));
        let offset = Point::new(0.5 * (w - scale * (hi.x - lo.x)), 0.5 * (h - scale * (hi.y - lo.y)));
        View { lo, hi, scale, offset }
    }

    fn px(&self, p: Point) -> (f64, f64) {
        (self.offset.x + self.scale * (p.x - self.lo.x), self.offset.y + self.scale * (self.hi.y - p.y))
    }

    fn points(&self, poly: &ConvexPolygon) -> String {
        poly.vertices()
            .iter()
            .map(|&v| {
                let (x, y) = self.px(v);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn render_svg(scene: &Scene, opts: &SvgOptions) -> Result<String> {
    let view = View::new(&scene.domain, opts);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = opts.width,
        h = opts.height
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");

    if opts.show_spokes {
        let _ = writeln!(out, "<g class=\"spokes\" stroke=\"#999999\" stroke-width=\"0.5\">");
        for b in &scene.balls {
            // One chord per domain vertex, from the vertex through the center.
            for &v in scene.domain.vertices() {
                let (z, _) = ray_boundary_intersection(&scene.domain, b.center, b.center - v)?;
                let ((x1, y1), (x2, y2)) = (view.px(v), view.px(z));
                let _ = writeln!(out, "<line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\"/>");
            }
        }
        let _ = writeln!(out, "</g>");
    }

    for b in &scene.balls {
        let shape = balls::ball(b.kind, &scene.domain, b.center, b.radius)?.shape;
        let _ = writeln!(
            out,
            "<polygon class=\"ball {kind}\" points=\"{pts}\" fill=\"{c}\" fill-opacity=\"{FILL_OPACITY}\" stroke=\"{c}\" stroke-width=\"1\"/>",
            kind = b.kind,
            pts = view.points(&shape),
            c = b.color,
        );
    }

    let _ = writeln!(
        out,
        "<polygon class=\"domain\" points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>",
        view.points(&scene.domain)
    );
    for b in &scene.balls {
        let (x, y) = view.px(b.center);
        let _ = writeln!(out, "<circle class=\"center\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"{}\"/>", b.color);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

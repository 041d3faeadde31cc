//! Test-only oracles and generators, kept independent of the library's own
//! algorithms.

#![allow(dead_code)]

use funkgeo::geometry::{ConvexPolygon, Point};
use funkgeo::sample::{random_convex_polygon, random_interior_point};
use rand::Rng;

/// Random domain with 3..=12 vertices, interior center, radius in (0.05, 3).
pub fn random_case<R: Rng>(rng: &mut R) -> (ConvexPolygon, Point, f64) {
    let m = rng.random_range(3..=12);
    let domain = random_convex_polygon(rng, m);
    let p = random_interior_point(rng, &domain, 1e-3);
    let r = rng.random_range(0.05..3.0);
    (domain, p, r)
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Sutherland–Hodgman: clip `subject` by every edge of the convex `clip`.
/// O(nm), no tolerances, returns the raw vertex list (may contain repeats).
pub fn sutherland_hodgman(subject: &[Point], clip: &[Point]) -> Vec<Point> {
    let mut output = subject.to_vec();
    for i in 0..clip.len() {
        let (a, b) = (clip[i], clip[(i + 1) % clip.len()]);
        let input = std::mem::take(&mut output);
        if input.is_empty() {
            break;
        }
        for j in 0..input.len() {
            let cur = input[j];
            let prev = input[(j + input.len() - 1) % input.len()];
            let (dc, dp) = (cross(a, b, cur), cross(a, b, prev));
            if dc >= 0.0 {
                if dp < 0.0 {
                    let t = dp / (dp - dc);
                    output.push(Point::new(prev.x + t * (cur.x - prev.x), prev.y + t * (cur.y - prev.y)));
                }
                output.push(cur);
            } else if dp >= 0.0 {
                let t = dp / (dp - dc);
                output.push(Point::new(prev.x + t * (cur.x - prev.x), prev.y + t * (cur.y - prev.y)));
            }
        }
    }
    output
}

pub fn shoelace(points: &[Point]) -> f64 {
    let n = points.len();
    0.5 * (0..n).map(|i| cross(Point::new(0.0, 0.0), points[i], points[(i + 1) % n])).sum::<f64>()
}

/// Drops repeated and collinear vertices from a convex vertex loop.
pub fn strip_redundant(points: &[Point], tol: f64) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::new();
    for &p in points {
        if pts.last().is_none_or(|q: &Point| q.distance(p) > tol) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && pts[0].distance(pts[pts.len() - 1]) <= tol {
        pts.pop();
    }
    let mut changed = true;
    while changed && pts.len() >= 3 {
        changed = false;
        let n = pts.len();
        for i in 0..n {
            let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
            let height = cross(a, b, c).abs() / a.distance(c).max(f64::MIN_POSITIVE);
            if height <= tol {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    pts
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[Point], b: &[Point]) -> f64 {
    let one_way = |x: &[Point], y: &[Point]| {
        x.iter().map(|p| y.iter().map(|q| p.distance(*q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Brute-force Hilbert distance: the chord is found by intersecting the line
/// through `p` and `q` with every edge line and keeping the two nearest hits
/// on either side, then the cross ratio is evaluated directly.
pub fn hilbert_cross_ratio(domain: &ConvexPolygon, p: Point, q: Point) -> f64 {
    let d = Point::new(q.x - p.x, q.y - p.y);
    let (mut t_plus, mut t_minus) = (f64::INFINITY, f64::NEG_INFINITY);
    for (a, b) in domain.edges() {
        let e = Point::new(b.x - a.x, b.y - a.y);
        let denom = d.cross(e);
        if denom == 0.0 {
            continue;
        }
        let w = Point::new(a.x - p.x, a.y - p.y);
        let t = w.cross(e) / denom;
        let s = w.cross(d) / denom;
        if (-1e-12..=1.0 + 1e-12).contains(&s) {
            if t > 0.0 {
                t_plus = t_plus.min(t);
            } else {
                t_minus = t_minus.max(t);
            }
        }
    }
    // Parameters along p + t·(q - p): p at 0, q at 1, x2 at t_plus, x1 at t_minus.
    let ratio = ((t_plus - 0.0) * (1.0 - t_minus)) / ((t_plus - 1.0) * (0.0 - t_minus));
    0.5 * ratio.ln()
}

//! Random convex polygons and interior points for property checks,
//! benchmarks and the witness search.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::geometry::{validate_polygon, ConvexPolygon, Point};

fn valtr_components<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Vec<f64> {
    let mut xs: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
    xs.sort_by(f64::total_cmp);
    let (min, max) = (xs[0], xs[m - 1]);
    let mut out = Vec::with_capacity(m);
    let (mut top, mut bottom) = (min, min);
    for &x in &xs[1..m - 1] {
        if rng.random::<bool>() {
            out.push(x - top);
            top = x;
        } else {
            out.push(bottom - x);
            bottom = x;
        }
    }
    out.push(max - top);
    out.push(bottom - max);
    out
}

/// Random convex polygon with exactly `m ≥ 3` vertices (Valtr's method),
/// scaled so its bounding box fits the unit square with the longer side 1.
/// Area is at least 0.01, so the inradius is at least 0.005.
pub fn random_convex_polygon<R: Rng + ?Sized>(rng: &mut R, m: usize) -> ConvexPolygon {
    assert!(m >= 3, "a polygon needs at least 3 vertices");
    loop {
        let xs = valtr_components(rng, m);
        let mut ys = valtr_components(rng, m);
        ys.shuffle(rng);
        let mut edges: Vec<Point> = xs.into_iter().zip(ys).map(Point::from).collect();
        edges.sort_by(|a, b| a.y.atan2(a.x).total_cmp(&b.y.atan2(b.x)));

        let mut cursor = Point::ORIGIN;
        let mut pts = Vec::with_capacity(m);
        for e in edges {
            pts.push(cursor);
            cursor = cursor + e;
        }
        let (mut lo, mut hi) = (pts[0], pts[0]);
        for p in &pts {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let scale = 1.0 / (hi.x - lo.x).max(hi.y - lo.y);
        let pts: Vec<Point> = pts.into_iter().map(|p| (p - lo) * scale).collect();
        if let Ok(poly) = validate_polygon(&pts) {
            // Nearly collinear triples get merged; draw again.
            if poly.len() == m && poly.area() >= 0.01 {
                return poly;
            }
        }
    }
}

/// Uniform point at least `margin · diameter` inside the boundary. Loops
/// forever unless that depth is below the inradius.
pub fn random_interior_point<R: Rng + ?Sized>(rng: &mut R, poly: &ConvexPolygon, margin: f64) -> Point {
    let (lo, hi) = poly.bounding_box();
    let min_depth = margin * poly.diameter();
    loop {
        let p = Point::new(rng.random_range(lo.x..=hi.x), rng.random_range(lo.y..=hi.y));
        if poly.signed_depth(p) > min_depth {
            return p;
        }
    }
}

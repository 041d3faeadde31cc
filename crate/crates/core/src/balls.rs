//! Exact polygonal metric balls.
//!
//! The Funk ball is the domain scaled about the center by `1 - e^{-r}`. The
//! reverse Funk ball is the domain reflected through the center, scaled by
//! `e^r - 1`, and clipped to the domain. The Thompson ball is the
//! intersection of the two. The Hilbert ball is piecewise linear with its
//! vertices on the spokes: the lines through the center and each domain
//! vertex.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::{
    contains_point, convex_intersection, homothety, orientation, point_reflection, ray_boundary_intersection,
    validate_polygon, ConvexPolygon, Location, Point,
};
use crate::metrics::MetricKind;

/// Spoke directions closer than this (radians) are merged.
pub const SPOKE_ANGLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub kind: MetricKind,
    pub center: Point,
    pub radius: f64,
    pub shape: ConvexPolygon,
}

fn check_args(domain: &ConvexPolygon, p: Point, r: f64) -> Result<()> {
    if contains_point(domain, p) != Location::Interior {
        return Err(Error::PointNotInterior { x: p.x, y: p.y });
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::NonPositiveRadius(r));
    }
    Ok(())
}

pub fn funk_ball(domain: &ConvexPolygon, p: Point, r: f64) -> Result<Ball> {
    check_args(domain, p, r)?;
    let shape = homothety(domain, p, -(-r).exp_m1())?;
    Ok(Ball { kind: MetricKind::Funk, center: p, radius: r, shape })
}

pub fn reverse_funk_ball(domain: &ConvexPolygon, p: Point, r: f64) -> Result<Ball> {
    check_args(domain, p, r)?;
    let flipped = homothety(&point_reflection(domain, p), p, r.exp_m1())?;
    let shape = convex_intersection(&flipped, domain).ok_or(Error::Degenerate)?;
    Ok(Ball { kind: MetricKind::ReverseFunk, center: p, radius: r, shape })
}

pub fn thompson_ball(domain: &ConvexPolygon, p: Point, r: f64) -> Result<Ball> {
    let forward = funk_ball(domain, p, r)?;
    let reverse = reverse_funk_ball(domain, p, r)?;
    let shape = convex_intersection(&forward.shape, &reverse.shape).ok_or(Error::Degenerate)?;
    Ok(Ball { kind: MetricKind::Thompson, center: p, radius: r, shape })
}

/// The point `q` on the ray from `p` along `dir` with `H(p, q) = r`.
///
/// With `a = |p - x1|` (behind) and `b = |p - x2|` (ahead), solving
/// `ln(1 / (1 - s)) + ln(1 + s·b/a) = 2r` for `q = p + s·(x2 - p)` gives
/// `s = a(e^{2r} - 1) / (a·e^{2r} + b)`.
pub fn hilbert_point_at(domain: &ConvexPolygon, p: Point, dir: Point, r: f64) -> Result<Point> {
    if contains_point(domain, p) != Location::Interior {
        return Err(Error::PointNotInterior { x: p.x, y: p.y });
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::NonPositiveRadius(r));
    }
    let (ahead, _) = ray_boundary_intersection(domain, p, dir)?;
    let (behind, _) = ray_boundary_intersection(domain, p, -dir)?;
    let a = p.distance(behind);
    let b = p.distance(ahead);
    let s = a * (2.0 * r).exp_m1() / (a * (2.0 * r).exp() + b);
    Ok(p.lerp(ahead, s))
}

/// Spoke directions from `p`, sorted by angle with near-duplicates merged.
pub fn spoke_directions(domain: &ConvexPolygon, p: Point) -> Vec<Point> {
    let mut dirs: Vec<(f64, Point)> =
        domain.vertices().iter().flat_map(|&v| [v - p, p - v]).map(|d| (d.y.atan2(d.x), d)).collect();
    dirs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, Point)> = Vec::with_capacity(dirs.len());
    for d in dirs {
        if out.last().is_none_or(|last| d.0 - last.0 > SPOKE_ANGLE_TOL) {
            out.push(d);
        }
    }
    if out.len() > 1 && out[0].0 + TAU - out[out.len() - 1].0 <= SPOKE_ANGLE_TOL {
        out.pop();
    }
    out.into_iter().map(|d| d.1).collect()
}

pub fn hilbert_ball(domain: &ConvexPolygon, p: Point, r: f64) -> Result<Ball> {
    check_args(domain, p, r)?;
    let points = spoke_directions(domain, p)
        .into_iter()
        .map(|dir| hilbert_point_at(domain, p, dir, r))
        .collect::<Result<Vec<_>>>()?;
    let shape = validate_polygon(&points)?;
    Ok(Ball { kind: MetricKind::Hilbert, center: p, radius: r, shape })
}

pub fn ball(kind: MetricKind, domain: &ConvexPolygon, p: Point, r: f64) -> Result<Ball> {
    match kind {
        MetricKind::Funk => funk_ball(domain, p, r),
        MetricKind::ReverseFunk => reverse_funk_ball(domain, p, r),
        MetricKind::Hilbert => hilbert_ball(domain, p, r),
        MetricKind::Thompson => thompson_ball(domain, p, r),
    }
}

/// Number of proper crossings between the two boundaries. Touching
/// contacts, and crossings exactly through a vertex, are not counted.
pub fn boundary_crossings(a: &ConvexPolygon, b: &ConvexPolygon) -> usize {
    let mut count = 0;
    for (a1, a2) in a.edges() {
        for (b1, b2) in b.edges() {
            let straddles_a = orientation(a1, a2, b1) * orientation(a1, a2, b2) < 0;
            let straddles_b = orientation(b1, b2, a1) * orientation(b1, b2, a2) < 0;
            if straddles_a && straddles_b {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn square(x0: f64, y0: f64, s: f64) -> ConvexPolygon {
        validate_polygon(&[pt(x0, y0), pt(x0 + s, y0), pt(x0 + s, y0 + s), pt(x0, y0 + s)]).unwrap()
    }

    fn assert_same_vertices(a: &ConvexPolygon, b: &ConvexPolygon, tol: f64) {
        assert_eq!(a.len(), b.len(), "{a:?} vs {b:?}");
        for v in b.vertices() {
            assert!(a.vertices().iter().any(|w| w.distance(*v) <= tol), "missing {v} in {a:?}");
        }
    }

    const C: Point = Point::new(0.5, 0.5);

    #[test]
    fn centered_square_balls() {
        let sq = square(0.0, 0.0, 1.0);
        let quarter = square(0.25, 0.25, 0.5);
        assert_same_vertices(&funk_ball(&sq, C, 2f64.ln()).unwrap().shape, &quarter, 1e-15);
        assert_same_vertices(&reverse_funk_ball(&sq, C, 1.5f64.ln()).unwrap().shape, &quarter, 1e-15);
        assert_same_vertices(&reverse_funk_ball(&sq, C, 2f64.ln()).unwrap().shape, &sq, 1e-15);
        assert_same_vertices(&thompson_ball(&sq, C, 2f64.ln()).unwrap().shape, &quarter, 1e-15);
        assert_same_vertices(&hilbert_ball(&sq, C, 0.5 * 3f64.ln()).unwrap().shape, &quarter, 1e-12);
    }

    #[test]
    fn tiny_funk_ball_is_tiny() {
        let sq = square(0.0, 0.0, 1.0);
        let b = funk_ball(&sq, C, 1e-9).unwrap();
        assert!(b.shape.diameter() < 2e-9);
        assert_eq!(contains_point(&b.shape, C), Location::Interior);
    }

    #[test]
    fn reverse_ball_is_reflected() {
        // In a triangle, the reverse ball extends towards the far side.
        let t = validate_polygon(&[pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0)]).unwrap();
        let p = pt(0.25, 0.25);
        let r = 1.1f64.ln();
        let b = reverse_funk_ball(&t, p, r).unwrap();
        for s in b.shape.sample_boundary(64) {
            let d = metrics::reverse_funk(&t, p, s).unwrap();
            assert!((d - r).abs() < 1e-9, "{s}: {d}");
        }
    }

    #[test]
    fn off_center_thompson_is_a_proper_intersection() {
        let sq = square(0.0, 0.0, 1.0);
        let p = pt(0.2, 0.5);
        let f = funk_ball(&sq, p, 0.4).unwrap().shape;
        let rf = reverse_funk_ball(&sq, p, 0.4).unwrap().shape;
        let t = thompson_ball(&sq, p, 0.4).unwrap().shape;
        assert!(t.area() < f.area() - 1e-6 && t.area() < rf.area() - 1e-6);
        // Both balls of a square are axis-aligned rectangles.
        assert_eq!(t.len(), 4);
        for s in t.sample_boundary(64) {
            assert!((metrics::thompson(&sq, p, s).unwrap() - 0.4).abs() < 1e-9);
        }
    }

    #[test]
    fn hilbert_point_inverts_distance() {
        let sq = square(0.0, 0.0, 1.0);
        let q = hilbert_point_at(&sq, C, pt(1.0, 0.0), 0.5 * 3f64.ln()).unwrap();
        assert!(q.distance(pt(0.75, 0.5)) < 1e-15);
        let q = hilbert_point_at(&sq, C, pt(1.0, 0.0), 1e-12).unwrap();
        assert!(q.distance(C) < 1e-11);
        assert_eq!(hilbert_point_at(&sq, C, pt(0.0, 0.0), 1.0), Err(Error::ZeroDirection));
    }

    #[test]
    fn spokes_merge_collinear_vertices() {
        // From the center of a square, opposite corners share a spoke.
        let sq = square(0.0, 0.0, 1.0);
        assert_eq!(spoke_directions(&sq, C).len(), 4);
        assert_eq!(spoke_directions(&sq, pt(0.3, 0.6)).len(), 8);
    }

    #[test]
    fn ball_errors() {
        let sq = square(0.0, 0.0, 1.0);
        for kind in MetricKind::ALL {
            assert_eq!(ball(kind, &sq, C, 0.0), Err(Error::NonPositiveRadius(0.0)));
            assert!(matches!(ball(kind, &sq, pt(1.0, 0.2), 0.3), Err(Error::PointNotInterior { .. })));
        }
    }

    #[test]
    fn crossing_counts() {
        let sq = square(0.0, 0.0, 1.0);
        assert_eq!(boundary_crossings(&sq, &square(2.0, 2.0, 1.0)), 0);
        assert_eq!(boundary_crossings(&sq, &square(0.5, 0.5, 1.0)), 2);
        assert_eq!(boundary_crossings(&sq, &square(0.25, 0.25, 0.5)), 0);
        let flat = validate_polygon(&[pt(-0.5, 0.4), pt(1.5, 0.4), pt(1.5, 0.6), pt(-0.5, 0.6)]).unwrap();
        assert_eq!(boundary_crossings(&sq, &flat), 4);
    }
}

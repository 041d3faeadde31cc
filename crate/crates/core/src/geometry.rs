//! Planar primitives: points, orientation, canonical convex polygons, ray
//! casting, homothety and linear-time convex polygon intersection.
//!
//! All predicates share one relative tolerance, [`EPS_GEOM`]. Orientation
//! scales it by the squared coordinate magnitude of its inputs; containment
//! and coincidence scale it by the polygon diameter.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const EPS_GEOM: f64 = 1e-9;

/// Two directions whose normalized cross product is below this are parallel.
const PARALLEL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }

    fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

// Points travel as `[x, y]` in every JSON document.
impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[f64; 2]>::deserialize(d)?;
        Ok(Point::new(x, y))
    }
}

/// Sign of the turn a → b → c: `1` for counterclockwise, `-1` for clockwise,
/// `0` when the cross product is within `EPS_GEOM · scale²`, where `scale`
/// is the largest coordinate magnitude among the inputs.
pub fn orientation(a: Point, b: Point, c: Point) -> i8 {
    let cross = (b - a).cross(c - a);
    let scale = a.max_abs().max(b.max_abs()).max(c.max_abs());
    let tol = EPS_GEOM * scale * scale;
    if cross > tol {
        1
    } else if cross < -tol {
        -1
    } else {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// A strictly convex polygon with counterclockwise vertices.
///
/// The only ways to obtain one are [`validate_polygon`] and operations that
/// provably preserve convexity, so every value upholds the invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    diameter: f64,
}

// Polygons travel as their vertex list and are re-validated on the way in.
impl Serialize for ConvexPolygon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexPolygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Point>::deserialize(d)?;
        validate_polygon(&raw).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chord {
    pub backward: Point,
    pub forward: Point,
    pub backward_edge: usize,
    pub forward_edge: usize,
}

fn max_pairwise_distance(points: &[Point]) -> f64 {
    let mut best = 0.0f64;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.max(a.distance(*b));
        }
    }
    best
}

fn bbox_diagonal(points: &[Point]) -> f64 {
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    hi.distance(lo)
}

fn twice_signed_area(points: &[Point]) -> f64 {
    let n = points.len();
    (0..n).map(|i| points[i].cross(points[(i + 1) % n])).sum()
}

/// Canonicalizes a raw vertex list into a [`ConvexPolygon`].
///
/// Clockwise input is reversed (keeping the first vertex first), repeated
/// vertices and collinear interior vertices are dropped. `NotConvex` reports
/// the index of the offending vertex in `raw`.
pub fn validate_polygon(raw: &[Point]) -> Result<ConvexPolygon> {
    if raw.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    if raw.len() < 3 {
        return Err(Error::Degenerate);
    }
    let tol = EPS_GEOM * bbox_diagonal(raw);

    let mut verts: Vec<(usize, Point)> = Vec::with_capacity(raw.len());
    for (i, &p) in raw.iter().enumerate() {
        if verts.last().is_none_or(|&(_, q)| q.distance(p) > tol) {
            verts.push((i, p));
        }
    }
    while verts.len() > 1 && verts[0].1.distance(verts[verts.len() - 1].1) <= tol {
        verts.pop();
    }
    if verts.len() < 3 {
        return Err(Error::Degenerate);
    }

    let pts: Vec<Point> = verts.iter().map(|v| v.1).collect();
    let area2 = twice_signed_area(&pts);
    let diag = bbox_diagonal(&pts);
    if area2.abs() <= EPS_GEOM * diag * diag {
        // Zero area: either every vertex is on one line, or the outline
        // crosses itself and the lobes cancel.
        let n = verts.len();
        let reflex = (0..n).find(|&i| orientation(verts[(i + n - 1) % n].1, verts[i].1, verts[(i + 1) % n].1) != 0);
        return Err(match reflex {
            Some(i) => Error::NotConvex { vertex: verts[i].0 },
            None => Error::Degenerate,
        });
    }
    if area2 < 0.0 {
        verts[1..].reverse();
    }

    // Drop vertices within `tol` of the line through their neighbours until
    // a full pass removes nothing. Height, not the raw cross product, so that
    // short edges keep genuine corners.
    loop {
        let n = verts.len();
        if n < 3 {
            return Err(Error::Degenerate);
        }
        let mut removed = None;
        for i in 0..n {
            let prev = verts[(i + n - 1) % n].1;
            let (idx, cur) = verts[i];
            let next = verts[(i + 1) % n].1;
            let cross = (cur - prev).cross(next - cur);
            let height = cross.abs() / prev.distance(next).max(f64::MIN_POSITIVE);
            if height <= tol {
                if (cur - prev).dot(next - cur) < 0.0 {
                    // A spike that doubles back on itself.
                    return Err(Error::NotConvex { vertex: idx });
                }
                removed = Some(i);
                break;
            }
            if cross < 0.0 {
                return Err(Error::NotConvex { vertex: idx });
            }
        }
        match removed {
            Some(i) => {
                verts.remove(i);
            }
            None => break,
        }
    }

    let n = verts.len();
    let mut turning = 0.0;
    for i in 0..n {
        let prev = verts[(i + n - 1) % n].1;
        let cur = verts[i].1;
        let next = verts[(i + 1) % n].1;
        let (u, v) = (cur - prev, next - cur);
        turning += u.cross(v).atan2(u.dot(v));
    }
    // Locally convex but winding more than once (a star).
    if turning > 2.0 * PI + 1e-6 {
        return Err(Error::NotConvex { vertex: verts[0].0 });
    }

    let vertices: Vec<Point> = verts.into_iter().map(|v| v.1).collect();
    Ok(ConvexPolygon::from_canonical(vertices))
}

impl ConvexPolygon {
    /// Wraps vertices already known to be strictly convex and CCW.
    pub(crate) fn from_canonical(vertices: Vec<Point>) -> Self {
        let diameter = max_pairwise_distance(&vertices);
        ConvexPolygon { vertices, diameter }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn area(&self) -> f64 {
        0.5 * twice_signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.distance(b)).sum()
    }

    /// `(min, max)` corners of the axis-aligned bounding box.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for p in &self.vertices {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    /// Smallest signed distance from `p` to an edge line; positive inside.
    pub fn signed_depth(&self, p: Point) -> f64 {
        self.edges().map(|(a, b)| (b - a).cross(p - a) / a.distance(b)).fold(f64::INFINITY, f64::min)
    }

    pub fn contains_point(&self, p: Point) -> Location {
        contains_point(self, p)
    }

    /// `n` points evenly spaced by arc length, starting at vertex 0.
    pub fn sample_boundary(&self, n: usize) -> Vec<Point> {
        let perimeter = self.perimeter();
        let mut out = Vec::with_capacity(n);
        let mut edge = 0;
        let mut walked = 0.0;
        for k in 0..n {
            let target = perimeter * k as f64 / n as f64;
            loop {
                let (a, b) = self.edge(edge);
                let len = a.distance(b);
                if target <= walked + len || edge + 1 == self.len() {
                    let t = ((target - walked) / len).clamp(0.0, 1.0);
                    out.push(a.lerp(b, t));
                    break;
                }
                walked += len;
                edge += 1;
            }
        }
        out
    }

    /// Midpoint of every edge.
    pub fn edge_midpoints(&self) -> Vec<Point> {
        self.edges().map(|(a, b)| a.lerp(b, 0.5)).collect()
    }

    /// Image under any orientation-preserving affine map `x ↦ M x + t`.
    pub(crate) fn map_affine(&self, f: impl Fn(Point) -> Point) -> Result<ConvexPolygon> {
        let mapped: Vec<Point> = self.vertices.iter().map(|&v| f(v)).collect();
        validate_polygon(&mapped)
    }
}

pub fn contains_point(poly: &ConvexPolygon, p: Point) -> Location {
    let tol = EPS_GEOM * poly.diameter;
    let depth = poly.signed_depth(p);
    if depth < -tol {
        Location::Exterior
    } else if depth <= tol {
        Location::Boundary
    } else {
        Location::Interior
    }
}

/// Area centroid by the shoelace-weighted formula.
pub fn centroid(poly: &ConvexPolygon) -> Point {
    // Shift to the first vertex to keep the cross products well conditioned.
    let o = poly.vertices[0];
    let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
    for (a, b) in poly.edges() {
        let (a, b) = (a - o, b - o);
        let w = a.cross(b);
        a2 += w;
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    o + Point::new(cx / (3.0 * a2), cy / (3.0 * a2))
}

/// Exit point of the ray `origin + t·dir` (t > 0) on the boundary, with the
/// index of the edge hit. A ray leaving through vertex `i` reports edge `i`.
pub fn ray_boundary_intersection(poly: &ConvexPolygon, origin: Point, dir: Point) -> Result<(Point, usize)> {
    if !dir.is_finite() || dir.norm() == 0.0 {
        return Err(Error::ZeroDirection);
    }
    if contains_point(poly, origin) != Location::Interior {
        return Err(Error::OriginNotInterior { x: origin.x, y: origin.y });
    }
    let mut best_t = f64::INFINITY;
    let mut best = 0;
    for (i, (a, b)) in poly.edges().enumerate() {
        let e = b - a;
        let approach = e.cross(dir);
        if approach < 0.0 {
            let t = e.cross(origin - a) / -approach;
            if t < best_t {
                best_t = t;
                best = i;
            }
        }
    }
    let hit = origin + dir * best_t;
    let tol = EPS_GEOM * poly.diameter;
    let m = poly.len();
    let edge = if hit.distance(poly.vertex(best + 1)) <= tol { (best + 1) % m } else { best };
    Ok((hit, edge))
}

/// Both boundary points of the line through `p` and `q`: `forward` is hit
/// by the ray from `p` towards `q`, `backward` by the ray from `p` away
/// from `q`.
pub fn chord_through(poly: &ConvexPolygon, p: Point, q: Point) -> Result<Chord> {
    for x in [p, q] {
        if contains_point(poly, x) != Location::Interior {
            return Err(Error::OriginNotInterior { x: x.x, y: x.y });
        }
    }
    if p.distance(q) <= EPS_GEOM * poly.diameter {
        return Err(Error::CoincidentPoints);
    }
    let (forward, forward_edge) = ray_boundary_intersection(poly, p, q - p)?;
    let (backward, backward_edge) = ray_boundary_intersection(poly, p, p - q)?;
    Ok(Chord { backward, forward, backward_edge, forward_edge })
}

/// Scales `poly` about `center` by `k > 0`.
pub fn homothety(poly: &ConvexPolygon, center: Point, k: f64) -> Result<ConvexPolygon> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::NonPositiveFactor(k));
    }
    let vertices = poly.vertices.iter().map(|&v| center + (v - center) * k).collect();
    Ok(ConvexPolygon { vertices, diameter: poly.diameter * k })
}

/// Reflection through `center` (rotation by π), which keeps CCW order.
pub fn point_reflection(poly: &ConvexPolygon, center: Point) -> ConvexPolygon {
    let vertices = poly.vertices.iter().map(|&v| center * 2.0 - v).collect();
    ConvexPolygon { vertices, diameter: poly.diameter }
}

#[derive(Debug, Clone, Copy)]
struct HalfPlane {
    origin: Point,
    dir: Point,
    angle: f64,
    tol: f64,
}

impl HalfPlane {
    fn new(a: Point, b: Point, tol: f64) -> Self {
        let dir = b - a;
        HalfPlane { origin: a, dir, angle: dir.y.atan2(dir.x), tol }
    }

    /// Strictly right of the boundary line, beyond tolerance.
    fn excludes(&self, x: Point) -> bool {
        self.dir.cross(x - self.origin) < -self.tol * self.dir.norm()
    }

    fn meet(&self, other: &HalfPlane) -> Point {
        let alpha = (other.origin - self.origin).cross(other.dir) / self.dir.cross(other.dir);
        self.origin + self.dir * alpha
    }

    fn parallel_to(&self, other: &HalfPlane) -> bool {
        self.dir.cross(other.dir).abs() <= PARALLEL_TOL * self.dir.norm() * other.dir.norm()
    }
}

/// Edge half-planes of `poly`, rotated so the angles ascend in (-π, π].
fn sorted_half_planes(poly: &ConvexPolygon, tol: f64) -> Vec<HalfPlane> {
    let mut planes: Vec<HalfPlane> = poly.edges().map(|(a, b)| HalfPlane::new(a, b, tol)).collect();
    let start = planes.iter().enumerate().min_by(|a, b| a.1.angle.total_cmp(&b.1.angle)).map_or(0, |(i, _)| i);
    planes.rotate_left(start);
    if !planes.windows(2).all(|w| w[0].angle <= w[1].angle) {
        planes.sort_by(|a, b| a.angle.total_cmp(&b.angle));
    }
    planes
}

fn merge_by_angle(a: Vec<HalfPlane>, b: Vec<HalfPlane>) -> Vec<HalfPlane> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].angle.total_cmp(&b[j].angle) != Ordering::Greater {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Intersection of two convex polygons, `None` when their interiors are
/// disjoint.
///
/// Runs in O(|P| + |Q|): each polygon's edges are already sorted by angle,
/// so the two lists are merged and fed to a deque-based half-plane sweep.
pub fn convex_intersection(p: &ConvexPolygon, q: &ConvexPolygon) -> Option<ConvexPolygon> {
    let tol = EPS_GEOM * p.diameter.max(q.diameter);
    let planes = merge_by_angle(sorted_half_planes(p, tol), sorted_half_planes(q, tol));

    let mut dq: VecDeque<HalfPlane> = VecDeque::with_capacity(planes.len());
    for h in planes {
        while dq.len() >= 2 && h.excludes(dq[dq.len() - 1].meet(&dq[dq.len() - 2])) {
            dq.pop_back();
        }
        while dq.len() >= 2 && h.excludes(dq[0].meet(&dq[1])) {
            dq.pop_front();
        }
        if let Some(back) = dq.back() {
            if h.parallel_to(back) {
                if h.dir.dot(back.dir) < 0.0 {
                    return None;
                }
                if h.excludes(back.origin) {
                    dq.pop_back();
                } else {
                    continue;
                }
            }
        }
        dq.push_back(h);
    }
    while dq.len() > 2 && dq[0].excludes(dq[dq.len() - 1].meet(&dq[dq.len() - 2])) {
        dq.pop_back();
    }
    while dq.len() > 2 && dq[dq.len() - 1].excludes(dq[0].meet(&dq[1])) {
        dq.pop_front();
    }
    if dq.len() < 3 {
        return None;
    }
    let n = dq.len();
    let vertices: Vec<Point> = (0..n).map(|i| dq[i].meet(&dq[(i + 1) % n])).collect();
    validate_polygon(&vertices).ok()
}

//! Moving through the Hilbert geometry.
//!
//! A move by `dv` applies the projective map `p ↦ p / (1 + ⟨p, dv⟩)`, which
//! sends lines to lines and keeps cross-ratios, so Hilbert distances are
//! unchanged. The image is then pulled back into shape by the affine map that
//! sends its approximate John ellipse onto the reference ellipse of the
//! starting domain.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{centroid, contains_point, validate_polygon, ConvexPolygon, Location, Point};
use crate::metrics;

pub const MVEE_EPS: f64 = 1e-6;
pub const MVEE_MAX_ITER: usize = 10_000;
/// Smallest accepted projective denominator at any domain vertex.
pub const STEP_DENOMINATOR_MIN: f64 = 1e-3;

/// Symmetric 2×2 matrix, row major.
pub type Mat2 = [[f64; 2]; 2];

/// `{x : (x - center)ᵀ matrix (x - center) ≤ 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ellipse {
    pub center: Point,
    pub matrix: Mat2,
}

impl Ellipse {
    /// Squared Mahalanobis distance of `x` from the center.
    pub fn quadratic_form(&self, x: Point) -> f64 {
        let d = x - self.center;
        let m = &self.matrix;
        m[0][0] * d.x * d.x + (m[0][1] + m[1][0]) * d.x * d.y + m[1][1] * d.y * d.y
    }

    /// Largest value of `⟨n, x⟩` over the ellipse.
    pub fn support(&self, n: Point) -> f64 {
        let inv = inverse2(&self.matrix);
        let quad = inv[0][0] * n.x * n.x + 2.0 * inv[0][1] * n.x * n.y + inv[1][1] * n.y * n.y;
        self.center.dot(n) + quad.max(0.0).sqrt()
    }

    /// Same center, every semi-axis multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Ellipse {
        let s = 1.0 / (k * k);
        let m = &self.matrix;
        Ellipse { center: self.center, matrix: [[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]] }
    }

    /// Ratio of the longer to the shorter semi-axis.
    pub fn aspect_ratio(&self) -> f64 {
        let m = &self.matrix;
        let tr = m[0][0] + m[1][1];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let disc = (0.25 * tr * tr - det).max(0.0).sqrt();
        let (lo, hi) = (0.5 * tr - disc, 0.5 * tr + disc);
        (hi / lo).sqrt()
    }
}

fn inverse2(m: &Mat2) -> Mat2 {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]]
}

fn mat_vec(m: &Mat2, p: Point) -> Point {
    Point::new(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y)
}

/// Lower-triangular `L` with `L Lᵀ = a`.
pub fn cholesky2(a: &Mat2) -> Result<Mat2> {
    let l00 = a[0][0].sqrt();
    if !(a[0][0] > 0.0) || !l00.is_finite() {
        return Err(Error::NotPositiveDefinite);
    }
    let l10 = a[1][0] / l00;
    let rest = a[1][1] - l10 * l10;
    if !(rest > 0.0) || !rest.is_finite() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok([[l00, 0.0], [l10, rest.sqrt()]])
}

fn affinely_independent(points: &[Point]) -> bool {
    let base = points[0];
    let Some(far) = points.iter().copied().max_by(|a, b| a.distance(base).total_cmp(&b.distance(base))) else {
        return false;
    };
    let axis = far - base;
    let len2 = axis.dot(axis);
    len2 > 0.0 && points.iter().any(|&p| axis.cross(p - base).abs() > 1e-12 * len2)
}

fn ellipse_from_weights(points: &[Point], u: &[f64]) -> Result<Ellipse> {
    let center = points.iter().zip(u).fold(Point::ORIGIN, |acc, (&p, &w)| acc + p * w);
    let mut cov = [[0.0; 2]; 2];
    for (&p, &w) in points.iter().zip(u) {
        let d = p - center;
        cov[0][0] += w * d.x * d.x;
        cov[0][1] += w * d.x * d.y;
        cov[1][1] += w * d.y * d.y;
    }
    cov[1][0] = cov[0][1];
    let det = cov[0][0] * cov[1][1] - cov[0][1] * cov[1][0];
    if !(det > 0.0) {
        return Err(Error::DegenerateInput);
    }
    let inv = inverse2(&cov);
    // Dimension 2: A = Σ⁻¹ / d.
    let mut ellipse =
        Ellipse { center, matrix: [[inv[0][0] / 2.0, inv[0][1] / 2.0], [inv[0][1] / 2.0, inv[1][1] / 2.0]] };
    // Grow just enough that every input point is enclosed.
    let worst = points.iter().map(|&p| ellipse.quadratic_form(p)).fold(0.0, f64::max);
    if worst > 1.0 {
        ellipse = ellipse.scaled(worst.sqrt());
    }
    Ok(ellipse)
}

/// Gap below which further polishing is pointless in double precision.
const POLISH_FLOOR: f64 = 1e-14;

fn moment(lifted: &[Vector3<f64>], u: &[f64]) -> Matrix3<f64> {
    lifted.iter().zip(u).fold(Matrix3::zeros(), |acc, (q, &w)| acc + q * q.transpose() * w)
}

fn log_det(lifted: &[Vector3<f64>], u: &[f64]) -> f64 {
    let det = moment(lifted, u).determinant();
    if det > 0.0 {
        det.ln()
    } else {
        f64::NEG_INFINITY
    }
}

/// One damped Newton step for `max log det X(u)` over the weights already in
/// the support, keeping `Σu = 1` and `u ≥ 0`. Returns `u` unchanged when no
/// improving step is found.
fn newton_on_support(lifted: &[Vector3<f64>], u: &mut [f64], x_inv: &Matrix3<f64>) {
    let support: Vec<usize> = (0..u.len()).filter(|&i| u[i] > 0.0).collect();
    let k = support.len();
    let mut kkt = DMatrix::zeros(k + 1, k + 1);
    let mut rhs = DVector::zeros(k + 1);
    for (a, &i) in support.iter().enumerate() {
        for (b, &j) in support.iter().enumerate() {
            let kij = (lifted[i].transpose() * x_inv * lifted[j])[0];
            kkt[(a, b)] = -kij * kij;
            if a == b {
                rhs[a] = -kij;
            }
        }
        kkt[(a, k)] = 1.0;
        kkt[(k, a)] = 1.0;
    }
    // The Hessian is singular once more than six points carry weight; a
    // small ridge keeps the step a continuous function of the points.
    let ridge = 1e-12 * (0..k).map(|a| -kkt[(a, a)]).fold(0.0, f64::max);
    for a in 0..k {
        kkt[(a, a)] -= ridge;
    }
    let Some(sol) = kkt.lu().solve(&rhs) else {
        return;
    };
    if sol.iter().any(|v| !v.is_finite()) {
        return;
    }

    // Longest step keeping every weight non-negative; the point that blocks
    // it leaves the support exactly rather than through rounding.
    let mut t: f64 = 1.0;
    let mut blocking = None;
    for (a, &i) in support.iter().enumerate() {
        if sol[a] < 0.0 && -u[i] / sol[a] < t {
            t = -u[i] / sol[a];
            blocking = Some(i);
        }
    }
    // Near the optimum the gain is below rounding noise in `log det`; a full
    // Newton step is still the right move there.
    let base = log_det(lifted, u);
    let floor = base - 1e-12 * base.abs().max(1.0);
    let mut trial = u.to_vec();
    for _ in 0..30 {
        for (a, &i) in support.iter().enumerate() {
            trial[i] = (u[i] + t * sol[a]).max(0.0);
        }
        if let Some(i) = blocking {
            trial[i] = 0.0;
        }
        let total: f64 = trial.iter().sum();
        trial.iter_mut().for_each(|w| *w /= total);
        if log_det(lifted, &trial) >= floor {
            u.copy_from_slice(&trial);
            return;
        }
        t *= 0.5;
        blocking = None;
    }
}

/// Approximate minimum-volume enclosing ellipse.
///
/// Khachiyan's barycentric coordinate ascent on the lifted points
/// `(x, y, 1)` with Todd–Yıldırım away steps; each step is followed by a
/// Newton step on the current support, which removes the slow zigzag between
/// near-active points. `Mᵢ - 1` is the planar form of point `i` under `Σ⁻¹`;
/// the result satisfies `max (Mᵢ - 1) / 2 - 1 ≤ eps` and, over the support,
/// `1 - min (Mᵢ - 1) / 2 ≤ eps`.
pub fn mvee(points: &[Point], eps: f64) -> Result<Ellipse> {
    if points.len() < 3 || points.iter().any(|p| !p.is_finite()) || !affinely_independent(points) {
        return Err(Error::DegenerateInput);
    }
    const D1: f64 = 3.0;
    let n = points.len();
    let lifted: Vec<Vector3<f64>> = points.iter().map(|p| Vector3::new(p.x, p.y, 1.0)).collect();
    let mut u = vec![1.0 / n as f64; n];
    let mut m = vec![0.0; n];
    let mut polished: Option<f64> = None;

    for _ in 0..MVEE_MAX_ITER {
        let Some(x_inv) = moment(&lifted, &u).cholesky().map(|c| c.inverse()) else {
            return Err(Error::DegenerateInput);
        };
        for (mi, q) in m.iter_mut().zip(&lifted) {
            *mi = (q.transpose() * x_inv * q)[0];
        }

        let (up, m_max) = m.iter().copied().enumerate().max_by(|a, b| a.1.total_cmp(&b.1)).expect("non-empty");
        let (down, m_min) = m
            .iter()
            .copied()
            .enumerate()
            .filter(|&(i, _)| u[i] > 0.0)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("weights sum to one");
        let gap_up = (m_max - D1) / 2.0;
        let gap_down = (D1 - m_min) / 2.0;
        let gap = gap_up.max(gap_down);
        if gap <= eps {
            // Past `eps`, keep iterating while the gap still shrinks tenfold per
            // step, so the result does not depend on where the threshold was
            // crossed; affine images of the input then give matching ellipses.
            if gap <= POLISH_FLOOR || polished.is_some_and(|prev| gap > 0.1 * prev) {
                return ellipse_from_weights(points, &u);
            }
            polished = Some(gap);
        } else {
            polished = None;
        }

        if gap_up >= gap_down {
            let step = (m_max - D1) / (D1 * (m_max - 1.0));
            u.iter_mut().for_each(|w| *w *= 1.0 - step);
            u[up] += step;
        } else {
            let ideal = (D1 - m_min) / (D1 * (m_min - 1.0));
            let cap = u[down] / (1.0 - u[down]);
            let (step, drop) = if ideal >= cap { (cap, true) } else { (ideal, false) };
            u.iter_mut().for_each(|w| *w *= 1.0 + step);
            u[down] = if drop { 0.0 } else { u[down] - step };
        }
        if let Some(x_inv) = moment(&lifted, &u).cholesky().map(|c| c.inverse()) {
            newton_on_support(&lifted, &mut u, &x_inv);
        }
    }
    let last = ellipse_from_weights(points, &u)?;
    Err(Error::NoConvergence { iterations: MVEE_MAX_ITER, last: Box::new(last) })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraversalState {
    pub domain: ConvexPolygon,
    pub sites: Vec<Point>,
    /// Sum of all applied steps. Informational: each step maps by its own
    /// increment only.
    pub v: Point,
    /// Approximate John ellipse of the starting domain.
    pub reference: Ellipse,
}

impl TraversalState {
    /// Hilbert distance between two tracked sites.
    pub fn site_distance(&self, i: usize, j: usize) -> Result<f64> {
        metrics::hilbert(&self.domain, self.sites[i], self.sites[j])
    }
}

fn check_sites(domain: &ConvexPolygon, sites: &[Point]) -> Result<()> {
    match sites.iter().position(|&s| contains_point(domain, s) != Location::Interior) {
        Some(index) => Err(Error::SiteNotInterior { index }),
        None => Ok(()),
    }
}

pub fn init_traversal(domain: &ConvexPolygon, sites: &[Point]) -> Result<TraversalState> {
    check_sites(domain, sites)?;
    let c = centroid(domain);
    let shifted = domain.map_affine(|p| p - c)?;
    let reference = mvee(shifted.vertices(), MVEE_EPS)?;
    Ok(TraversalState { domain: shifted, sites: sites.iter().map(|&s| s - c).collect(), v: Point::ORIGIN, reference })
}

/// Applies `p ↦ p / (1 + ⟨p, dv⟩)` to the domain and sites, without
/// renormalizing.
pub fn projective_displace(state: &TraversalState, dv: Point) -> Result<TraversalState> {
    if !dv.is_finite() {
        return Err(Error::NonFinite);
    }
    for (vertex, p) in state.domain.vertices().iter().enumerate() {
        let denominator = 1.0 + p.dot(dv);
        if !(denominator >= STEP_DENOMINATOR_MIN) {
            return Err(Error::StepTooLarge { vertex, denominator });
        }
    }
    let phi = |p: Point| p * (1.0 / (1.0 + p.dot(dv)));
    let domain = state.domain.map_affine(phi)?;
    let sites: Vec<Point> = state.sites.iter().map(|&s| phi(s)).collect();
    check_sites(&domain, &sites)?;
    Ok(TraversalState { domain, sites, v: state.v + dv, reference: state.reference })
}

/// Affine map sending the current domain's approximate John ellipse onto
/// the reference ellipse: `x ↦ L₀⁻ᵀ L₁ᵀ (x - c₁) + c₀`.
pub fn renormalize(state: &TraversalState) -> Result<TraversalState> {
    let current = mvee(state.domain.vertices(), MVEE_EPS)?;
    let l0 = cholesky2(&state.reference.matrix)?;
    let l1 = cholesky2(&current.matrix)?;
    // L₀ᵀ is upper triangular; invert it directly.
    let l0_inv_t = [[1.0 / l0[0][0], -l0[1][0] / (l0[0][0] * l0[1][1])], [0.0, 1.0 / l0[1][1]]];
    let l1_t = [[l1[0][0], l1[1][0]], [0.0, l1[1][1]]];
    let mut map = [[0.0; 2]; 2];
    for (i, row) in map.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = l0_inv_t[i][0] * l1_t[0][j] + l0_inv_t[i][1] * l1_t[1][j];
        }
    }
    let (c0, c1) = (state.reference.center, current.center);
    let apply = |x: Point| mat_vec(&map, x - c1) + c0;
    let domain = state.domain.map_affine(apply)?;
    let sites = state.sites.iter().map(|&s| apply(s)).collect();
    Ok(TraversalState { domain, sites, v: state.v, reference: state.reference })
}

/// One user move: projective displacement followed by renormalization.
/// On error the caller keeps its previous state.
pub fn step(state: &TraversalState, dv: Point) -> Result<TraversalState> {
    renormalize(&projective_displace(state, dv)?)
}

/// Re-validates a state received from outside (a scene file or a wire
/// message).
pub fn check_state(state: &TraversalState) -> Result<()> {
    validate_polygon(state.domain.vertices())?;
    check_sites(&state.domain, &state.sites)?;
    cholesky2(&state.reference.matrix)?;
    Ok(())
}

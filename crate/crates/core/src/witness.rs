//! Seeded search for two Thompson balls whose boundaries cross at least
//! four times, i.e. a pair that is not a pair of pseudo-disks.
//!
//! Candidate `i` draws from its own ChaCha stream, so the reported witness
//! (the lowest qualifying index) does not depend on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::balls::{boundary_crossings, thompson_ball, Ball};
use crate::batch;
use crate::geometry::{validate_polygon, ConvexPolygon, Point};
use crate::metrics;
use crate::sample::random_interior_point;
use crate::scene::{BallSpec, Scene};

pub const DEFAULT_SEED: u64 = 2024;
const BATCH: u64 = 256;
pub const MAX_CANDIDATES: u64 = 1 << 18;
/// Boundary samples used by the membership-based crossing count.
pub const ORACLE_SAMPLES: usize = 4096;

/// The scalene triangle the search runs in.
pub fn search_domain() -> ConvexPolygon {
    validate_polygon(&[Point::new(0.0, 0.0), Point::new(4.0, 0.0), Point::new(1.0, 3.0)])
        .expect("fixed triangle is valid")
}

#[derive(Debug, Clone, PartialEq)]
pub struct PseudodiskWitness {
    pub seed: u64,
    pub candidate: u64,
    pub domain: ConvexPolygon,
    pub first: Ball,
    pub second: Ball,
    pub crossings: usize,
}

impl PseudodiskWitness {
    pub fn to_scene(&self) -> Scene {
        Scene {
            version: 1,
            domain: self.domain.clone(),
            balls: [&self.first, &self.second]
                .iter()
                .zip(["#1f77b4", "#d62728"])
                .map(|(b, color)| BallSpec {
                    kind: b.kind,
                    center: b.center,
                    radius: b.radius,
                    color: color.to_string(),
                })
                .collect(),
            traversal: None,
        }
    }
}

fn candidate(domain: &ConvexPolygon, seed: u64, index: u64) -> Option<(Ball, Ball)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let c1 = random_interior_point(&mut rng, domain, 0.02);
    let c2 = random_interior_point(&mut rng, domain, 0.02);
    let r1 = rng.random_range(0.05..3.0);
    let r2 = rng.random_range(0.05..3.0);
    Some((thompson_ball(domain, c1, r1).ok()?, thompson_ball(domain, c2, r2).ok()?))
}

/// Counts boundary crossings of `a` and `b` without using their polygons'
/// edges for `b`: walks `samples` points along the boundary of `a` and
/// counts how often Thompson-distance membership in `b` flips.
pub fn sampled_crossings(domain: &ConvexPolygon, a: &Ball, b: &Ball, samples: usize) -> usize {
    let inside: Vec<bool> = a
        .shape
        .sample_boundary(samples)
        .into_iter()
        .map(|x| metrics::thompson(domain, b.center, x).is_ok_and(|d| d <= b.radius))
        .collect();
    (0..inside.len()).filter(|&i| inside[i] != inside[(i + 1) % inside.len()]).count()
}

/// Checks both crossing counts for a candidate pair.
pub fn is_witness(domain: &ConvexPolygon, a: &Ball, b: &Ball) -> bool {
    boundary_crossings(&a.shape, &b.shape) >= 4 && sampled_crossings(domain, a, b, ORACLE_SAMPLES) >= 4
}

pub fn search_pseudodisk_witness(seed: u64) -> Option<PseudodiskWitness> {
    let domain = search_domain();
    let mut start = 0;
    while start < MAX_CANDIDATES {
        let indices: Vec<u64> = (start..start + BATCH).collect();
        let found = batch::map(&indices, |&i| candidate(&domain, seed, i).filter(|(a, b)| is_witness(&domain, a, b)));
        if let Some((offset, (first, second))) = found.into_iter().enumerate().find_map(|(k, hit)| hit.map(|h| (k, h)))
        {
            let crossings = boundary_crossings(&first.shape, &second.shape);
            return Some(PseudodiskWitness {
                seed,
                candidate: start + offset as u64,
                domain,
                first,
                second,
                crossings,
            });
        }
        start += BATCH;
    }
    None
}

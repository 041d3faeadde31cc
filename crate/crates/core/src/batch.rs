//! Batch evaluation over independent inputs.
//!
//! With the `parallel` feature (on by default) the work is spread over the
//! rayon thread pool; without it everything runs on the calling thread.
//! Results are returned in input order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::balls::{self, Ball};
use crate::error::Result;
use crate::geometry::{ConvexPolygon, Point};
use crate::metrics::{self, MetricKind};

#[cfg(feature = "parallel")]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    sequential::map(items, f)
}

pub fn distances(kind: MetricKind, domain: &ConvexPolygon, pairs: &[(Point, Point)]) -> Vec<Result<f64>> {
    map(pairs, |&(p, q)| metrics::distance(kind, domain, p, q))
}

pub fn balls(kind: MetricKind, domain: &ConvexPolygon, requests: &[(Point, f64)]) -> Vec<Result<Ball>> {
    map(requests, |&(p, r)| balls::ball(kind, domain, p, r))
}

/// Single-threaded versions, always available (benchmarks compare the two).
pub mod sequential {
    use super::*;

    pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
    where
        F: Fn(&T) -> U,
    {
        items.iter().map(f).collect()
    }

    pub fn distances(kind: MetricKind, domain: &ConvexPolygon, pairs: &[(Point, Point)]) -> Vec<Result<f64>> {
        map(pairs, |&(p, q)| metrics::distance(kind, domain, p, q))
    }

    pub fn balls(kind: MetricKind, domain: &ConvexPolygon, requests: &[(Point, f64)]) -> Vec<Result<Ball>> {
        map(requests, |&(p, r)| balls::ball(kind, domain, p, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_convex_polygon, random_interior_point};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn batch_matches_sequential() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let domain = random_convex_polygon(&mut rng, 9);
        let pairs: Vec<(Point, Point)> = (0..300)
            .map(|_| (random_interior_point(&mut rng, &domain, 1e-3), random_interior_point(&mut rng, &domain, 1e-3)))
            .collect();
        for kind in MetricKind::ALL {
            assert_eq!(distances(kind, &domain, &pairs), sequential::distances(kind, &domain, &pairs));
        }
        let requests: Vec<(Point, f64)> = pairs.iter().map(|&(p, _)| (p, 0.7)).collect();
        assert_eq!(
            balls(MetricKind::Hilbert, &domain, &requests),
            sequential::balls(MetricKind::Hilbert, &domain, &requests)
        );
    }
}

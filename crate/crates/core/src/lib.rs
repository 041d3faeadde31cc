//! Funk, reverse Funk, Thompson and Hilbert geometry on convex polygons.
//!
//! - [`geometry`]: planar kernel (orientation, containment, chords,
//!   homothety, convex intersection).
//! - [`metrics`]: the four distances.
//! - [`balls`]: exact polygonal metric balls and boundary crossing counts.
//! - [`traversal`]: projective moves through the Hilbert geometry with
//!   John-ellipse renormalization.
//! - [`scene`], [`svg`], [`boundary`]: file format, rendering and the JSON
//!   request surface used by front ends.
//! - [`batch`], [`witness`]: data-parallel evaluation and the seeded
//!   pseudo-disk witness search.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod balls;
pub mod batch;
pub mod boundary;
pub mod error;
pub mod geometry;
pub mod metrics;
pub mod sample;
pub mod scene;
pub mod svg;
pub mod traversal;
pub mod witness;

pub use balls::Ball;
pub use error::{Error, Result};
pub use geometry::{validate_polygon, ConvexPolygon, Location, Point};
pub use metrics::MetricKind;
pub use scene::Scene;
pub use traversal::{Ellipse, TraversalState};

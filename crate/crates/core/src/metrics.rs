//! The Funk weak metric and the three distances built from it.
//!
//! Every distance is read off the chord of the domain through `p` and `q`:
//! with `x1` the boundary point behind `p` and `x2` the one beyond `q`,
//!
//! ```text
//! F(p, q)  = ln(|p - x2| / |q - x2|)
//! rF(p, q) = F(q, p) = ln(|q - x1| / |p - x1|)
//! H(p, q)  = (F + rF) / 2
//! T(p, q)  = max(F, rF)
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{chord_through, contains_point, ConvexPolygon, Location, Point, EPS_GEOM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MetricKind {
    #[serde(rename = "funk")]
    Funk,
    #[serde(rename = "rfunk", alias = "reverse_funk")]
    ReverseFunk,
    #[serde(rename = "hilbert")]
    Hilbert,
    #[serde(rename = "thompson")]
    Thompson,
}

impl MetricKind {
    pub const ALL: [MetricKind; 4] =
        [MetricKind::Funk, MetricKind::ReverseFunk, MetricKind::Hilbert, MetricKind::Thompson];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Funk => "funk",
            MetricKind::ReverseFunk => "rfunk",
            MetricKind::Hilbert => "hilbert",
            MetricKind::Thompson => "thompson",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "funk" => Ok(MetricKind::Funk),
            "rfunk" | "reverse_funk" | "reverse-funk" => Ok(MetricKind::ReverseFunk),
            "hilbert" => Ok(MetricKind::Hilbert),
            "thompson" => Ok(MetricKind::Thompson),
            other => Err(Error::Validation(format!("unknown metric `{other}`"))),
        }
    }
}

fn require_interior(domain: &ConvexPolygon, p: Point) -> Result<()> {
    match contains_point(domain, p) {
        Location::Interior => Ok(()),
        _ => Err(Error::PointNotInterior { x: p.x, y: p.y }),
    }
}

/// Forward and reverse Funk distances from one chord computation.
///
/// Returns `(0, 0)` when `p` and `q` coincide within `EPS_GEOM · diameter`.
pub fn funk_pair(domain: &ConvexPolygon, p: Point, q: Point) -> Result<(f64, f64)> {
    require_interior(domain, p)?;
    require_interior(domain, q)?;
    if p.distance(q) <= EPS_GEOM * domain.diameter() {
        return Ok((0.0, 0.0));
    }
    let chord = chord_through(domain, p, q)?;
    let forward = (p.distance(chord.forward) / q.distance(chord.forward)).ln();
    let reverse = (q.distance(chord.backward) / p.distance(chord.backward)).ln();
    Ok((forward.max(0.0), reverse.max(0.0)))
}

pub fn funk(domain: &ConvexPolygon, p: Point, q: Point) -> Result<f64> {
    funk_pair(domain, p, q).map(|(f, _)| f)
}

pub fn reverse_funk(domain: &ConvexPolygon, p: Point, q: Point) -> Result<f64> {
    funk_pair(domain, p, q).map(|(_, r)| r)
}

pub fn hilbert(domain: &ConvexPolygon, p: Point, q: Point) -> Result<f64> {
    funk_pair(domain, p, q).map(|(f, r)| 0.5 * (f + r))
}

pub fn thompson(domain: &ConvexPolygon, p: Point, q: Point) -> Result<f64> {
    funk_pair(domain, p, q).map(|(f, r)| f.max(r))
}

pub fn distance(kind: MetricKind, domain: &ConvexPolygon, p: Point, q: Point) -> Result<f64> {
    match kind {
        MetricKind::Funk => funk(domain, p, q),
        MetricKind::ReverseFunk => reverse_funk(domain, p, q),
        MetricKind::Hilbert => hilbert(domain, p, q),
        MetricKind::Thompson => thompson(domain, p, q),
    }
}

//! Scene documents: the JSON file format shared by the CLI, the kernel
//! boundary and the explorer UI.
//!
//! ```json
//! {
//!   "version": 1,
//!   "domain": [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
//!   "balls": [
//!     {"kind": "hilbert", "center": [0.5, 0.5], "radius": 0.5, "color": "#1f77b4"}
//!   ]
//! }
//! ```
//!
//! An optional `"traversal": {"v": [x, y], "reference": {"center": [x, y],
//! "matrix": [[a, b], [b, c]]}}` block records an ongoing traversal.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{centroid, contains_point, validate_polygon, ConvexPolygon, Location, Point};
use crate::metrics::{self, MetricKind};
use crate::traversal::{check_state, init_traversal, step, Ellipse, TraversalState};

pub const SCENE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallSpec {
    pub kind: MetricKind,
    pub center: Point,
    pub radius: f64,
    #[serde(default)]
    pub color: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraversalInfo {
    pub v: Point,
    pub reference: Ellipse,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub version: u32,
    pub domain: ConvexPolygon,
    pub balls: Vec<BallSpec>,
    pub traversal: Option<TraversalInfo>,
}

/// The document as written, before any geometric validation.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScene {
    pub version: u32,
    pub domain: Vec<Point>,
    #[serde(default)]
    pub balls: Vec<BallSpec>,
    #[serde(default)]
    pub traversal: Option<TraversalInfo>,
}

pub fn default_color(kind: MetricKind) -> &'static str {
    match kind {
        MetricKind::Funk => "#d62728",
        MetricKind::ReverseFunk => "#2ca02c",
        MetricKind::Hilbert => "#1f77b4",
        MetricKind::Thompson => "#9467bd",
    }
}

impl TryFrom<RawScene> for Scene {
    type Error = Error;

    fn try_from(raw: RawScene) -> Result<Scene> {
        if raw.version != SCENE_VERSION {
            return Err(Error::Validation(format!(
                "unsupported scene version {} (expected {SCENE_VERSION})",
                raw.version
            )));
        }
        let domain = validate_polygon(&raw.domain)?;
        let mut balls = raw.balls;
        for (i, b) in balls.iter_mut().enumerate() {
            if contains_point(&domain, b.center) != Location::Interior {
                return Err(Error::Validation(format!(
                    "balls[{i}]: center {} is not strictly inside the domain",
                    b.center
                )));
            }
            if !(b.radius > 0.0 && b.radius.is_finite()) {
                return Err(Error::Validation(format!("balls[{i}]: radius {} is not positive", b.radius)));
            }
            if b.color.is_empty() {
                b.color = default_color(b.kind).to_string();
            }
        }
        if let Some(t) = &raw.traversal {
            if !t.v.is_finite() || !t.reference.center.is_finite() {
                return Err(Error::Validation("traversal: non-finite coordinates".into()));
            }
            crate::traversal::cholesky2(&t.reference.matrix)
                .map_err(|_| Error::Validation("traversal: reference matrix is not positive definite".into()))?;
        }
        Ok(Scene { version: raw.version, domain, balls, traversal: raw.traversal })
    }
}

pub fn parse_scene(text: &str) -> Result<Scene> {
    let raw: RawScene = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Scene::try_from(raw)
}

pub fn scene_from_value(value: serde_json::Value) -> Result<Scene> {
    let raw: RawScene = serde_json::from_value(value).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Scene::try_from(raw)
}

fn num(x: f64) -> String {
    // Shortest representation that parses back to the same f64.
    serde_json::to_string(&x).expect("finite")
}

fn point(p: Point) -> String {
    format!("[{}, {}]", num(p.x), num(p.y))
}

fn string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Canonical text form: stable field order, one ball per line, shortest
/// round-trip decimals, trailing newline.
pub fn serialize_scene(scene: &Scene) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"version\": {},", scene.version);
    let domain: Vec<String> = scene.domain.vertices().iter().map(|&p| point(p)).collect();
    let _ = write!(out, "  \"domain\": [{}],\n  \"balls\": [", domain.join(", "));
    for (i, b) in scene.balls.iter().enumerate() {
        let _ = write!(
            out,
            "{}\n    {{\"kind\": {}, \"center\": {}, \"radius\": {}, \"color\": {}}}",
            if i == 0 { "" } else { "," },
            string(b.kind.name()),
            point(b.center),
            num(b.radius),
            string(&b.color),
        );
    }
    out.push_str(if scene.balls.is_empty() { "]" } else { "\n  ]" });
    if let Some(t) = &scene.traversal {
        let m = &t.reference.matrix;
        let _ = write!(
            out,
            ",\n  \"traversal\": {{\"v\": {}, \"reference\": {{\"center\": {}, \"matrix\": [[{}, {}], [{}, {}]]}}}}",
            point(t.v),
            point(t.reference.center),
            num(m[0][0]),
            num(m[0][1]),
            num(m[1][0]),
            num(m[1][1]),
        );
    }
    out.push_str("\n}\n");
    out
}

impl Scene {
    pub fn new(domain: ConvexPolygon) -> Self {
        Scene { version: SCENE_VERSION, domain, balls: Vec::new(), traversal: None }
    }

    pub fn with_ball(mut self, kind: MetricKind, center: Point, radius: f64) -> Result<Self> {
        let spec = BallSpec { kind, center, radius, color: default_color(kind).to_string() };
        // Run the constructor so bad centers or radii fail here, not at render.
        crate::balls::ball(kind, &self.domain, center, radius)?;
        self.balls.push(spec);
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraverseOutcome {
    pub scene: Scene,
    /// Largest change in Hilbert distance over all pairs of ball centers.
    pub residual: f64,
}

fn pairwise_hilbert(domain: &ConvexPolygon, sites: &[Point]) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for i in 0..sites.len() {
        for j in i + 1..sites.len() {
            out.push(metrics::hilbert(domain, sites[i], sites[j])?);
        }
    }
    Ok(out)
}

/// Runs a traversal on a scene, tracking the ball centers as sites.
///
/// The work happens in coordinates centered at the domain centroid; the
/// result is translated back so that a zero step returns the input.
pub fn traverse_scene(scene: &Scene, steps: &[Point]) -> Result<TraverseOutcome> {
    let offset = centroid(&scene.domain);
    let sites: Vec<Point> = scene.balls.iter().map(|b| b.center).collect();
    let mut state = match &scene.traversal {
        None => init_traversal(&scene.domain, &sites)?,
        Some(t) => {
            let state = TraversalState {
                domain: scene.domain.map_affine(|p| p - offset)?,
                sites: sites.iter().map(|&s| s - offset).collect(),
                v: t.v,
                reference: Ellipse { center: t.reference.center - offset, matrix: t.reference.matrix },
            };
            check_state(&state)?;
            state
        }
    };
    let before = pairwise_hilbert(&state.domain, &state.sites)?;
    for &dv in steps {
        state = step(&state, dv)?;
    }
    let after = pairwise_hilbert(&state.domain, &state.sites)?;
    let residual = before.iter().zip(&after).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    let balls =
        scene.balls.iter().zip(&state.sites).map(|(b, &s)| BallSpec { center: s + offset, ..b.clone() }).collect();
    let out = Scene {
        version: SCENE_VERSION,
        domain: state.domain.map_affine(|p| p + offset)?,
        balls,
        traversal: Some(TraversalInfo {
            v: state.v,
            reference: Ellipse { center: state.reference.center + offset, matrix: state.reference.matrix },
        }),
    };
    Ok(TraverseOutcome { scene: out, residual })
}

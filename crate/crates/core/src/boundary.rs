//! JSON request/response surface for front ends.
//!
//! Every request is `{"op": <name>, ...arguments}` and every response is
//! either `{"ok": true, <payload>}` or
//! `{"ok": false, "error": {"code": <name>, "message": <text>}}`.
//! Nothing is kept between calls: traversal states travel inside the
//! messages.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::balls;
use crate::error::Error;
use crate::geometry::{validate_polygon, Point};
use crate::metrics::{self, MetricKind};
use crate::scene::{scene_from_value, serialize_scene, traverse_scene};
use crate::svg::{render_svg, SvgOptions};
use crate::traversal::{self, check_state, Mat2, TraversalState, MVEE_EPS};
use crate::witness::search_pseudodisk_witness;

pub const OPS: &[&str] = &[
    "validate",
    "distance",
    "ball",
    "hilbert_point_at",
    "boundary_crossings",
    "render",
    "traverse",
    "init_traversal",
    "projective_displace",
    "renormalize",
    "step",
    "mvee",
    "cholesky",
    "witness_pseudodisk",
];

fn default_size() -> u32 {
    800
}

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
enum Request {
    Validate {
        domain: Vec<Point>,
    },
    Distance {
        metric: MetricKind,
        domain: Vec<Point>,
        p: Point,
        q: Point,
    },
    Ball {
        metric: MetricKind,
        domain: Vec<Point>,
        center: Point,
        radius: f64,
    },
    HilbertPointAt {
        domain: Vec<Point>,
        p: Point,
        dir: Point,
        radius: f64,
    },
    BoundaryCrossings {
        a: Vec<Point>,
        b: Vec<Point>,
    },
    Render {
        scene: Value,
        #[serde(default = "default_size")]
        width: u32,
        #[serde(default = "default_size")]
        height: u32,
        #[serde(default)]
        show_spokes: bool,
    },
    Traverse {
        scene: Value,
        steps: Vec<Point>,
    },
    InitTraversal {
        domain: Vec<Point>,
        #[serde(default)]
        sites: Vec<Point>,
    },
    ProjectiveDisplace {
        state: TraversalState,
        dv: Point,
    },
    Renormalize {
        state: TraversalState,
    },
    Step {
        state: TraversalState,
        dv: Point,
    },
    Mvee {
        points: Vec<Point>,
        #[serde(default)]
        eps: Option<f64>,
    },
    Cholesky {
        matrix: Mat2,
    },
    WitnessPseudodisk {
        seed: u64,
    },
}

fn failure(code: &str, message: impl Into<String>) -> Value {
    json!({"ok": false, "error": {"code": code, "message": message.into()}})
}

fn dispatch(request: Request) -> Result<Value, Error> {
    Ok(match request {
        Request::Validate { domain } => json!({"ok": true, "polygon": validate_polygon(&domain)?}),
        Request::Distance { metric, domain, p, q } => {
            let domain = validate_polygon(&domain)?;
            json!({"ok": true, "value": metrics::distance(metric, &domain, p, q)?})
        }
        Request::Ball { metric, domain, center, radius } => {
            let domain = validate_polygon(&domain)?;
            let ball = balls::ball(metric, &domain, center, radius)?;
            json!({"ok": true, "polygon": ball.shape})
        }
        Request::HilbertPointAt { domain, p, dir, radius } => {
            let domain = validate_polygon(&domain)?;
            json!({"ok": true, "value": balls::hilbert_point_at(&domain, p, dir, radius)?})
        }
        Request::BoundaryCrossings { a, b } => {
            let (a, b) = (validate_polygon(&a)?, validate_polygon(&b)?);
            json!({"ok": true, "value": balls::boundary_crossings(&a, &b)})
        }
        Request::Render { scene, width, height, show_spokes } => {
            let scene = scene_from_value(scene)?;
            let svg = render_svg(&scene, &SvgOptions { width, height, show_spokes })?;
            json!({"ok": true, "value": svg})
        }
        Request::Traverse { scene, steps } => {
            let outcome = traverse_scene(&scene_from_value(scene)?, &steps)?;
            let scene: Value = serde_json::from_str(&serialize_scene(&outcome.scene)).expect("own output parses");
            json!({"ok": true, "value": scene, "residual": outcome.residual})
        }
        Request::InitTraversal { domain, sites } => {
            let domain = validate_polygon(&domain)?;
            json!({"ok": true, "state": traversal::init_traversal(&domain, &sites)?})
        }
        Request::ProjectiveDisplace { state, dv } => {
            check_state(&state)?;
            json!({"ok": true, "state": traversal::projective_displace(&state, dv)?})
        }
        Request::Renormalize { state } => {
            check_state(&state)?;
            json!({"ok": true, "state": traversal::renormalize(&state)?})
        }
        Request::Step { state, dv } => {
            check_state(&state)?;
            json!({"ok": true, "state": traversal::step(&state, dv)?})
        }
        Request::Mvee { points, eps } => {
            json!({"ok": true, "value": traversal::mvee(&points, eps.unwrap_or(MVEE_EPS))?})
        }
        Request::Cholesky { matrix } => json!({"ok": true, "value": traversal::cholesky2(&matrix)?}),
        Request::WitnessPseudodisk { seed } => match search_pseudodisk_witness(seed) {
            Some(w) => {
                let scene: Value = serde_json::from_str(&serialize_scene(&w.to_scene())).expect("own output parses");
                json!({"ok": true, "value": scene, "crossings": w.crossings})
            }
            None => failure("NoWitness", format!("no witness found for seed {seed}")),
        },
    })
}

/// Answers one request. Pure: the response depends only on `request`.
pub fn handle_value(request: Value) -> Value {
    let op = match request.get("op") {
        Some(Value::String(op)) => op.clone(),
        Some(_) => return failure("BadRequest", "`op` must be a string"),
        None => return failure("BadRequest", "missing `op`"),
    };
    if !OPS.contains(&op.as_str()) {
        return failure("UnknownOp", format!("unknown op `{op}`"));
    }
    match serde_json::from_value::<Request>(request) {
        Ok(req) => dispatch(req).unwrap_or_else(|e| failure(e.code(), e.to_string())),
        Err(e) => failure("BadRequest", e.to_string()),
    }
}

pub fn handle(request: &str) -> String {
    let response = match serde_json::from_str::<Value>(request) {
        Ok(value) => handle_value(value),
        Err(e) => failure("BadRequest", e.to_string()),
    };
    response.to_string()
}

//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use funkgeo::balls::{self, boundary_crossings, funk_ball, hilbert_ball, reverse_funk_ball, thompson_ball};
use funkgeo::boundary;
use funkgeo::geometry::{contains_point, convex_intersection, validate_polygon, ConvexPolygon, Location, Point};
use funkgeo::metrics::{self, MetricKind};
use funkgeo::sample::{random_convex_polygon, random_interior_point};
use funkgeo::scene::{parse_scene, serialize_scene, BallSpec, Scene};
use funkgeo::svg::{render_svg, SvgOptions};
use funkgeo::traversal::{self, mvee, renormalize, step, MVEE_EPS};
use funkgeo::witness::{sampled_crossings, search_pseudodisk_witness, DEFAULT_SEED, ORACLE_SAMPLES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use common::{hausdorff, random_case, shoelace, strip_redundant, sutherland_hodgman};

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_budget(start: Instant, budget: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < budget, || format!("took {took:?}, budget {budget:?}"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn unit_square() -> ConvexPolygon {
    validate_polygon(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)]).unwrap()
}

fn worked_square_values() -> Outcome {
    let start = Instant::now();
    let sq = unit_square();
    let (p, q) = (Point::new(0.5, 0.5), Point::new(0.75, 0.5));
    let expected = [
        (MetricKind::Funk, 2f64.ln()),
        (MetricKind::ReverseFunk, 1.5f64.ln()),
        (MetricKind::Hilbert, 0.5 * 3f64.ln()),
        (MetricKind::Thompson, 2f64.ln()),
    ];
    let mut worst = 0.0f64;
    for (kind, want) in expected {
        let got = metrics::distance(kind, &sq, p, q).map_err(|e| e.to_string())?;
        worst = worst.max((got - want).abs());
        ensure((got - want).abs() <= 1e-12, || format!("{kind}: {got} vs {want}"))?;
    }
    within_budget(start, Duration::from_secs(1))?;
    Ok(format!("max error {worst:.1e}"))
}

/// Boundary samples of `shape` that are safely inside the domain.
fn interior_samples(domain: &ConvexPolygon, shape: &ConvexPolygon, n: usize) -> Vec<Point> {
    shape.sample_boundary(n).into_iter().filter(|&b| contains_point(domain, b) == Location::Interior).collect()
}

fn homothety_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let (mut worst, mut checked) = (0.0f64, 0usize);
    for case in 0..200 {
        let (domain, p, r) = random_case(&mut rng);
        for (kind, shape) in [
            (MetricKind::Funk, funk_ball(&domain, p, r).map_err(|e| e.to_string())?.shape),
            (MetricKind::ReverseFunk, reverse_funk_ball(&domain, p, r).map_err(|e| e.to_string())?.shape),
        ] {
            for b in interior_samples(&domain, &shape, 128) {
                let d = metrics::distance(kind, &domain, p, b).map_err(|e| e.to_string())?;
                worst = worst.max((d - r).abs());
                checked += 1;
                ensure((d - r).abs() <= 1e-7, || format!("case {case} {kind}: d={d} r={r} at {b}"))?;
            }
        }
    }
    within_budget(start, Duration::from_secs(30))?;
    Ok(format!("{checked} samples, max |d - r| {worst:.1e}"))
}

fn thompson_intersection() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let (mut worst, mut max_ratio) = (0.0f64, 0.0f64);
    for case in 0..200 {
        let (domain, p, r) = random_case(&mut rng);
        let ball = thompson_ball(&domain, p, r).map_err(|e| e.to_string())?;
        let m = domain.len();
        ensure(ball.shape.len() <= 2 * m, || format!("case {case}: {} vertices, m = {m}", ball.shape.len()))?;
        max_ratio = max_ratio.max(ball.shape.len() as f64 / m as f64);
        for b in ball.shape.sample_boundary(128) {
            let (f, rf) = metrics::funk_pair(&domain, p, b).map_err(|e| e.to_string())?;
            let d = f.max(rf);
            worst = worst.max((d - r).abs());
            ensure((d - r).abs() <= 1e-7, || format!("case {case}: max(F, rF)={d} r={r}"))?;
        }
    }
    Ok(format!("max |d - r| {worst:.1e}, max vertices/m {max_ratio:.2}"))
}

fn hilbert_ball_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst = 0.0f64;
    for case in 0..200 {
        let (domain, p, r) = random_case(&mut rng);
        let ball = hilbert_ball(&domain, p, r).map_err(|e| e.to_string())?;
        let m = domain.len();
        ensure(ball.shape.len() <= 2 * m, || format!("case {case}: {} vertices, m = {m}", ball.shape.len()))?;
        for b in ball.shape.edge_midpoints() {
            let d = metrics::hilbert(&domain, p, b).map_err(|e| e.to_string())?;
            worst = worst.max((d - r).abs());
            ensure((d - r).abs() <= 1e-7, || format!("case {case}: H={d} r={r}"))?;
        }
    }
    let sq = unit_square();
    let centered = hilbert_ball(&sq, Point::new(0.5, 0.5), 0.5 * 3f64.ln()).map_err(|e| e.to_string())?;
    let want = [Point::new(0.25, 0.25), Point::new(0.75, 0.25), Point::new(0.75, 0.75), Point::new(0.25, 0.75)];
    let dev = hausdorff(centered.shape.vertices(), &want);
    ensure(centered.shape.len() == 4 && dev <= 1e-12, || format!("centered square ball {:?}", centered.shape))?;
    Ok(format!("max |H - r| {worst:.1e}, centered square deviation {dev:.1e}"))
}

fn nesting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let slack = 1e-9;
    let mut violations = Vec::new();
    for case in 0..1000 {
        let (domain, p, r) = random_case(&mut rng);
        let inner = hilbert_ball(&domain, p, r / 2.0).map_err(|e| e.to_string())?.shape;
        let mid = thompson_ball(&domain, p, r).map_err(|e| e.to_string())?.shape;
        let outer = hilbert_ball(&domain, p, r).map_err(|e| e.to_string())?.shape;
        for (small, big, label) in [(&inner, &mid, "B_H(r/2) ⊆ B_T(r)"), (&mid, &outer, "B_T(r) ⊆ B_H(r)")] {
            if let Some(v) = small.vertices().iter().find(|&&v| big.signed_depth(v) < -slack) {
                violations.push(format!("case {case}: {label} fails at {v}"));
            }
        }
    }
    ensure(violations.is_empty(), || format!("{} violations, first: {}", violations.len(), violations[0]))?;
    Ok("1000 cases, zero violations".into())
}

fn pseudodisk_violation() -> Outcome {
    let start = Instant::now();
    let w = search_pseudodisk_witness(DEFAULT_SEED).ok_or("no witness found")?;
    let text = serialize_scene(&w.to_scene());
    if std::env::var_os("FUNKGEO_BLESS").is_some() {
        let svg = render_svg(&w.to_scene(), &SvgOptions::default()).map_err(|e| e.to_string())?;
        std::fs::create_dir_all(fixture("")).map_err(|e| e.to_string())?;
        std::fs::write(fixture("pseudodisk_witness.json"), &text).map_err(|e| e.to_string())?;
        std::fs::write(fixture("pseudodisk_witness.svg"), svg).map_err(|e| e.to_string())?;
    }
    let stored = std::fs::read_to_string(fixture("pseudodisk_witness.json")).map_err(|e| e.to_string())?;
    ensure(text == stored, || "search result differs from the committed fixture".into())?;

    // Re-verify from the committed file alone.
    let scene = parse_scene(&stored).map_err(|e| e.to_string())?;
    let [a, b] = [&scene.balls[0], &scene.balls[1]]
        .map(|s| balls::ball(s.kind, &scene.domain, s.center, s.radius).expect("fixture balls are valid"));
    let exact = boundary_crossings(&a.shape, &b.shape);
    let sampled = sampled_crossings(&scene.domain, &a, &b, ORACLE_SAMPLES);
    ensure(exact >= 4 && sampled >= 4, || format!("crossings: edges {exact}, sampled {sampled}"))?;

    let svg = render_svg(&scene, &SvgOptions::default()).map_err(|e| e.to_string())?;
    let golden = std::fs::read_to_string(fixture("pseudodisk_witness.svg")).map_err(|e| e.to_string())?;
    ensure(svg == golden, || "rendered witness differs from golden SVG".into())?;
    within_budget(start, Duration::from_secs(60))?;
    Ok(format!("seed {DEFAULT_SEED}, candidate {}, crossings {exact} (sampled {sampled})", w.candidate))
}

fn metric_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut worst_sym = 0.0f64;
    let mut worst_tri = f64::NEG_INFINITY;
    for _ in 0..10_000 {
        let m = rng.random_range(3..=12);
        let domain = random_convex_polygon(&mut rng, m);
        let [p, q, r] = [(); 3].map(|_| random_interior_point(&mut rng, &domain, 1e-3));
        let d = |k, a, b| metrics::distance(k, &domain, a, b).unwrap();
        for kind in [MetricKind::Hilbert, MetricKind::Thompson] {
            let asym = (d(kind, p, q) - d(kind, q, p)).abs();
            worst_sym = worst_sym.max(asym);
            ensure(asym <= 1e-12, || format!("{kind} asymmetric by {asym:e}"))?;
        }
        for kind in [MetricKind::Hilbert, MetricKind::Thompson, MetricKind::Funk] {
            let excess = d(kind, p, r) - d(kind, p, q) - d(kind, q, r);
            worst_tri = worst_tri.max(excess);
            ensure(excess <= 1e-9, || format!("{kind} triangle inequality off by {excess:e}"))?;
        }
    }
    let sq = unit_square();
    let (p, q) = (Point::new(0.5, 0.5), Point::new(0.75, 0.5));
    let (f, b) = (metrics::funk(&sq, p, q).unwrap(), metrics::funk(&sq, q, p).unwrap());
    ensure((f - b).abs() > 0.1, || "no Funk asymmetry".into())?;
    Ok(format!("max asymmetry {worst_sym:.1e}, max triangle excess {worst_tri:.1e}, F(p,q)={f:.6} F(q,p)={b:.6}"))
}

fn check_mvee(points: &[Point], hull: &ConvexPolygon) -> Result<(), String> {
    let e = mvee(points, MVEE_EPS).map_err(|e| e.to_string())?;
    for &x in points {
        let v = e.quadratic_form(x);
        ensure(v <= 1.0 + 10.0 * MVEE_EPS, || format!("point outside ellipse: {v}"))?;
    }
    let inner = e.scaled(1.0 / (2.0 * (1.0 + MVEE_EPS)));
    for (a, b) in hull.edges() {
        let normal = Point::new(b.y - a.y, a.x - b.x);
        let reach = inner.support(normal) - normal.dot(a);
        ensure(reach <= 1e-12 * normal.norm(), || format!("shrunk ellipse leaves hull by {reach:e}"))?;
    }
    Ok(())
}

fn traversal_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let (mut worst_drift, mut worst_idem) = (0.0f64, 0.0f64);
    for case in 0..100 {
        let m = rng.random_range(3..=12);
        let domain = random_convex_polygon(&mut rng, m);
        let sites = [(); 2].map(|_| random_interior_point(&mut rng, &domain, 2e-3));
        let mut state = traversal::init_traversal(&domain, &sites).map_err(|e| e.to_string())?;
        check_mvee(state.domain.vertices(), &state.domain)?;
        let before = state.site_distance(0, 1).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let angle = rng.random_range(0.0..std::f64::consts::TAU);
            let len = rng.random_range(0.0..=0.05);
            let dv = Point::new(len * angle.cos(), len * angle.sin());
            state = step(&state, dv).map_err(|e| format!("case {case}: {e}"))?;
            check_mvee(state.domain.vertices(), &state.domain).map_err(|e| format!("case {case}: {e}"))?;
            let again = renormalize(&state).map_err(|e| e.to_string())?;
            let idem = state
                .domain
                .vertices()
                .iter()
                .chain(&state.sites)
                .zip(again.domain.vertices().iter().chain(&again.sites))
                .map(|(a, b)| a.distance(*b))
                .fold(0.0, f64::max);
            worst_idem = worst_idem.max(idem);
            ensure(idem <= 1e-8, || format!("case {case}: renormalize moved points by {idem:e}"))?;
        }
        let drift = (state.site_distance(0, 1).map_err(|e| e.to_string())? - before).abs();
        worst_drift = worst_drift.max(drift);
        ensure(drift < 1e-7, || format!("case {case}: Hilbert distance drifted {drift:e}"))?;
    }
    Ok(format!("max drift {worst_drift:.1e}, max idempotence error {worst_idem:.1e}"))
}

fn convex_intersection_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let (mut worst, mut empties) = (0.0f64, 0usize);
    for case in 0..1000 {
        let [a, b] = [(); 2].map(|_| {
            let m = rng.random_range(3..=12);
            let poly = random_convex_polygon(&mut rng, m);
            let shift = Point::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5));
            let k = rng.random_range(0.3..1.5);
            validate_polygon(&poly.vertices().iter().map(|&v| v * k + shift).collect::<Vec<_>>()).unwrap()
        });
        let got = convex_intersection(&a, &b);
        let oracle = strip_redundant(&sutherland_hodgman(a.vertices(), b.vertices()), 1e-12);
        let oracle_empty = oracle.len() < 3 || shoelace(&oracle) <= 1e-14;
        match got {
            None => {
                empties += 1;
                ensure(oracle_empty, || format!("case {case}: empty but oracle area {}", shoelace(&oracle)))?
            }
            Some(poly) => {
                ensure(!oracle_empty, || format!("case {case}: oracle empty, got {poly:?}"))?;
                let d = hausdorff(poly.vertices(), &oracle);
                worst = worst.max(d);
                ensure(d <= 1e-9, || format!("case {case}: Hausdorff {d:e}"))?;
            }
        }
    }
    Ok(format!("max Hausdorff {worst:.1e}, {empties} empty pairs"))
}

fn random_scene<R: Rng>(rng: &mut R) -> Scene {
    let m = rng.random_range(3..=16);
    let domain = random_convex_polygon(rng, m);
    let mut scene = Scene::new(domain);
    for _ in 0..rng.random_range(0..5) {
        let kind = MetricKind::ALL[rng.random_range(0..4)];
        scene.balls.push(BallSpec {
            kind,
            center: random_interior_point(rng, &scene.domain, 1e-3),
            radius: rng.random_range(0.01..4.0),
            color: format!("#{:06x}", rng.random_range(0..0x1000000)),
        });
    }
    if rng.random::<bool>() {
        scene.traversal = Some(funkgeo::scene::TraversalInfo {
            v: Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            reference: mvee(scene.domain.vertices(), MVEE_EPS).unwrap(),
        });
    }
    scene
}

fn cli_and_formats() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for case in 0..1000 {
        let scene = random_scene(&mut rng);
        let text = serialize_scene(&scene);
        let back = parse_scene(&text).map_err(|e| format!("case {case}: {e}"))?;
        ensure(back == scene, || format!("case {case}: round trip changed the scene"))?;
        ensure(serialize_scene(&back) == text, || format!("case {case}: text not stable"))?;
    }

    let mut scene = Scene::new(unit_square());
    for kind in MetricKind::ALL {
        scene = scene.with_ball(kind, Point::new(0.35, 0.55), 0.6).map_err(|e| e.to_string())?;
    }
    let opts = SvgOptions { show_spokes: true, ..SvgOptions::default() };
    let first = render_svg(&scene, &opts).map_err(|e| e.to_string())?;
    for _ in 0..10 {
        ensure(render_svg(&scene, &opts).map_err(|e| e.to_string())? == first, || "SVG not deterministic".into())?;
    }

    // Latency over a 64-gon: cycle through the four ball kinds and distances.
    let domain = random_convex_polygon(&mut rng, 64);
    let domain_json: Vec<[f64; 2]> = domain.vertices().iter().map(|v| [v.x, v.y]).collect();
    let requests: Vec<String> = (0..1000)
        .map(|i| {
            let kind = MetricKind::ALL[i % 4].name();
            let p = random_interior_point(&mut rng, &domain, 1e-2);
            if i % 2 == 0 {
                json!({"op": "ball", "metric": kind, "domain": domain_json, "center": [p.x, p.y], "radius": 0.8})
            } else {
                let q = random_interior_point(&mut rng, &domain, 1e-2);
                json!({"op": "distance", "metric": kind, "domain": domain_json, "p": [p.x, p.y], "q": [q.x, q.y]})
            }
            .to_string()
        })
        .collect();
    let mut times: Vec<Duration> = requests
        .iter()
        .map(|req| {
            let start = Instant::now();
            let resp = boundary::handle(req);
            let took = start.elapsed();
            assert!(resp.starts_with("{\"ok\":true"), "{resp}");
            took
        })
        .collect();
    times.sort();
    let median = times[times.len() / 2];
    ensure(median < Duration::from_millis(5), || format!("median latency {median:?}"))?;
    Ok(format!("1000 round trips, SVG stable, median boundary latency {median:?} (max {:?})", times[times.len() - 1]))
}

fn main() {
    let criteria: [Check; 10] = [
        ("worked square values", worked_square_values),
        ("homothety oracle for Funk and reverse Funk balls", homothety_oracle),
        ("Thompson ball = Funk ∩ reverse Funk", thompson_intersection),
        ("Hilbert ball", hilbert_ball_criterion),
        ("Hilbert/Thompson nesting", nesting),
        ("pseudo-disk violation", pseudodisk_violation),
        ("metric axioms", metric_axioms),
        ("traversal invariance", traversal_invariance),
        ("convex intersection vs clipping oracle", convex_intersection_oracle),
        ("CLI and formats", cli_and_formats),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{took:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} [{took:.2?}]");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

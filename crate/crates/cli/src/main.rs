use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use funkgeo::geometry::Point;
use funkgeo::metrics::{self, MetricKind};
use funkgeo::scene::{parse_scene, serialize_scene, traverse_scene, Scene};
use funkgeo::svg::{render_svg, SvgOptions};
use funkgeo::witness::search_pseudodisk_witness;

#[derive(Parser)]
#[command(name = "funkgeo", version, about = "Funk, reverse Funk, Thompson and Hilbert geometry on convex polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a scene file and check its invariants.
    Validate { scene: PathBuf },
    /// Print the distance between two points.
    Distance {
        #[arg(long)]
        metric: MetricKind,
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        p: Point,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        q: Point,
    },
    /// Append a ball to the scene; write the scene, or an SVG if `--out` ends in `.svg`.
    Ball {
        #[arg(long)]
        metric: MetricKind,
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        center: Point,
        #[arg(long, allow_hyphen_values = true)]
        radius: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a scene to SVG.
    Render {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        show_spokes: bool,
    },
    /// Move through the geometry by a sequence of steps and write the result.
    Traverse {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_parser = parse_steps, allow_hyphen_values = true)]
        steps: Steps,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for two balls whose boundaries cross at least four times.
    WitnessPseudodisk {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone)]
struct Steps(Vec<Point>);

fn parse_point(text: &str) -> Result<Point, String> {
    let (x, y) = text.split_once(',').ok_or_else(|| format!("expected x,y, got `{text}`"))?;
    let coord = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("bad coordinate `{s}`: {e}"));
    Ok(Point::new(coord(x)?, coord(y)?))
}

fn parse_steps(text: &str) -> Result<Steps, String> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(parse_point).collect::<Result<_, _>>().map(Steps)
}

struct Failure {
    code: &'static str,
    message: String,
}

impl From<funkgeo::Error> for Failure {
    fn from(e: funkgeo::Error) -> Self {
        Failure { code: e.code(), message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: "IoError", message: format!("{}: {e}", path.display()) }
}

fn read_scene(path: &Path) -> Result<Scene, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(parse_scene(&text)?)
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn is_svg(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("svg"))
}

/// `value` rounded to `digits` significant digits, in plain decimal form.
fn significant(value: f64, digits: i32) -> String {
    if value == 0.0 || !value.is_finite() {
        return value.to_string();
    }
    let decimals = (digits - 1 - value.abs().log10().floor() as i32).max(0);
    format!("{value:.*}", decimals as usize)
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { scene } => {
            let s = read_scene(&scene)?;
            println!("OK {} vertices, {} balls", s.domain.len(), s.balls.len());
        }
        Command::Distance { metric, scene, p, q } => {
            let s = read_scene(&scene)?;
            println!("{}", significant(metrics::distance(metric, &s.domain, p, q)?, 12));
        }
        Command::Ball { metric, scene, center, radius, out } => {
            let s = read_scene(&scene)?.with_ball(metric, center, radius)?;
            match out {
                Some(path) if is_svg(&path) => write(&path, &render_svg(&s, &SvgOptions::default())?)?,
                Some(path) => write(&path, &serialize_scene(&s))?,
                None => print!("{}", serialize_scene(&s)),
            }
        }
        Command::Render { scene, out, show_spokes } => {
            let s = read_scene(&scene)?;
            write(&out, &render_svg(&s, &SvgOptions { show_spokes, ..SvgOptions::default() })?)?;
        }
        Command::Traverse { scene, steps, out } => {
            let outcome = traverse_scene(&read_scene(&scene)?, &steps.0)?;
            write(&out, &serialize_scene(&outcome.scene))?;
            println!("residual {:e}", outcome.residual);
        }
        Command::WitnessPseudodisk { seed, out } => {
            let w = search_pseudodisk_witness(seed)
                .ok_or_else(|| Failure { code: "NoWitness", message: format!("no witness found for seed {seed}") })?;
            let scene = w.to_scene();
            match out {
                Some(path) if is_svg(&path) => write(&path, &render_svg(&scene, &SvgOptions::default())?)?,
                Some(path) => write(&path, &serialize_scene(&scene))?,
                None => print!("{}", serialize_scene(&scene)),
            }
            eprintln!("candidate {} with {} crossings", w.candidate, w.crossings);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or_default().trim_start_matches("error: ");
            eprintln!("ERROR UsageError: {first}");
            return ExitCode::FAILURE;
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ERROR {}: {}", f.code, f.message.replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}

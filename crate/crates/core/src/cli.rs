//! The `geodisk` command line.
//!
//! Exit codes: 0 on success, 1 when `cover-2 --radius` finds no cover or a
//! `verify` property fails, 2 on invalid input, 3 on internal failures.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::covering::{k_cover_with, k_pack_with, CandidateMode};
use crate::disk::disk_boundary;
use crate::error::Error;
use crate::geometry::{GeodesicEngine, Point2};
use crate::io::{load_polygon, render_svg, sha256_hex, CommandInfo, CommandOutput, InputInfo, Overlays, RunRecord};
use crate::oracle::{property_suites, Suite};
use crate::packing::greedy_packing;
use crate::two_cover::{default_eps, min_two_cover, test_two_disk_cover};

#[derive(Debug, Parser)]
#[command(name = "geodisk", version, about = "Geodesic disk packing and covering in polygons")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Replace exact farthest-point candidates by a lattice of this step.
    #[arg(long, global = true, value_name = "H")]
    approx_grid: Option<String>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print a machine-readable run record instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress text output.
    #[arg(long, global = true)]
    quiet: bool,
    /// Record per-phase wall-clock times (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    /// Write an SVG picture of the result.
    #[arg(long, global = true, value_name = "FILE")]
    svg: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Greedy packing of unit disks.
    PackUnit { polygon: PathBuf },
    /// Greedy packing of disks of a given radius.
    Pack {
        polygon: PathBuf,
        #[arg(long)]
        radius: String,
    },
    /// Farthest-point k-cover.
    CoverK {
        polygon: PathBuf,
        #[arg(long)]
        k: String,
    },
    /// Farthest-point k-packing.
    PackK {
        polygon: PathBuf,
        #[arg(long)]
        k: String,
    },
    /// Two-disk cover: decide at a radius, or minimize the radius.
    #[command(name = "cover-2")]
    Cover2 {
        polygon: PathBuf,
        #[arg(long, conflicts_with = "eps")]
        radius: Option<String>,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Randomized property suites.
    Verify {
        polygon: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        /// Random triples per metric property.
        #[arg(long, default_value = "500")]
        budget: String,
    },
    /// Draw a polygon, optionally with a saved run record.
    Render { polygon: PathBuf, result: Option<PathBuf> },
}

enum Failure {
    Input(String),
    Internal(String),
}

fn field_of(e: &Error) -> String {
    match e {
        Error::Input { field, .. } => field.clone(),
        Error::InvalidParameter { name, .. } => (*name).to_string(),
        Error::InvalidK(_) => "--k".into(),
        Error::NonPositiveRadius(_) => "--radius".into(),
        Error::PolygonHasHoles => "holes".into(),
        Error::Polygon(_) | Error::EmptyPolygon => "polygon".into(),
        Error::PointOutsidePolygon { .. } => "centers".into(),
        _ => "input".into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(_) | Error::DisconnectedSample { .. } => Failure::Internal(e.to_string()),
            Error::Input { ref reason, .. } => Failure::Input(format!("{}: {reason}", field_of(&e))),
            _ => Failure::Input(format!("{}: {e}", field_of(&e))),
        }
    }
}

fn bad(field: &str, reason: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("{field}: {reason}"))
}

fn positive(field: &str, raw: &str) -> Result<f64, Failure> {
    match raw.trim().parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(bad(field, format!("must be positive and finite, got {v}"))),
        Err(_) => Err(bad(field, format!("not a number: {raw:?}"))),
    }
}

fn count(field: &str, raw: &str) -> Result<usize, Failure> {
    raw.trim()
        .parse::<usize>()
        .map_err(|_| bad(field, format!("not a non-negative integer: {raw:?}")))
}

fn fmt_point(p: Point2) -> String {
    format!("({:.6}, {:.6})", p.x, p.y)
}

/// Disks and centers to draw for a command output.
pub fn overlays_for(engine: &GeodesicEngine, output: &CommandOutput) -> Overlays {
    let mut overlays = Overlays::default();
    if let Some((centers, radius)) = output.disks() {
        let mut seen: Vec<Point2> = Vec::new();
        for &c in centers {
            if seen.iter().any(|q| q.dist(c) <= 1e-12) {
                continue;
            }
            seen.push(c);
            if let Ok(d) = disk_boundary(engine, c, radius) {
                overlays.disks.push(d);
            }
        }
        overlays.centers = centers.to_vec();
    }
    overlays
}

struct Outcome {
    output: CommandOutput,
    params: BTreeMap<String, serde_json::Value>,
    text: Vec<String>,
    code: i32,
}

fn execute(cmd: &Command, g: &GlobalArgs, engine: &GeodesicEngine) -> Result<Outcome, Failure> {
    let mode = match &g.approx_grid {
        Some(raw) => CandidateMode::Grid(positive("--approx-grid", raw)?),
        None => CandidateMode::Exact,
    };
    let mut params = BTreeMap::new();
    if let CandidateMode::Grid(h) = mode {
        params.insert("approx_grid".to_string(), json!(h));
    }
    let mut text = Vec::new();
    let mut code = 0;
    let output = match cmd {
        Command::PackUnit { .. } | Command::Pack { .. } => {
            let r = match cmd {
                Command::Pack { radius, .. } => positive("--radius", radius)?,
                _ => 1.0,
            };
            params.insert("radius".into(), json!(r));
            let res = greedy_packing(engine, r)?;
            text.push(format!("K={}", res.len()));
            text.push(format!("radius={r}"));
            text.extend(res.centers.iter().enumerate().map(|(i, c)| format!("center {i}: {}", fmt_point(*c))));
            CommandOutput::Packing {
                k: res.len(),
                steps: res.step_log.len(),
                centers: res.centers,
                radius: r,
            }
        }
        Command::CoverK { k, .. } => {
            let k = count("--k", k)?;
            params.insert("k".into(), json!(k));
            let res = k_cover_with(engine, k, mode)?;
            text.extend(res.centers.iter().enumerate().map(|(i, c)| format!("center {i}: {}", fmt_point(*c))));
            text.push(format!("radius={:.9}", res.radius));
            text.push(format!("certificate_delta={:.9}", res.placement.certificate_delta));
            if res.placement.saturated {
                text.push(format!("saturated after {} centers", res.centers.len()));
            }
            CommandOutput::KCover {
                centers: res.centers,
                radius: res.radius,
                certificate_delta: res.placement.certificate_delta,
                radii_trace: res.placement.radii_trace,
                saturated: res.placement.saturated,
            }
        }
        Command::PackK { k, .. } => {
            let k = count("--k", k)?;
            params.insert("k".into(), json!(k));
            let res = k_pack_with(engine, k, mode)?;
            text.extend(res.centers.iter().enumerate().map(|(i, c)| format!("center {i}: {}", fmt_point(*c))));
            text.push(format!("radius={:.9}", res.radius));
            CommandOutput::KPack {
                centers: res.centers,
                radius: res.radius,
            }
        }
        Command::Cover2 { radius: Some(raw), .. } => {
            let r = positive("--radius", raw)?;
            params.insert("radius".into(), json!(r));
            match test_two_disk_cover(engine, r)? {
                Some(w) => {
                    text.push(format!("witness c1={} c2={} r={raw}", fmt_point(w.c1), fmt_point(w.c2)));
                    CommandOutput::TwoCover {
                        feasible: true,
                        radius: r,
                        lower: None,
                        centers: vec![w.c1, w.c2],
                        check: Some(w.covered_check),
                    }
                }
                None => {
                    text.push(format!("no two-disk cover at r={raw}"));
                    code = 1;
                    CommandOutput::TwoCover {
                        feasible: false,
                        radius: r,
                        lower: None,
                        centers: Vec::new(),
                        check: None,
                    }
                }
            }
        }
        Command::Cover2 { eps, .. } => {
            let eps = match eps {
                Some(raw) => positive("--eps", raw)?,
                None => default_eps(engine)?,
            };
            params.insert("eps".into(), json!(eps));
            let res = min_two_cover(engine, eps)?;
            let w = res.witness;
            text.push(format!(
                "witness c1={} c2={} r={:.9}",
                fmt_point(w.c1),
                fmt_point(w.c2),
                w.r
            ));
            text.push(format!("lower={:.9}", res.lower));
            CommandOutput::TwoCover {
                feasible: true,
                radius: w.r,
                lower: Some(res.lower),
                centers: vec![w.c1, w.c2],
                check: Some(w.covered_check),
            }
        }
        Command::Verify { suite, budget, .. } => {
            let which: Suite = suite.parse().map_err(|e: Error| bad("--suite", e))?;
            let budget = count("--budget", budget)?.max(1);
            params.insert("suite".into(), json!(suite));
            params.insert("budget".into(), json!(budget));
            params.insert("seed".into(), json!(g.seed));
            let report = property_suites(engine, budget, g.seed, which);
            text.extend(report.lines());
            text.push(if report.passed() { "ALL PASS" } else { "FAILURES" }.to_string());
            if !report.passed() {
                code = 1;
            }
            CommandOutput::Verify {
                passed: report.passed(),
                results: report.results,
            }
        }
        Command::Render { result, .. } => {
            let svg = g.svg.as_ref().ok_or_else(|| bad("--svg", "render needs an output file"))?;
            if let Some(path) = result {
                params.insert("result".into(), json!(path.display().to_string()));
            }
            CommandOutput::Render {
                svg: svg.display().to_string(),
            }
        }
    };
    Ok(Outcome {
        output,
        params,
        text,
        code,
    })
}

fn polygon_path(cmd: &Command) -> &Path {
    match cmd {
        Command::PackUnit { polygon }
        | Command::Pack { polygon, .. }
        | Command::CoverK { polygon, .. }
        | Command::PackK { polygon, .. }
        | Command::Cover2 { polygon, .. }
        | Command::Verify { polygon, .. }
        | Command::Render { polygon, .. } => polygon,
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::PackUnit { .. } => "pack-unit",
        Command::Pack { .. } => "pack",
        Command::CoverK { .. } => "cover-k",
        Command::PackK { .. } => "pack-k",
        Command::Cover2 { .. } => "cover-2",
        Command::Verify { .. } => "verify",
        Command::Render { .. } => "render",
    }
}

fn run_parsed(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = &cli.global;
    let mut timings = BTreeMap::new();
    let t0 = Instant::now();
    let path = polygon_path(&cli.command);
    let (poly, bytes) = load_polygon(path)?;
    let engine = GeodesicEngine::new(poly);
    timings.insert("load".to_string(), t0.elapsed().as_secs_f64() * 1e3);

    let t1 = Instant::now();
    let outcome = execute(&cli.command, g, &engine)?;
    timings.insert("compute".to_string(), t1.elapsed().as_secs_f64() * 1e3);

    if let Some(svg_path) = &g.svg {
        let t2 = Instant::now();
        let overlays = match &cli.command {
            Command::Render { result: Some(rp), .. } => {
                let text = std::fs::read_to_string(rp).map_err(|e| bad("result", format!("{}: {e}", rp.display())))?;
                let rec = RunRecord::from_json(&text).map_err(|e| bad("result", e))?;
                overlays_for(&engine, &rec.output)
            }
            _ => overlays_for(&engine, &outcome.output),
        };
        std::fs::write(svg_path, render_svg(engine.polygon(), &overlays))
            .map_err(|e| bad("--svg", format!("{}: {e}", svg_path.display())))?;
        timings.insert("render".to_string(), t2.elapsed().as_secs_f64() * 1e3);
    }

    let record = RunRecord {
        command: CommandInfo {
            name: command_name(&cli.command).to_string(),
            params: outcome.params,
        },
        input: InputInfo {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
        },
        output: outcome.output,
        timings: g.timings.then_some(timings.clone()),
    };
    let mut write = |s: &str| {
        let _ = writeln!(out, "{s}");
    };
    if g.json {
        write(&record.to_json());
    } else if !g.quiet {
        for line in &outcome.text {
            write(line);
        }
        if g.timings {
            for (phase, ms) in &timings {
                write(&format!("time {phase}: {ms:.3} ms"));
            }
        }
    }
    Ok(outcome.code)
}

/// Runs the command line with explicit output streams; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match run_parsed(&cli, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            3
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

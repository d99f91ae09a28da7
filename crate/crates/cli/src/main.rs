//! Command-line driver: exact certification and replay of the 5/2 covering
//! theorem, distance estimation between polygon files, the brute-force grid
//! oracle, family scans, the cube/simplex check, and SVG figure output.
//!
//! Exit codes: 0 = success/pass, 1 = a certificate or check failed,
//! 2 = usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use centroid_bm::{
    certify_theorem_with, claim_scan, conjecture_scan, cube_simplex_check, emit_figures,
    estimate_distance, format_rational, grid_oracle_square_triangle, parse_rational,
    polygon_from_json, rat, rat_int, replay_ledger, unit_square, CertifierConfig, ConvexPolygon,
    DistanceEstimate, Fact, ProofLedger, Rational, ScanResult, SearchConfig, Tamper, Triangle,
    Verdict,
};
use centroid_bm::geometry3::Point3;
use clap::{Parser, Subcommand};
use serde::Serialize;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "centroid-bm",
    version,
    about = "Exact certificates and numeric estimates for centroid-pinned covering distances between convex polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the five-entry proof ledger and write it as replayable JSON.
    Certify {
        /// Ledger output path.
        #[arg(long, default_value = "proof_ledger.json")]
        output: PathBuf,
        /// Sweep grid step, a rational like "1/64" with denominator <= 4096.
        #[arg(long, default_value = "1/64")]
        grid_step: String,
        /// Deliberately weaken a covering threshold (negative-control hook).
        #[arg(long, hide = true)]
        tamper_case1: bool,
    },
    /// Re-verify a stored proof ledger under fresh rational arithmetic.
    Replay {
        /// Ledger JSON file produced by `certify`.
        path: PathBuf,
    },
    /// Estimate the covering distance between two polygon files.
    Distance {
        /// JSON file with the first polygon ({"vertices": [["x","y"], ...]}).
        body_c: PathBuf,
        /// JSON file with the second polygon.
        body_d: PathBuf,
        /// Coarse grid resolution per map parameter.
        #[arg(long)]
        coarse_grid_steps: Option<usize>,
        /// Pattern-search refinement rounds.
        #[arg(long)]
        refinement_rounds: Option<usize>,
        /// Step shrink factor per refinement round, a rational in (0, 1).
        #[arg(long)]
        shrink_factor: Option<String>,
        /// Reported precision target.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Also write the JSON report to this path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact minimum gauge over centered grid triangles in the square.
    OracleSearch {
        /// Grid subdivisions per half-side.
        #[arg(long, default_value_t = 4)]
        grid: u32,
        /// Also write the JSON report to this path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Scan inscribed centroid triangles of a centrally symmetric polygon
    /// against the tripling bound.
    Claim {
        /// Polygon JSON file; defaults to the unit square.
        #[arg(long)]
        body: Option<PathBuf>,
        /// Boundary samples per edge.
        #[arg(long, default_value_t = 8)]
        resolution: usize,
        /// Also write the JSON report to this path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Scan inscribed centroid triangles of a convex polygon against the
    /// quadrupling bound.
    Conjecture {
        /// Polygon JSON file; defaults to the unit square.
        #[arg(long)]
        body: Option<PathBuf>,
        /// Boundary samples per edge.
        #[arg(long, default_value_t = 8)]
        resolution: usize,
        /// Also write the JSON report to this path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Certify the cube/simplex containment and its exact gauge.
    CubeSimplex {
        /// Also write the JSON report to this path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Render the six SVG figures from computed data.
    Figures {
        /// Output directory.
        #[arg(long, default_value = "figures")]
        outdir: PathBuf,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    configure_threads()?;
    match Cli::parse().command {
        Command::Certify {
            output,
            grid_step,
            tamper_case1,
        } => cmd_certify(&output, &grid_step, tamper_case1),
        Command::Replay { path } => cmd_replay(&path),
        Command::Distance {
            body_c,
            body_d,
            coarse_grid_steps,
            refinement_rounds,
            shrink_factor,
            tolerance,
            output,
        } => cmd_distance(
            &body_c,
            &body_d,
            coarse_grid_steps,
            refinement_rounds,
            shrink_factor.as_deref(),
            tolerance,
            output.as_deref(),
        ),
        Command::OracleSearch { grid, output } => cmd_oracle(grid, output.as_deref()),
        Command::Claim {
            body,
            resolution,
            output,
        } => cmd_scan(ScanKind::Claim, body.as_deref(), resolution, output.as_deref()),
        Command::Conjecture {
            body,
            resolution,
            output,
        } => cmd_scan(
            ScanKind::Conjecture,
            body.as_deref(),
            resolution,
            output.as_deref(),
        ),
        Command::CubeSimplex { output } => cmd_cube_simplex(output.as_deref()),
        Command::Figures { outdir } => cmd_figures(&outdir),
    }
}

/// Honors CENTROID_BM_THREADS as a cap on worker parallelism.
fn configure_threads() -> Result<()> {
    if let Ok(raw) = std::env::var("CENTROID_BM_THREADS") {
        let n: usize = raw
            .trim()
            .parse()
            .map_err(|_| anyhow!("CENTROID_BM_THREADS must be a positive integer, got {raw:?}"))?;
        if n == 0 {
            return Err(anyhow!("CENTROID_BM_THREADS must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("thread pool configuration failed")?;
    }
    Ok(())
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
    }
}

fn load_polygon(path: &Path) -> Result<ConvexPolygon> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    polygon_from_json(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Prints the report as pretty JSON and optionally mirrors it to a file.
fn emit_report<T: Serialize>(report: &T, output: Option<&Path>) -> Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(report)?);
    print!("{text}");
    if let Some(path) = output {
        fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn cmd_certify(output: &Path, grid_step_raw: &str, tamper: bool) -> Result<ExitCode> {
    let grid_step =
        parse_rational(grid_step_raw).map_err(|e| anyhow!("invalid --grid-step: {e}"))?;
    let cfg = CertifierConfig {
        grid_step: grid_step.clone(),
        tamper: if tamper {
            Tamper::WeakenCase1Threshold
        } else {
            Tamper::None
        },
    };
    let ledger = certify_theorem_with(&cfg)?;
    let mut doc = serde_json::to_value(&ledger)?;
    doc["version"] = serde_json::json!(VERSION);
    doc["config"] = serde_json::json!({
        "command": "certify",
        "output": output.display().to_string(),
        "grid_step": format_rational(&grid_step),
        "tamper_case1": tamper,
    });
    let text = format!("{}\n", serde_json::to_string_pretty(&doc)?);
    fs::write(output, &text).with_context(|| format!("cannot write {}", output.display()))?;
    for entry in &ledger.entries {
        println!("entry {}: {}", entry.name, verdict_word(entry.verdict));
    }
    println!("theorem {}: {}", ledger.theorem, verdict_word(ledger.verdict));
    if ledger.verdict == Verdict::Pass {
        Ok(ExitCode::SUCCESS)
    } else {
        let first = ledger
            .entries
            .iter()
            .find(|e| e.verdict != Verdict::Pass)
            .map(|e| e.name.as_str())
            .unwrap_or("<none>");
        eprintln!("certification failed at entry {first}");
        Ok(ExitCode::from(1))
    }
}

fn cmd_replay(path: &Path) -> Result<ExitCode> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let ledger: ProofLedger = serde_json::from_str(&text)
        .map_err(|e| anyhow!("malformed ledger {}: {e}", path.display()))?;
    match replay_ledger(&ledger) {
        Ok(()) => {
            println!("replay: pass ({} entries verified)", ledger.entries.len());
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            println!("replay: fail - {e}");
            Ok(ExitCode::from(1))
        }
    }
}

#[derive(Serialize)]
struct DistanceConfig {
    command: &'static str,
    body_c: String,
    body_d: String,
    coarse_grid_steps: usize,
    refinement_rounds: usize,
    shrink_factor: String,
    tolerance: f64,
}

#[derive(Serialize)]
struct DistanceReport {
    version: &'static str,
    config: DistanceConfig,
    #[serde(flatten)]
    estimate: DistanceEstimate,
}

#[allow(clippy::too_many_arguments)]
fn cmd_distance(
    body_c: &Path,
    body_d: &Path,
    coarse_grid_steps: Option<usize>,
    refinement_rounds: Option<usize>,
    shrink_factor: Option<&str>,
    tolerance: Option<f64>,
    output: Option<&Path>,
) -> Result<ExitCode> {
    let c = load_polygon(body_c)?;
    let d = load_polygon(body_d)?;
    let mut cfg = SearchConfig::default();
    if let Some(v) = coarse_grid_steps {
        cfg.coarse_grid_steps = v;
    }
    if let Some(v) = refinement_rounds {
        cfg.refinement_rounds = v;
    }
    if let Some(raw) = shrink_factor {
        cfg.shrink_factor =
            parse_rational(raw).map_err(|e| anyhow!("invalid --shrink-factor: {e}"))?;
    }
    if let Some(v) = tolerance {
        cfg.tolerance = v;
    }
    let estimate = estimate_distance(&c, &d, &cfg)?;
    let report = DistanceReport {
        version: VERSION,
        config: DistanceConfig {
            command: "distance",
            body_c: body_c.display().to_string(),
            body_d: body_d.display().to_string(),
            coarse_grid_steps: cfg.coarse_grid_steps,
            refinement_rounds: cfg.refinement_rounds,
            shrink_factor: format_rational(&cfg.shrink_factor),
            tolerance: cfg.tolerance,
        },
        estimate,
    };
    emit_report(&report, output)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct OracleConfig {
    command: &'static str,
    grid: u32,
}

#[derive(Serialize)]
struct OracleReport {
    version: &'static str,
    config: OracleConfig,
    min_gauge: String,
    witness_vertices: Triangle,
}

fn cmd_oracle(grid: u32, output: Option<&Path>) -> Result<ExitCode> {
    let (min_gauge, witness) = grid_oracle_square_triangle(grid)?;
    let report = OracleReport {
        version: VERSION,
        config: OracleConfig {
            command: "oracle-search",
            grid,
        },
        min_gauge: format_rational(&min_gauge),
        witness_vertices: witness,
    };
    emit_report(&report, output)?;
    Ok(ExitCode::SUCCESS)
}

enum ScanKind {
    Claim,
    Conjecture,
}

#[derive(Serialize)]
struct ScanConfig {
    command: &'static str,
    body: String,
    resolution: usize,
}

#[derive(Serialize)]
struct ScanReport {
    version: &'static str,
    config: ScanConfig,
    body: ConvexPolygon,
    samples: u64,
    max_gauge: String,
    witness_triangle: Triangle,
}

fn cmd_scan(
    kind: ScanKind,
    body: Option<&Path>,
    resolution: usize,
    output: Option<&Path>,
) -> Result<ExitCode> {
    let (polygon, body_name) = match body {
        Some(p) => (load_polygon(p)?, p.display().to_string()),
        None => (unit_square(), "unit-square".to_string()),
    };
    let (command, scan, bound): (&'static str, ScanResult, Rational) = match kind {
        ScanKind::Claim => ("claim", claim_scan(&polygon, resolution)?, rat_int(3)),
        ScanKind::Conjecture => (
            "conjecture",
            conjecture_scan(&polygon, resolution)?,
            rat_int(4) + rat(1, 1_000_000_000),
        ),
    };
    let within_bound = scan.max_gauge <= bound;
    let report = ScanReport {
        version: VERSION,
        config: ScanConfig {
            command,
            body: body_name,
            resolution,
        },
        body: polygon,
        samples: scan.samples,
        max_gauge: format_rational(&scan.max_gauge),
        witness_triangle: scan.witness,
    };
    emit_report(&report, output)?;
    if within_bound {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "{command}: maximum gauge {} exceeds the bound {}",
            report.max_gauge,
            format_rational(&bound)
        );
        Ok(ExitCode::from(1))
    }
}

#[derive(Serialize)]
struct CubeSimplexConfig {
    command: &'static str,
}

#[derive(Serialize)]
struct CubeSimplexReport {
    version: &'static str,
    config: CubeSimplexConfig,
    body: Vec<Point3>,
    samples: usize,
    max_gauge: String,
    witness_triangle: Option<Triangle>,
}

fn cmd_cube_simplex(output: Option<&Path>) -> Result<ExitCode> {
    let cert = cube_simplex_check();
    let (simplex, gauge) = cert
        .steps
        .iter()
        .find_map(|s| match &s.fact {
            Fact::SimplexGauge { simplex, value, .. } => Some((simplex.clone(), value.clone())),
            _ => None,
        })
        .ok_or_else(|| anyhow!("gauge step missing from the certificate"))?;
    let report = CubeSimplexReport {
        version: VERSION,
        config: CubeSimplexConfig {
            command: "cube-simplex",
        },
        body: simplex,
        samples: 8,
        max_gauge: format_rational(&gauge),
        witness_triangle: None,
    };
    emit_report(&report, output)?;
    if cert.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "cube-simplex: failing step {}",
            cert.first_failing_step().unwrap_or("<none>")
        );
        Ok(ExitCode::from(1))
    }
}

#[derive(Serialize)]
struct FiguresConfig {
    command: &'static str,
    outdir: String,
}

#[derive(Serialize)]
struct FiguresReport {
    version: &'static str,
    config: FiguresConfig,
    files: Vec<String>,
}

fn cmd_figures(outdir: &Path) -> Result<ExitCode> {
    let files = emit_figures(outdir)?;
    let report = FiguresReport {
        version: VERSION,
        config: FiguresConfig {
            command: "figures",
            outdir: outdir.display().to_string(),
        },
        files: files.iter().map(|p| p.display().to_string()).collect(),
    };
    emit_report(&report, None)?;
    Ok(ExitCode::SUCCESS)
}

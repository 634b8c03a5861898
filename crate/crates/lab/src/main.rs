use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use symcone_lab::{explore_open_question, run_suite, Suite, SuiteConfig, SuiteReport, DEFAULT_COMPETITORS};

#[derive(Parser)]
#[command(name = "symcone-lab", version, about = "Property suites and experiments on symmetric cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Jordan-algebra and structure-algebra identities
    Identities(Opts),
    /// Cone connection, Thompson metric and group geometry
    Geometry(Opts),
    /// Geodesics against perturbed competitors
    Minimality(Opts),
    /// Horizontal lifts and quotient bounds
    Lift(Opts),
    /// Lengths of e^(tD) against perturbed group paths (data only)
    Explore(Opts),
}

#[derive(clap::Args)]
struct Opts {
    /// Algebra, e.g. sym:3, spin:4, rn:5 or sum:sym:2+rn:1
    #[arg(long, default_value = "sym:2")]
    algebra: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Threshold override (repeatable)
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tolerances: Vec<String>,
    /// Report path; JSON when it ends in .json, CSV otherwise
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the experiment data as CSV
    #[arg(long)]
    data: Option<PathBuf>,
    /// Competitor paths per trial
    #[arg(long, default_value_t = DEFAULT_COMPETITORS)]
    competitors: usize,
    /// Norm of the derivation D (explore only)
    #[arg(long, default_value_t = 1.0)]
    norm: f64,
}

impl Command {
    fn split(self) -> (Suite, Opts) {
        match self {
            Command::Identities(o) => (Suite::Identities, o),
            Command::Geometry(o) => (Suite::Geometry, o),
            Command::Minimality(o) => (Suite::Minimality, o),
            Command::Lift(o) => (Suite::Lift, o),
            Command::Explore(o) => (Suite::Explore, o),
        }
    }
}

fn write(path: &Path, contents: &str) -> Result<(), ExitCode> {
    fs::write(path, contents).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        ExitCode::from(1)
    })
}

fn report_text(report: &SuiteReport, path: &Path) -> String {
    match path.extension() {
        Some(ext) if ext == "json" => report.to_json(),
        _ => report.to_csv(),
    }
}

fn run(suite: Suite, opts: Opts) -> Result<ExitCode, ExitCode> {
    let cfg = SuiteConfig::new(suite, &opts.algebra, opts.trials, opts.seed, &opts.tolerances)
        .map_err(|e| {
            eprintln!("error: {e}");
            ExitCode::from(2)
        })?
        .with_out(opts.out.clone())
        .with_competitors(opts.competitors);
    let started = Instant::now();

    if suite == Suite::Explore {
        let table = explore_open_question(&cfg, opts.norm).map_err(|e| {
            eprintln!("error: {e}");
            ExitCode::from(2)
        })?;
        let csv = table.to_csv();
        match opts.out.as_deref().or(opts.data.as_deref()) {
            Some(p) => write(p, &csv)?,
            None => print!("{csv}"),
        }
        eprintln!("wall time {:.2?}", started.elapsed());
        return Ok(ExitCode::SUCCESS);
    }

    let report = run_suite(suite, &cfg).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(1)
    })?;
    print!("{}", report.summary());
    if let Some(p) = &cfg.out {
        write(p, &report_text(&report, p))?;
    }
    if let (Some(p), Some(t)) = (&opts.data, &report.data) {
        write(p, &t.to_csv())?;
    }
    eprintln!("wall time {:.2?}", report.wall_time);
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let (suite, opts) = Cli::parse().command.split();
    run(suite, opts).unwrap_or_else(|code| code)
}

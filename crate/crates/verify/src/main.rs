use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use milnor_ktk::{run, RunConfig, Status, SuiteId};

const THREADS_VAR: &str = "MILNOR_KTK_THREADS";

/// Runs verification suites over the truncated operator models.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
struct Cli {
    /// Suite to run; repeat for several. Default: all.
    #[arg(long = "suite", value_name = "ID")]
    suites: Vec<SuiteId>,
    /// Deformation parameter in (0, 1).
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    /// Fock truncation.
    #[arg(long = "N", default_value_t = 32)]
    n: usize,
    /// Circle window.
    #[arg(long = "M", default_value_t = 8)]
    m: usize,
    /// Boundary rows dropped by compression.
    #[arg(long, default_value_t = 2)]
    margin: usize,
    /// Run multi-leg spaces at full N.
    #[arg(long)]
    deep: bool,
    /// Write the JSON report here.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn threads() -> Option<usize> {
    std::env::var(THREADS_VAR).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = threads() {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("verify: {e}");
        }
    }
    let config = RunConfig {
        q: cli.q,
        n: cli.n,
        m: cli.m,
        margin: cli.margin,
        suites: cli.suites,
        seed: cli.seed,
        deep: cli.deep,
        ..RunConfig::default()
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    for r in &report.results {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        let defect = r.defect.map_or_else(|| "-".to_string(), |d| format!("{d:.3e}"));
        print!("{status:4}  {:<20} {:<40} {defect:>10}", r.suite.as_str(), r.check);
        match &r.detail {
            Some(d) => println!("  {d}"),
            None => println!(),
        }
    }
    let s = &report.summary;
    println!("{} checks: {} passed, {} failed, {} skipped", s.total, s.passed, s.failed, s.skipped);
    if let Some(path) = cli.json {
        if let Err(e) = fs::write(&path, report.to_json()) {
            eprintln!("verify: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Command-line front end: batch verification runs with JSON reports,
//! seeded oracle decompositions, and a deterministic demo walkthrough.
//!
//! Exit codes: 0 all checks pass, 1 suite failure (report still written),
//! 2 invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use modweyl::harness::{self, Report, RunConfig};

#[derive(Parser)]
#[command(
    name = "modweyl",
    version,
    about = "Finite-scale Weyl systems on Hilbert modules: verification and decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; without --config, sweep the default grid.
    Verify {
        /// Path to a JSON run configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the configured tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Replace the configured seed list with a single seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Report path (overrides the config's report field).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Decompose a seeded multiplicity-m oracle for the configured system.
    Decompose {
        #[arg(long)]
        config: PathBuf,
        /// Oracle multiplicity.
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Print the deterministic walkthrough.
    Demo,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify {
            config,
            tol,
            seed,
            report,
        } => verify(config, tol, seed, report),
        Command::Decompose { config, m, seed } => decompose(config, m, seed),
        Command::Demo => demo(),
    }
}

fn load_config(path: &PathBuf) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    RunConfig::from_json(&text).map_err(|e| format!("{e}"))
}

fn apply_overrides(
    mut cfg: RunConfig,
    tol: Option<f64>,
    seed: Option<u64>,
    report: &Option<PathBuf>,
) -> RunConfig {
    if let Some(t) = tol {
        cfg.tolerance = t;
    }
    if let Some(s) = seed {
        cfg.seeds = vec![s];
    }
    if let Some(p) = report {
        cfg.report = Some(p.display().to_string());
    }
    cfg
}

fn print_summary(report: &Report) {
    for suite in &report.suites {
        println!(
            "[{}] {:<14} worst residual {:.3e} (tolerance {:.1e}){}",
            if suite.passed() { "pass" } else { "FAIL" },
            suite.name,
            suite.worst_residual,
            suite.tolerance,
            suite
                .witness
                .as_ref()
                .map(|w| format!("  {w}"))
                .unwrap_or_default()
        );
    }
}

fn verify(
    config: Option<PathBuf>,
    tol: Option<f64>,
    seed: Option<u64>,
    report: Option<PathBuf>,
) -> ExitCode {
    let configs = match &config {
        Some(path) => match load_config(path) {
            Ok(cfg) => vec![apply_overrides(cfg, tol, seed, &report)],
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
        },
        None => harness::default_grid()
            .into_iter()
            .map(|cfg| apply_overrides(cfg, tol, seed, &None))
            .collect(),
    };
    // validate everything before running anything
    for cfg in &configs {
        if let Err(e) = cfg.resolve() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut all_pass = true;
    let mut reports = Vec::new();
    for cfg in &configs {
        match harness::run(cfg) {
            Ok(rep) => {
                if configs.len() > 1 {
                    println!(
                        "== group {:?}, d = {}, action {}",
                        cfg.group,
                        cfg.dim,
                        match &cfg.action {
                            harness::ActionSpec::Named(n) => n.clone(),
                            harness::ActionSpec::Generators { .. } => "twisted".into(),
                        }
                    );
                }
                print_summary(&rep);
                all_pass &= rep.passed();
                reports.push(rep);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }
    // grid mode with an explicit report path: write the collection
    if config.is_none() {
        if let Some(path) = &report {
            let values: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| serde_json::to_value(r).expect("report serializes"))
                .collect();
            let body = serde_json::to_string_pretty(&values).expect("report array serializes");
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(2);
            }
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn decompose(config: PathBuf, m: usize, seed: u64) -> ExitCode {
    let cfg = match load_config(&config) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match harness::decompose_record(&cfg, m, seed) {
        Ok(record) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&record).expect("record serializes")
            );
            ExitCode::SUCCESS
        }
        Err(modweyl::Error::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn demo() -> ExitCode {
    match harness::demo() {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hyperspinor_cli::error::CliError;
use hyperspinor_cli::{init_threads, invocation, lookup, render, scenarios, write_output};

/// Run one acceptance scenario and write its report.
#[derive(Parser, Debug)]
#[command(name = "hyperspinor", version)]
struct Args {
    /// Scenario name, or `list`.
    scenario: String,
    /// Dimension(s) n of hyperbolic space, comma separated.
    #[arg(long)]
    n: Option<String>,
    /// M-type label(s): plus, minus or full.
    #[arg(long)]
    sigma: Option<String>,
    /// Spectral parameters, comma separated.
    #[arg(long)]
    lambda: Option<String>,
    /// Radii or times, comma separated.
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    rmax: Option<String>,
    /// Grid order.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    out: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run(args: Args) -> Result<bool, CliError> {
    init_threads()?;
    if args.scenario == "list" {
        for s in scenarios::all() {
            println!("{:<22} criterion {:>2}  {}", s.name, s.criterion, s.text);
        }
        return Ok(true);
    }
    let scenario = lookup(&args.scenario)?;
    let mut flags = BTreeMap::new();
    for (key, value) in [
        ("n", args.n),
        ("sigma", args.sigma),
        ("lambda", args.lambda),
        ("t", args.t),
        ("rmax", args.rmax),
        ("grid", args.grid),
        ("seed", args.seed),
        ("samples", args.samples),
        ("out", args.out),
        ("format", args.format),
    ] {
        if let Some(v) = value {
            flags.insert(key.to_string(), v);
        }
    }
    let inv = invocation(scenario, args.config.as_deref(), flags)?;
    let report = scenario.run(&inv.settings)?;
    write_output(&render(&report, inv.format)?, inv.out.as_deref())?;
    if !report.passed {
        for note in report.notes.iter().filter(|n| n.starts_with("FAILED")) {
            eprintln!("{note}");
        }
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ CliError::Usage(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

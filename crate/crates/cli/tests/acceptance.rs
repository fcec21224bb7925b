//! Runs every scenario at its default settings and prints one PASS/FAIL line
//! per acceptance criterion. Criteria in `KNOWN_FAILURES` fail for reasons
//! recorded in the README; the target exits nonzero only when the failing set
//! differs from that list.

use std::process::ExitCode;
use std::time::Instant;

use hyperspinor_cli::scenarios;

/// Criteria whose literal constants or thresholds do not hold numerically.
const KNOWN_FAILURES: &[u32] = &[7, 8, 12];

/// Wall-time budget per criterion, in seconds.
const BUDGET_S: [f64; 15] = [
    1.0, 10.0, 30.0, 10.0, 5.0, 120.0, 60.0, 60.0, 60.0, 60.0, 120.0, 600.0, 600.0, 600.0, 900.0,
];

/// Summary keys printed as informational lines.
const INFO_KEYS: &[&str] = &["factor_", "gamma0_", "printed_density_ratio_n", "matrix_parameter", "off_block_slope"];

fn main() -> ExitCode {
    let mut failing = Vec::new();
    let mut broken = false;
    for scenario in scenarios::all() {
        let budget = BUDGET_S[scenario.criterion as usize - 1];
        let start = Instant::now();
        let outcome = scenario.run(&scenario.defaults());
        let elapsed = start.elapsed().as_secs_f64();
        let report = match outcome {
            Ok(report) => report,
            Err(e) => {
                println!("criterion {:>2} {:<22} ERROR {e}", scenario.criterion, scenario.name);
                failing.push(scenario.criterion);
                broken = true;
                continue;
            }
        };
        let in_time = elapsed <= budget;
        let ok = report.passed && in_time;
        println!(
            "criterion {:>2} {:<22} {}  ({elapsed:.2}s of {budget:.0}s)",
            scenario.criterion,
            scenario.name,
            if ok { "PASS" } else { "FAIL" }
        );
        if !in_time {
            println!("    over time budget");
        }
        for note in report.notes.iter().filter(|n| n.starts_with("FAILED")) {
            println!("    {note}");
        }
        for (key, value) in &report.summary {
            if INFO_KEYS.iter().any(|k| key.contains(k)) {
                println!("    info {key} = {value:.6e}");
            }
        }
        if !ok {
            failing.push(scenario.criterion);
        }
    }

    // Off-block decay of the Fatou limit over a longer t range.
    if let Some(fatou) = scenarios::find("fatou-limit") {
        let mut settings = fatou.defaults();
        settings.t = vec![6.0, 8.0, 10.0, 12.0, 14.0];
        if let Ok(report) = fatou.run(&settings) {
            for (key, value) in report.summary.iter().filter(|(k, _)| k.contains("off_block_slope")) {
                println!("info fatou t=6..14 {key} = {value:.4}");
            }
        }
    }

    let passed = 15 - failing.len();
    println!("{passed}/15 criteria pass; failing: {failing:?}; known: {KNOWN_FAILURES:?}");
    if broken || failing != KNOWN_FAILURES {
        println!("failing set differs from the known failures");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}

//! Desk-scale replication of the selection study: four model presets,
//! AIC vs BIC, correct/overfit/underfit rates.
//!
//! This runs 100 replications per cell to stay quick; pass a rep count as
//! the first argument (e.g. `cargo run --release --example table1 500`)
//! for the full study.

use glmsel::harness::{run_experiment, ExperimentConfig, ModelPreset};

fn main() -> glmsel::Result<()> {
    let reps: usize = std::env::args()
        .nth(1)
        .and_then(|v| v.parse().ok())
        .unwrap_or(100);

    println!("{:<11} {:>6} {:>4} {:>9} {:>9} {:>9} {:>9}", "model", "method", "n", "correct", "overfit", "underfit", "mse");
    for model in [
        ModelPreset::Nbr,
        ModelPreset::Probit,
        ModelPreset::DepLmMr2,
        ModelPreset::DepLmMr3,
    ] {
        for n in [100, 300] {
            let cfg = ExperimentConfig::preset(model.clone(), n, reps, 42)?;
            let report = run_experiment(&cfg)?;
            for row in &report.rows {
                println!(
                    "{:<11} {:>6} {:>4} {:>9.4} {:>9.4} {:>9.4} {:>9.4}",
                    row.model,
                    row.method,
                    row.sample_size,
                    row.correct_rate,
                    row.overfit_rate,
                    row.underfit_rate,
                    row.mse
                );
            }
        }
    }
    Ok(())
}

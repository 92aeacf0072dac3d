//! Regularity-condition diagnostics: eigenvalue scaling of the Fisher
//! information across sample sizes, design boundedness, and what a
//! rank-deficient design looks like in the report.

use glmsel::asymptotics::{condition_check, eigen_growth_slope, LilScenario, ResponseProcess};
use glmsel::estimation::Dataset;
use glmsel::family::FamilyModel;
use glmsel::numerics::RngStream;
use glmsel::selection::ModelSubset;
use glmsel::simulate::CovariateLaw;

fn main() -> glmsel::Result<()> {
    let beta0 = vec![0.5, 0.5, 0.5, 0.0, 0.0, 0.0];
    let fam = FamilyModel::logit();
    let scenario = LilScenario {
        family: fam,
        beta0: beta0.clone(),
        alpha: ModelSubset::support_of(&beta0)?,
        law: CovariateLaw::Uniform01,
        response: ResponseProcess::Independent,
    };
    let full = scenario.dataset(1600, RngStream::new(31, 0))?;

    println!("logit, U(0,1) design:");
    let mut points = Vec::new();
    for n in [100, 400, 1600] {
        let ds = full.prefix(n)?;
        let report = condition_check(&ds, &fam, &beta0)?;
        println!(
            "  n={n:>5}: lambda_min/n={:.4}, lambda_max/n={:.4}, max|x|={:.3}, violation={}",
            report.lambda_min_over_n,
            report.lambda_max_over_n,
            report.max_abs_x,
            report.eigenvalue_violation
        );
        points.push((n, report.lambda_max_over_n * n as f64));
    }
    let slope = eigen_growth_slope(&points)?;
    println!("  log-log growth slope of lambda_max: {slope:.3} (linear growth is ~1)");

    // A duplicated column destroys the smallest eigenvalue.
    let mut x = Vec::new();
    for i in 0..200 {
        let v = (i as f64 + 1.0) / 200.0;
        x.push(v);
        x.push(v);
    }
    let ds = Dataset::new(x, vec![0.0; 200], 2)?;
    let report = condition_check(&ds, &FamilyModel::gaussian(), &[0.0, 0.0])?;
    println!(
        "duplicated column: lambda_min/n={:.2e}, violation={}",
        report.lambda_min_over_n, report.eigenvalue_violation
    );
    Ok(())
}

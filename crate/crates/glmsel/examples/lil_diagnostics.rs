//! Iterated-logarithm diagnostics: track the normalized coefficient error
//! `||beta_hat_n - beta0|| / sqrt(log log n / n)` along one growing sample,
//! for independent and weakly dependent gaussian responses, plus the
//! normalized score trajectory of a single component.

use glmsel::asymptotics::{lil_trajectory, score_lil_ratios, LilScenario, ResponseProcess};
use glmsel::numerics::RngStream;
use glmsel::simulate::ErrorProcessSpec;

fn main() -> glmsel::Result<()> {
    let grid = [200, 500, 1000, 2000, 5000];
    let beta0 = vec![0.5, 0.5, 0.5, 0.0, 0.0, 0.0];

    for (name, response) in [
        ("iid", ResponseProcess::AdditiveError(ErrorProcessSpec::iid(1.0))),
        ("ar1(0.5)", ResponseProcess::AdditiveError(ErrorProcessSpec::ar1(0.5, 1.0))),
        ("ma(0.5,0.3)", ResponseProcess::AdditiveError(ErrorProcessSpec::ma(vec![0.5, 0.3], 1.0))),
    ] {
        let scenario = LilScenario::gaussian(beta0.clone(), response)?;
        println!("errors: {name}");
        for rep in 0..3 {
            let traj = lil_trajectory(&scenario, &grid, RngStream::new(99, rep))?;
            let cells: Vec<String> = traj
                .n_grid
                .iter()
                .zip(&traj.ratios)
                .map(|(n, r)| match r {
                    Some(r) => format!("n={n}: {r:.3}"),
                    None => format!("n={n}: fit failed"),
                })
                .collect();
            println!("  rep {rep}: {}", cells.join("  "));
        }
    }

    // Score-component ratios stay bounded at the true parameter.
    let scenario = LilScenario::gaussian(
        beta0.clone(),
        ResponseProcess::AdditiveError(ErrorProcessSpec::iid(1.0)),
    )?;
    let ds = scenario.dataset(5000, RngStream::new(5, 0))?;
    let ratios = score_lil_ratios(&ds, &scenario.family, &beta0, 0, &grid)?;
    println!("score component 1 ratios: {ratios:?}");
    Ok(())
}

//! Weakly dependent error generators: stationary AR(1) and moving-average
//! processes, with empirical autocorrelations against their theory values.

use glmsel::numerics::RngStream;
use glmsel::simulate::ErrorProcessSpec;

fn autocorr(v: &[f64], lag: usize) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    let cov = (0..v.len() - lag)
        .map(|i| (v[i] - mean) * (v[i + lag] - mean))
        .sum::<f64>()
        / n;
    cov / var
}

fn main() -> glmsel::Result<()> {
    let n = 200_000;

    let ar = ErrorProcessSpec::ar1(0.5, 1.0);
    let (eps, _) = ar.gen_errors(n, RngStream::new(11, 0))?;
    println!("AR(1), coeff 0.5, stationary variance {:.4}", ar.stationary_variance());
    for lag in 1..=6 {
        println!(
            "  lag {lag}: empirical {:+.4}, theory {:+.4}",
            autocorr(&eps, lag),
            0.5_f64.powi(lag as i32)
        );
    }

    let ma = ErrorProcessSpec::ma(vec![0.5, 0.3], 1.0);
    let (eps, _) = ma.gen_errors(n, RngStream::new(11, 1))?;
    println!("MA(2), coeffs (0.5, 0.3), stationary variance {:.4}", ma.stationary_variance());
    // theory: rho(1) = (0.5 + 0.5*0.3) / 1.34, rho(2) = 0.3 / 1.34, 0 beyond.
    let theory = [0.65 / 1.34, 0.3 / 1.34, 0.0, 0.0];
    for lag in 1..=4 {
        println!(
            "  lag {lag}: empirical {:+.4}, theory {:+.4}",
            autocorr(&eps, lag),
            theory[lag - 1]
        );
    }

    // m-dependence in action: everything beyond lag q sits in the noise band.
    let band = 4.0 / (n as f64).sqrt();
    println!("noise band +/-{band:.4}");
    Ok(())
}

//! Empirical diagnostics for the strong limit behavior of the weighted MLE:
//! iterated-logarithm ratio trajectories for coefficients and scores,
//! log-likelihood gap reports for correct and wrong sub-models, and
//! regularity-condition checks on the Fisher information and design.

use crate::error::{Error, Result};
use crate::estimation::{fisher_info, fit, score, weighted_loglik, Dataset, SolverOptions};
use crate::family::FamilyModel;
use crate::numerics::{eig_extremes, RngStream};
use crate::selection::ModelSubset;
use crate::simulate::{
    gen_dependent_glm, gen_design, gen_glm_responses, CovariateLaw, DesignSpec, ErrorProcessSpec,
};

/// Numeric bounds frozen from the pre-registered calibration run
/// (`cargo run --release --example calibrate`, 500/1000 reps — 10x the
/// replication counts of the checks that consume them). The limit theorems
/// fix orders, not constants, so the constants are measured once and
/// pinned here with ~1.4x headroom over the observed extremes.
pub mod calibrated {
    /// Per-rep ceiling for the max normalized coefficient ratio, iid
    /// errors (calibration max 3.30 over 500 reps).
    pub const RATIO_CEILING_IID: f64 = 4.5;
    /// Ceiling for AR(1) coefficient-0.5 errors (calibration max 3.79).
    pub const RATIO_CEILING_AR1: f64 = 5.5;
    /// Ceiling for MA(0.5, 0.3) errors (calibration max 4.12).
    pub const RATIO_CEILING_MA2: f64 = 6.0;
    /// Floor for the median ratio at the largest grid point; calibration
    /// medians at n=5000 were 1.01-1.29 with 5th percentiles 0.38-0.51.
    /// The ratio must stay away from zero, not from any particular value.
    pub const MEDIAN_RATIO_FLOOR: f64 = 0.25;
    /// `gap_correct <= GAP_CORRECT_LOGLOG_COEFF * log log n`; calibration
    /// max over the strong-signal run was 4.53, and the 99th percentile of
    /// the weak-signal dependent runs stayed below 6.7.
    pub const GAP_CORRECT_LOGLOG_COEFF: f64 = 7.0;
    /// Wrong models satisfy `gap_wrong_per_n < -GAP_WRONG_MARGIN`; the
    /// largest calibrated wrong-model gap was -0.149 per observation.
    pub const GAP_WRONG_MARGIN: f64 = 0.07;
    /// Exact-dominance slack for `gap_correct >= -GAP_CORRECT_SLACK`.
    pub const GAP_CORRECT_SLACK: f64 = 1e-6;
}

/// Smallest admissible trajectory grid point (`log log n` must stay
/// comfortably positive).
pub const MIN_GRID_N: usize = 16;

/// How responses are generated in a diagnostic scenario.
#[derive(Debug, Clone)]
pub enum ResponseProcess {
    /// Independent draws from the family's sampling model.
    Independent,
    /// Additive weakly dependent errors (gaussian-identity only).
    AdditiveError(ErrorProcessSpec),
}

/// A data-generating scenario for the trajectory diagnostics.
#[derive(Debug, Clone)]
pub struct LilScenario {
    pub family: FamilyModel,
    pub beta0: Vec<f64>,
    /// The correct sub-model fitted along the trajectory.
    pub alpha: ModelSubset,
    pub law: CovariateLaw,
    pub response: ResponseProcess,
}

impl LilScenario {
    /// Gaussian responses with the given error process on a standardized
    /// uniform design; `alpha` is the simplest correct model.
    pub fn gaussian(beta0: Vec<f64>, response: ResponseProcess) -> Result<Self> {
        let alpha = ModelSubset::support_of(&beta0)?;
        Ok(Self {
            family: FamilyModel::gaussian(),
            beta0,
            alpha,
            law: CovariateLaw::uniform_standardized(),
            response,
        })
    }

    /// Generates the scenario's dataset at size `n`; pure in
    /// `(self, n, stream)`.
    pub fn dataset(&self, n: usize, stream: RngStream) -> Result<Dataset> {
        let (design, s) = gen_design(&DesignSpec {
            n,
            p_signal: self.beta0.len(),
            p_noise: 0,
            law: self.law,
            seed: stream,
        })?;
        let (y, _) = match &self.response {
            ResponseProcess::Independent => {
                gen_glm_responses(&design, &self.family, &self.beta0, s)?
            }
            ResponseProcess::AdditiveError(err) => {
                gen_dependent_glm(&design, &self.family, &self.beta0, err, s)?
            }
        };
        design.into_dataset(y)
    }
}

/// One replication's normalized coefficient-error trajectory.
#[derive(Debug, Clone)]
pub struct LilTrajectory {
    pub rep_id: u64,
    pub n_grid: Vec<usize>,
    /// `||beta_hat_n - beta0|| / sqrt(log log n / n)` per grid point;
    /// `None` where the fit did not converge.
    pub ratios: Vec<Option<f64>>,
}

impl LilTrajectory {
    /// Largest finite ratio over the grid, if any fit converged.
    pub fn max_ratio(&self) -> Option<f64> {
        self.ratios
            .iter()
            .flatten()
            .copied()
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
    }
}

/// The iterated-logarithm normalizer `sqrt(log log n / n)`.
pub fn lil_normalizer(n: usize) -> f64 {
    ((n as f64).ln().ln() / n as f64).sqrt()
}

/// Fits the correct sub-model along nested prefixes of one growing sample
/// and records the normalized coefficient error at each grid point.
///
/// The sample is generated once at the largest grid point and restricted to
/// its first `n` observations per point: the limit statement concerns a
/// single growing path, not independent samples.
pub fn lil_trajectory(
    scenario: &LilScenario,
    n_grid: &[usize],
    stream: RngStream,
) -> Result<LilTrajectory> {
    validate_grid(n_grid)?;
    let n_max = *n_grid.last().expect("non-empty grid");
    let full = scenario.dataset(n_max, stream)?;
    let sub_full = full.columns(scenario.alpha)?;
    let beta0_sub: Vec<f64> = scenario
        .alpha
        .indices()
        .iter()
        .map(|&j| scenario.beta0[j])
        .collect();

    let opts = SolverOptions::default();
    let mut ratios = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        let ds = sub_full.prefix(n)?;
        let res = fit(&ds, &scenario.family, &opts)?;
        if res.converged {
            let err: f64 = res
                .beta_hat
                .iter()
                .zip(&beta0_sub)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            ratios.push(Some(err / lil_normalizer(n)));
        } else {
            ratios.push(None);
        }
    }
    Ok(LilTrajectory {
        rep_id: stream.stream_id(),
        n_grid: n_grid.to_vec(),
        ratios,
    })
}

/// Normalized score components
/// `|S_n(beta0)_j| / sqrt(2 I_n(j,j) log log I_n(j,j))` along prefixes of
/// `ds`.
///
/// Requires the information diagonal to exceed `e` at every grid point so
/// the inner logarithm stays positive.
pub fn score_lil_ratios(
    ds: &Dataset,
    fam: &FamilyModel,
    beta0: &[f64],
    component: usize,
    n_grid: &[usize],
) -> Result<Vec<f64>> {
    validate_grid(n_grid)?;
    if component >= ds.p() {
        return Err(Error::Dimension(format!(
            "component {component} out of range for p={}",
            ds.p()
        )));
    }
    if *n_grid.last().expect("non-empty grid") > ds.n() {
        return Err(Error::Dimension(format!(
            "grid exceeds dataset size {}",
            ds.n()
        )));
    }
    let mut out = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        let prefix = ds.prefix(n)?;
        let s = score(&prefix, fam, beta0)?;
        let info = fisher_info(&prefix, fam, beta0)?;
        let diag = info.get(component, component);
        if diag <= std::f64::consts::E {
            return Err(Error::DegenerateInformation { value: diag });
        }
        out.push(s[component].abs() / (2.0 * diag * diag.ln().ln()).sqrt());
    }
    Ok(out)
}

/// Log-likelihood gaps of fitted sub-models against the true parameter.
#[derive(Debug, Clone, Copy)]
pub struct GapReport {
    pub n: usize,
    /// `l_n(beta_hat(alpha_correct)) - l_n(beta0)`; nonnegative up to
    /// solver tolerance because the MLE dominates the truth on correct
    /// models.
    pub gap_correct: f64,
    /// `[l_n(beta_hat(alpha_wrong)) - l_n(beta0)] / n`; strictly negative
    /// in the large-sample limit for wrong models.
    pub gap_wrong_per_n: f64,
}

/// Computes both gap statistics on one dataset with known truth.
pub fn gap_report(
    ds: &Dataset,
    fam: &FamilyModel,
    beta0: &[f64],
    alpha_correct: ModelSubset,
    alpha_wrong: ModelSubset,
) -> Result<GapReport> {
    let support = ModelSubset::support_of(beta0)?;
    if !alpha_correct.is_superset_of(support) {
        return Err(Error::InvalidConfig(format!(
            "alpha_correct {alpha_correct} does not cover the support {support}"
        )));
    }
    if alpha_wrong.is_superset_of(support) {
        return Err(Error::InvalidConfig(format!(
            "alpha_wrong {alpha_wrong} misses no support index"
        )));
    }
    let opts = SolverOptions::default();
    let ll0 = weighted_loglik(ds, fam, beta0)?;
    let fit_correct = fit(&ds.columns(alpha_correct)?, fam, &opts)?;
    let fit_wrong = fit(&ds.columns(alpha_wrong)?, fam, &opts)?;
    Ok(GapReport {
        n: ds.n(),
        gap_correct: fit_correct.loglik - ll0,
        gap_wrong_per_n: (fit_wrong.loglik - ll0) / ds.n() as f64,
    })
}

/// Empirical regularity-condition report at one sample size.
#[derive(Debug, Clone, Copy)]
pub struct ConditionReport {
    pub n: usize,
    /// `lambda_min(I_n(beta0)) / n`.
    pub lambda_min_over_n: f64,
    /// `lambda_max(I_n(beta0)) / n`.
    pub lambda_max_over_n: f64,
    /// The design bound `max |x_ij|`.
    pub max_abs_x: f64,
    /// Set when the information matrix fails strict positive definiteness.
    pub eigenvalue_violation: bool,
}

/// Checks the eigenvalue and boundedness conditions at `beta0`.
pub fn condition_check(ds: &Dataset, fam: &FamilyModel, beta0: &[f64]) -> Result<ConditionReport> {
    let info = fisher_info(ds, fam, beta0)?;
    let (lo, hi) = eig_extremes(&info);
    let n = ds.n() as f64;
    Ok(ConditionReport {
        n: ds.n(),
        lambda_min_over_n: lo / n,
        lambda_max_over_n: hi / n,
        max_abs_x: ds.max_abs_x(),
        eigenvalue_violation: lo <= 0.0,
    })
}

/// Least-squares slope of `log lambda` against `log n`; linear information
/// growth shows up as a slope near 1.
pub fn eigen_growth_slope(points: &[(usize, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InvalidConfig(
            "growth slope needs at least two points".into(),
        ));
    }
    if points.iter().any(|&(_, l)| l <= 0.0) {
        return Err(Error::InvalidParameter(
            "growth slope needs positive eigenvalues".into(),
        ));
    }
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, l)| ((n as f64).ln(), l.ln()))
        .collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(sxy / sxx)
}

fn validate_grid(n_grid: &[usize]) -> Result<()> {
    if n_grid.is_empty() {
        return Err(Error::InvalidConfig("empty n grid".into()));
    }
    if n_grid[0] < MIN_GRID_N {
        return Err(Error::InvalidConfig(format!(
            "grid must start at n >= {MIN_GRID_N}, got {}",
            n_grid[0]
        )));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig("grid must be strictly increasing".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::gen_design;
    use approx::assert_relative_eq;

    fn gaussian_dataset(n: usize, beta0: &[f64], seed: u64) -> Dataset {
        let scn = LilScenario::gaussian(beta0.to_vec(), ResponseProcess::Independent).unwrap();
        scn.dataset(n, RngStream::new(seed, 0)).unwrap()
    }

    #[test]
    fn grid_validation() {
        let scn =
            LilScenario::gaussian(vec![0.5, 0.0], ResponseProcess::Independent).unwrap();
        let s = RngStream::new(1, 0);
        assert!(lil_trajectory(&scn, &[], s).is_err());
        assert!(lil_trajectory(&scn, &[8, 32], s).is_err());
        assert!(lil_trajectory(&scn, &[32, 32], s).is_err());
        assert!(lil_trajectory(&scn, &[32, 64], s).is_ok());
    }

    #[test]
    fn forced_truth_gives_zero_ratio() {
        // With y set exactly to the mean surface, the gaussian MLE is beta0
        // and the normalized ratio vanishes.
        let beta0 = [0.7, -0.2];
        let (design, _) = gen_design(&DesignSpec {
            n: 64,
            p_signal: 2,
            p_noise: 0,
            law: CovariateLaw::Uniform01,
            seed: RngStream::new(5, 0),
        })
        .unwrap();
        let y = design.linear_predictor(&beta0).unwrap();
        let ds = design.into_dataset(y).unwrap();
        let res = fit(&ds, &FamilyModel::gaussian(), &SolverOptions::default()).unwrap();
        let err: f64 = res
            .beta_hat
            .iter()
            .zip(&beta0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        assert!(err / lil_normalizer(64) < 1e-6);
    }

    #[test]
    fn trajectory_ratios_are_finite_and_nonnegative() {
        let scn = LilScenario::gaussian(
            vec![0.5, 0.5, 0.5, 0.0, 0.0, 0.0],
            ResponseProcess::Independent,
        )
        .unwrap();
        let traj = lil_trajectory(&scn, &[50, 100, 200], RngStream::new(11, 3)).unwrap();
        assert_eq!(traj.rep_id, 3);
        assert_eq!(traj.ratios.len(), 3);
        for r in traj.ratios.iter().flatten() {
            assert!(r.is_finite() && *r >= 0.0);
        }
        assert!(traj.max_ratio().is_some());
    }

    #[test]
    fn score_ratio_zero_at_exact_mean() {
        let beta0 = [0.4, 0.1];
        let (design, _) = gen_design(&DesignSpec {
            n: 256,
            p_signal: 2,
            p_noise: 0,
            law: CovariateLaw::Uniform01,
            seed: RngStream::new(13, 0),
        })
        .unwrap();
        let y = design.linear_predictor(&beta0).unwrap();
        let ds = design.into_dataset(y).unwrap();
        let ratios =
            score_lil_ratios(&ds, &FamilyModel::gaussian(), &beta0, 0, &[64, 128, 256]).unwrap();
        for r in ratios {
            assert!(r.abs() < 1e-10);
        }
    }

    #[test]
    fn score_ratio_requires_information_above_e() {
        // A design of tiny entries keeps I(j,j) below e.
        let ds = Dataset::new(vec![1e-6; 32], vec![0.0; 32], 1).unwrap();
        let res = score_lil_ratios(&ds, &FamilyModel::gaussian(), &[0.0], 0, &[32]);
        assert!(matches!(res, Err(Error::DegenerateInformation { .. })));
    }

    #[test]
    fn score_ratio_band_across_reps() {
        // At the true parameter the normalized score component stays in a
        // narrow band: within (0, 3) in at least 99% of 200 seeded reps at
        // n = 10^4, and the dependent-error case is bounded within a
        // factor 3 of the iid case.
        let beta0 = vec![0.5, 0.5, 0.5, 0.0, 0.0, 0.0];
        let mut max_by_kind = Vec::new();
        for err in [ErrorProcessSpec::iid(1.0), ErrorProcessSpec::ar1(0.5, 1.0)] {
            let scn = LilScenario::gaussian(
                beta0.clone(),
                ResponseProcess::AdditiveError(err),
            )
            .unwrap();
            let reps = if max_by_kind.is_empty() { 200 } else { 50 };
            let mut inside = 0;
            let mut max_ratio = 0.0_f64;
            for rep in 0..reps {
                let ds = scn.dataset(10_000, RngStream::new(404, rep)).unwrap();
                let r = score_lil_ratios(&ds, &scn.family, &beta0, 0, &[10_000]).unwrap()[0];
                if r > 0.0 && r < 3.0 {
                    inside += 1;
                }
                max_ratio = max_ratio.max(r);
            }
            if max_by_kind.is_empty() {
                assert!(
                    inside as f64 >= 0.99 * reps as f64,
                    "iid: only {inside}/{reps} ratios inside (0, 3)"
                );
            }
            max_by_kind.push(max_ratio);
        }
        assert!(
            max_by_kind[1] <= 3.0 * max_by_kind[0].max(1.0),
            "dependent-case max {} vs iid max {}",
            max_by_kind[1],
            max_by_kind[0]
        );
    }

    #[test]
    fn gap_report_signs_in_strong_signal_regime() {
        let beta0 = [3.0, 3.0, 3.0, 0.0, 0.0, 0.0];
        let ds = gaussian_dataset(2000, &beta0, 17);
        let fam = FamilyModel::gaussian();
        let correct = ModelSubset::from_indices(&[0, 1, 2, 3, 4, 5]).unwrap();
        let wrong = ModelSubset::from_indices(&[0, 1, 3, 4, 5]).unwrap();
        let report = gap_report(&ds, &fam, &beta0, correct, wrong).unwrap();
        assert!(report.gap_correct >= -calibrated::GAP_CORRECT_SLACK);
        assert!(report.gap_correct <= calibrated::GAP_CORRECT_LOGLOG_COEFF * (2000.0_f64).ln().ln());
        assert!(report.gap_wrong_per_n < -calibrated::GAP_WRONG_MARGIN);
    }

    #[test]
    fn gap_zero_when_correct_model_is_forced_truth() {
        let beta0 = [0.7, -0.2];
        let (design, _) = gen_design(&DesignSpec {
            n: 100,
            p_signal: 2,
            p_noise: 0,
            law: CovariateLaw::Uniform01,
            seed: RngStream::new(19, 0),
        })
        .unwrap();
        let y = design.linear_predictor(&beta0).unwrap();
        let ds = design.into_dataset(y).unwrap();
        let correct = ModelSubset::from_indices(&[0, 1]).unwrap();
        let wrong = ModelSubset::from_indices(&[1]).unwrap();
        let report =
            gap_report(&ds, &FamilyModel::gaussian(), &beta0, correct, wrong).unwrap();
        assert!(report.gap_correct.abs() < 1e-8);
    }

    #[test]
    fn gap_report_validates_subsets() {
        let beta0 = [1.0, 1.0, 0.0];
        let ds = gaussian_dataset(100, &beta0, 23);
        let fam = FamilyModel::gaussian();
        let support = ModelSubset::from_indices(&[0, 1]).unwrap();
        // Correct set missing a support index.
        assert!(gap_report(
            &ds,
            &fam,
            &beta0,
            ModelSubset::from_indices(&[0]).unwrap(),
            ModelSubset::from_indices(&[2]).unwrap()
        )
        .is_err());
        // Wrong set covering the whole support.
        assert!(gap_report(&ds, &fam, &beta0, support, support).is_err());
    }

    #[test]
    fn condition_check_flags_duplicated_column() {
        let mut x = Vec::new();
        for i in 0..50 {
            let v = (i as f64 + 1.0) / 50.0;
            x.push(v);
            x.push(v);
        }
        let ds = Dataset::new(x, vec![0.0; 50], 2).unwrap();
        let report = condition_check(&ds, &FamilyModel::gaussian(), &[0.0, 0.0]).unwrap();
        assert!(report.eigenvalue_violation);
        assert!(report.lambda_min_over_n.abs() < 1e-10);
    }

    #[test]
    fn condition_check_orthonormal_scaling() {
        // Identity-like information: two orthogonal unit-norm-sqrt-n columns.
        let n = 100;
        let mut x = Vec::new();
        for i in 0..n {
            x.push(if i % 2 == 0 { 1.0 } else { 0.0 });
            x.push(if i % 2 == 1 { 1.0 } else { 0.0 });
        }
        let ds = Dataset::new(x, vec![0.0; n], 2).unwrap();
        let report = condition_check(&ds, &FamilyModel::gaussian(), &[0.0, 0.0]).unwrap();
        assert_relative_eq!(report.lambda_min_over_n, 0.5, max_relative = 1e-12);
        assert_relative_eq!(report.lambda_max_over_n, 0.5, max_relative = 1e-12);
        assert!(!report.eigenvalue_violation);
    }

    #[test]
    fn growth_slope_near_one_for_linear_information() {
        let beta0 = [0.5, 0.5, 0.5, 0.0, 0.0, 0.0];
        let fam = FamilyModel::logit();
        let mut points = Vec::new();
        let scn = LilScenario {
            family: fam,
            beta0: beta0.to_vec(),
            alpha: ModelSubset::support_of(&beta0).unwrap(),
            law: CovariateLaw::Uniform01,
            response: ResponseProcess::Independent,
        };
        let ds = scn.dataset(1600, RngStream::new(29, 0)).unwrap();
        for n in [100, 400, 1600] {
            let prefix = ds.prefix(n).unwrap();
            let report = condition_check(&prefix, &fam, &beta0).unwrap();
            points.push((n, report.lambda_max_over_n * n as f64));
        }
        let slope = eigen_growth_slope(&points).unwrap();
        assert!((0.9..=1.1).contains(&slope), "slope {slope}");
        // lambda_max / n itself stays stable across the sequence.
        let ratios: Vec<f64> = points.iter().map(|&(n, l)| l / n as f64).collect();
        for r in &ratios {
            assert!((r / ratios[0] - 1.0).abs() < 0.2, "ratio drift {r}");
        }
    }
}

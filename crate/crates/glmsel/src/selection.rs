//! Exhaustive best-subset model selection with penalized-likelihood
//! criteria.
//!
//! Every non-empty subset of design columns is fitted and scored with
//! `S_n(alpha) = data_fit(alpha) + penalty(n, alpha)`; the argmin wins, with
//! a deterministic tie-break toward smaller models. Selections are labeled
//! against the simplest correct model `alpha0`.

use crate::error::{Error, Result};
use crate::estimation::{fit, Dataset, FitResult, SolverOptions};
use crate::family::{FamilyKind, FamilyModel};

/// Exhaustive enumeration is capped here; candidate counts are 2^p - 1.
pub const MAX_ENUM_P: usize = 20;

/// A subset of design columns encoded as a bitmask (bit j = column j).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModelSubset(u32);

impl ModelSubset {
    pub fn from_bits(bits: u32) -> Self {
        Self(bits)
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &j in indices {
            if j >= 32 {
                return Err(Error::Dimension(format!("column index {j} exceeds 31")));
            }
            bits |= 1 << j;
        }
        Ok(Self(bits))
    }

    /// The support of a coefficient vector: indices with nonzero entries.
    pub fn support_of(beta: &[f64]) -> Result<Self> {
        let idx: Vec<usize> = beta
            .iter()
            .enumerate()
            .filter(|(_, b)| **b != 0.0)
            .map(|(j, _)| j)
            .collect();
        Self::from_indices(&idx)
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn cardinality(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, j: usize) -> bool {
        j < 32 && self.0 & (1 << j) != 0
    }

    pub fn is_superset_of(&self, other: ModelSubset) -> bool {
        self.0 & other.0 == other.0
    }

    /// Member column indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|&j| self.contains(j)).collect()
    }

    /// Embeds sub-model coefficients into a length-`p` vector, zero
    /// elsewhere.
    pub fn embed(&self, beta_sub: &[f64], p: usize) -> Vec<f64> {
        let mut full = vec![0.0; p];
        for (value, j) in beta_sub.iter().zip(self.indices()) {
            full[j] = *value;
        }
        full
    }
}

impl std::fmt::Display for ModelSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, j) in self.indices().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", j + 1)?;
        }
        write!(f, "}}")
    }
}

/// All `2^p - 1` non-empty column subsets in ascending bitmask order.
pub fn enumerate_candidates(p: usize) -> Result<Vec<ModelSubset>> {
    if p == 0 || p > MAX_ENUM_P {
        return Err(Error::EnumerationBound { p, max: MAX_ENUM_P });
    }
    Ok((1..(1u32 << p)).map(ModelSubset::from_bits).collect())
}

/// Penalized criterion family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriterionKind {
    Aic,
    Bic,
    /// Stochastic-complexity penalty from the log-determinant of the Fisher
    /// information plus log coefficient magnitudes.
    Scc,
    /// Penalty `p_alpha * (c0 + c1 * log n)` on the total scale.
    Custom { c0: f64, c1: f64 },
}

/// Whether the criterion operates on total or per-observation quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Total,
    PerObservation,
}

/// The data-fit term paired with the penalty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFit {
    /// Negative weighted log-likelihood.
    NegLogLik,
    /// Log of the mean squared weighted residual; gaussian-identity only
    /// (the profile form used for dependent linear models).
    LogMse,
}

/// A fully specified selection criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriterionSpec {
    pub kind: CriterionKind,
    pub scale: Scale,
    /// The SCC magnitude offset epsilon.
    pub scc_epsilon: f64,
    pub data_fit: DataFit,
}

impl CriterionSpec {
    pub fn aic_total() -> Self {
        Self {
            kind: CriterionKind::Aic,
            scale: Scale::Total,
            scc_epsilon: 1.0,
            data_fit: DataFit::NegLogLik,
        }
    }

    pub fn aic_per_obs() -> Self {
        Self {
            scale: Scale::PerObservation,
            ..Self::aic_total()
        }
    }

    pub fn bic_total() -> Self {
        Self {
            kind: CriterionKind::Bic,
            ..Self::aic_total()
        }
    }

    pub fn bic_per_obs() -> Self {
        Self {
            scale: Scale::PerObservation,
            ..Self::bic_total()
        }
    }

    pub fn scc_total(epsilon: f64) -> Self {
        Self {
            kind: CriterionKind::Scc,
            scc_epsilon: epsilon,
            ..Self::aic_total()
        }
    }

    pub fn custom_total(c0: f64, c1: f64) -> Self {
        Self {
            kind: CriterionKind::Custom { c0, c1 },
            ..Self::aic_total()
        }
    }

    pub fn with_log_mse(mut self) -> Self {
        self.data_fit = DataFit::LogMse;
        self
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            CriterionKind::Aic => "AIC",
            CriterionKind::Bic => "BIC",
            CriterionKind::Scc => "SCC",
            CriterionKind::Custom { .. } => "CUSTOM",
        }
    }
}

/// One fitted candidate sub-model with its criterion value.
#[derive(Debug, Clone)]
pub struct CandidateModel {
    pub alpha: ModelSubset,
    pub p_alpha: usize,
    pub fit: FitResult,
    pub criterion_value: f64,
}

/// How a selection relates to the simplest correct model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionLabel {
    Correct,
    Overfit,
    Underfit,
}

impl SelectionLabel {
    pub fn name(&self) -> &'static str {
        match self {
            SelectionLabel::Correct => "correct",
            SelectionLabel::Overfit => "overfit",
            SelectionLabel::Underfit => "underfit",
        }
    }
}

/// The outcome of one exhaustive selection run.
#[derive(Debug, Clone)]
pub struct SelectionOutcome {
    pub chosen: CandidateModel,
    pub label: SelectionLabel,
    /// Squared l2 error of the chosen coefficients embedded into R^p
    /// against the true vector.
    pub beta_full_error: f64,
}

/// The penalty `C(n, beta_hat(alpha))` for one candidate.
///
/// Total scale: AIC gives `p_alpha`, BIC gives `p_alpha log(n) / 2`, SCC
/// gives `log det I_n / 2 + sum_{i=2}^{p_alpha} log(|beta_i| + eps n^{-1/4})`.
/// Per-observation: AIC gives `p_alpha / n` and BIC gives
/// `p_alpha log(n) / n`; the remaining kinds divide their total form by `n`.
/// A singular information matrix makes the SCC penalty infinite.
pub fn penalty(spec: &CriterionSpec, n: usize, fit: &FitResult, p_alpha: usize) -> f64 {
    let nf = n as f64;
    let pf = p_alpha as f64;
    let total = match spec.kind {
        CriterionKind::Aic => pf,
        CriterionKind::Bic => 0.5 * pf * nf.ln(),
        CriterionKind::Custom { c0, c1 } => pf * (c0 + c1 * nf.ln()),
        CriterionKind::Scc => {
            let Some(log_det) = fit.fisher.log_det() else {
                return f64::INFINITY;
            };
            let offset = spec.scc_epsilon * nf.powf(-0.25);
            let magnitudes: f64 = fit.beta_hat[1..]
                .iter()
                .map(|b| (b.abs() + offset).ln())
                .sum();
            0.5 * log_det + magnitudes
        }
    };
    match (spec.scale, spec.kind) {
        (Scale::Total, _) => total,
        (Scale::PerObservation, CriterionKind::Aic) => pf / nf,
        (Scale::PerObservation, CriterionKind::Bic) => pf * nf.ln() / nf,
        (Scale::PerObservation, _) => total / nf,
    }
}

/// The criterion value `S_n(alpha)` for a fitted candidate.
///
/// Non-converged fits score plus infinity and are never selected.
pub fn criterion_value(
    spec: &CriterionSpec,
    ds: &Dataset,
    fam: &FamilyModel,
    alpha: ModelSubset,
    fit: &FitResult,
) -> Result<f64> {
    if !fit.converged {
        return Ok(f64::INFINITY);
    }
    let n = ds.n() as f64;
    let data_fit = match spec.data_fit {
        DataFit::NegLogLik => match spec.scale {
            Scale::Total => -fit.loglik,
            Scale::PerObservation => -fit.loglik / n,
        },
        DataFit::LogMse => {
            if fam.kind() != FamilyKind::GaussianIdentity {
                return Err(Error::InvalidConfig(format!(
                    "log-MSE data fit requires the gaussian family, got {}",
                    fam.name()
                )));
            }
            // sum_i w_i (y_i - eta_i)^2 = sum_i w_i y_i^2 - 2 * loglik for
            // the identity link, so the weighted MSE falls out of the fit.
            let swy2: f64 = ds
                .y()
                .iter()
                .zip(ds.weights())
                .map(|(y, w)| w * y * y)
                .sum();
            let mse = ((swy2 - 2.0 * fit.loglik) / n).max(f64::MIN_POSITIVE);
            match spec.scale {
                Scale::Total => n * mse.ln(),
                Scale::PerObservation => mse.ln(),
            }
        }
    };
    Ok(data_fit + penalty(spec, ds.n(), fit, alpha.cardinality()))
}

/// Fits every non-empty candidate sub-model once.
///
/// The returned list is in ascending bitmask order, so downstream argmin
/// reductions are schedule-independent. The fits can be shared by any
/// number of criteria.
pub fn fit_candidates(
    ds: &Dataset,
    fam: &FamilyModel,
    opts: &SolverOptions,
) -> Result<Vec<(ModelSubset, FitResult)>> {
    let candidates = enumerate_candidates(ds.p())?;
    candidates
        .into_iter()
        .map(|alpha| Ok((alpha, fit(&ds.columns(alpha)?, fam, opts)?)))
        .collect()
}

/// Selects the argmin candidate from pre-computed fits and labels it
/// against `alpha0`/`beta0`.
pub fn select_from_fits(
    spec: &CriterionSpec,
    ds: &Dataset,
    fam: &FamilyModel,
    fits: &[(ModelSubset, FitResult)],
    alpha0: ModelSubset,
    beta0: &[f64],
) -> Result<SelectionOutcome> {
    validate_truth(ds, alpha0, beta0)?;
    let mut best: Option<CandidateModel> = None;
    for (alpha, fit_res) in fits {
        let value = criterion_value(spec, ds, fam, *alpha, fit_res)?;
        let p_alpha = alpha.cardinality();
        let better = match &best {
            None => true,
            // Ties break toward smaller dimension, then smaller bitmask;
            // iteration order already ascends in bitmask.
            Some(b) => {
                value < b.criterion_value
                    || (value == b.criterion_value && p_alpha < b.p_alpha)
            }
        };
        if better {
            best = Some(CandidateModel {
                alpha: *alpha,
                p_alpha,
                fit: fit_res.clone(),
                criterion_value: value,
            });
        }
    }
    let chosen = best.ok_or_else(|| Error::InvalidConfig("no candidates to select from".into()))?;

    let label = if chosen.alpha == alpha0 {
        SelectionLabel::Correct
    } else if chosen.alpha.is_superset_of(alpha0) {
        SelectionLabel::Overfit
    } else {
        SelectionLabel::Underfit
    };

    let embedded = chosen.alpha.embed(&chosen.fit.beta_hat, ds.p());
    let beta_full_error = embedded
        .iter()
        .zip(beta0)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();

    Ok(SelectionOutcome {
        chosen,
        label,
        beta_full_error,
    })
}

/// Fits all candidates and selects the criterion argmin.
pub fn select(
    spec: &CriterionSpec,
    ds: &Dataset,
    fam: &FamilyModel,
    alpha0: ModelSubset,
    beta0: &[f64],
    opts: &SolverOptions,
) -> Result<SelectionOutcome> {
    validate_truth(ds, alpha0, beta0)?;
    let fits = fit_candidates(ds, fam, opts)?;
    select_from_fits(spec, ds, fam, &fits, alpha0, beta0)
}

fn validate_truth(ds: &Dataset, alpha0: ModelSubset, beta0: &[f64]) -> Result<()> {
    if alpha0.is_empty() {
        return Err(Error::InvalidConfig("alpha0 must be non-empty".into()));
    }
    if beta0.len() != ds.p() {
        return Err(Error::Dimension(format!(
            "beta0 has {} coordinates, design has {}",
            beta0.len(),
            ds.p()
        )));
    }
    if ModelSubset::support_of(beta0)? != alpha0 {
        return Err(Error::InvalidConfig(
            "beta0 support does not equal alpha0".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::weighted_loglik;
    use crate::numerics::{DistSpec, RngStream};
    use approx::assert_relative_eq;

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(
            enumerate_candidates(1).unwrap(),
            vec![ModelSubset::from_bits(1)]
        );
        let two = enumerate_candidates(2).unwrap();
        assert_eq!(
            two,
            vec![
                ModelSubset::from_bits(1),
                ModelSubset::from_bits(2),
                ModelSubset::from_bits(3)
            ]
        );
        assert_eq!(enumerate_candidates(6).unwrap().len(), 63);
        assert!(enumerate_candidates(21).is_err());
        assert!(enumerate_candidates(0).is_err());
    }

    fn dummy_fit(p: usize, loglik: f64, beta: Vec<f64>) -> FitResult {
        FitResult {
            beta_hat: beta,
            loglik,
            score_norm: 0.0,
            fisher: crate::numerics::SymMatrix::identity(p).unwrap(),
            iterations: 1,
            converged: true,
            separation_flag: false,
        }
    }

    #[test]
    fn penalty_reference_values() {
        let f3 = dummy_fit(3, 0.0, vec![0.1, 0.2, 0.3]);
        let bic = CriterionSpec::bic_total();
        assert_relative_eq!(
            penalty(&bic, 300, &f3, 3),
            1.5 * 300.0_f64.ln(),
            max_relative = 1e-14
        );

        let aic = CriterionSpec::aic_total();
        let f4 = dummy_fit(4, 0.0, vec![0.1; 4]);
        assert_eq!(penalty(&aic, 12345, &f4, 4), 4.0);

        // Per-observation forms.
        assert_relative_eq!(
            penalty(&CriterionSpec::bic_per_obs(), 300, &f3, 3),
            3.0 * 300.0_f64.ln() / 300.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            penalty(&CriterionSpec::aic_per_obs(), 300, &f4, 4),
            4.0 / 300.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn scc_penalty_single_coordinate_is_log_det_only() {
        // With p_alpha = 1 the magnitude sum from i = 2 is empty.
        let f1 = dummy_fit(1, 0.0, vec![0.7]);
        let spec = CriterionSpec::scc_total(1.0);
        assert_relative_eq!(penalty(&spec, 100, &f1, 1), 0.0, epsilon = 1e-14);

        // Singular information makes the penalty infinite.
        let mut f_sing = dummy_fit(2, 0.0, vec![0.5, 0.4]);
        f_sing.fisher = crate::numerics::SymMatrix::zeros(2).unwrap();
        assert!(penalty(&spec, 100, &f_sing, 2).is_infinite());
    }

    #[test]
    fn bic_exceeds_aic_by_penalty_difference() {
        let f3 = dummy_fit(3, -12.0, vec![0.1, 0.2, 0.3]);
        let n = 300;
        let diff = penalty(&CriterionSpec::bic_total(), n, &f3, 3)
            - penalty(&CriterionSpec::aic_total(), n, &f3, 3);
        assert_relative_eq!(diff, 3.0 * (0.5 * 300.0_f64.ln() - 1.0), max_relative = 1e-14);
        assert!(diff > 0.0);
    }

    fn random_gaussian_dataset(n: usize, p: usize, beta0: &[f64], seed: u64) -> Dataset {
        let stream = RngStream::new(seed, 0);
        let ((x, y), _) = stream.scoped(|rng| {
            let x: Vec<f64> = (0..n * p)
                .map(|_| {
                    crate::numerics::sample(&DistSpec::Uniform { lo: -1.0, hi: 1.0 }, rng).unwrap()
                })
                .collect();
            let y: Vec<f64> = (0..n)
                .map(|i| {
                    let eta: f64 = (0..p).map(|j| x[i * p + j] * beta0[j]).sum();
                    crate::numerics::sample_normal(eta, 1.0, rng).unwrap()
                })
                .collect();
            (x, y)
        });
        Dataset::new(x, y, p).unwrap()
    }

    #[test]
    fn penalty_monotone_prefers_smaller_of_equal_fits() {
        // Two candidates with identical log-likelihood: the smaller
        // dimension must score strictly lower for every criterion kind.
        let ds = random_gaussian_dataset(50, 3, &[1.0, 0.5, 0.0], 5);
        let fam = FamilyModel::gaussian();
        let f2 = dummy_fit(2, -10.0, vec![1.0, 0.5]);
        let f3 = dummy_fit(3, -10.0, vec![1.0, 0.5, 0.0]);
        for spec in [
            CriterionSpec::aic_total(),
            CriterionSpec::bic_total(),
            CriterionSpec::bic_per_obs(),
            CriterionSpec::custom_total(0.3, 0.2),
        ] {
            let v2 = criterion_value(
                &spec,
                &ds,
                &fam,
                ModelSubset::from_indices(&[0, 1]).unwrap(),
                &f2,
            )
            .unwrap();
            let v3 = criterion_value(
                &spec,
                &ds,
                &fam,
                ModelSubset::from_indices(&[0, 1, 2]).unwrap(),
                &f3,
            )
            .unwrap();
            assert!(v2 < v3, "{spec:?}");
        }
    }

    #[test]
    fn nonconverged_candidates_score_infinity() {
        let ds = random_gaussian_dataset(20, 2, &[1.0, 0.0], 6);
        let fam = FamilyModel::gaussian();
        let mut bad = dummy_fit(2, -5.0, vec![0.0, 0.0]);
        bad.converged = false;
        let v = criterion_value(
            &CriterionSpec::bic_total(),
            &ds,
            &fam,
            ModelSubset::from_bits(3),
            &bad,
        )
        .unwrap();
        assert!(v.is_infinite());
    }

    #[test]
    fn strong_signal_easy_regime_selects_correct_model() {
        let beta0 = [5.0, 5.0, 0.0];
        let ds = random_gaussian_dataset(400, 3, &beta0, 17);
        let alpha0 = ModelSubset::from_indices(&[0, 1]).unwrap();
        let out = select(
            &CriterionSpec::bic_total(),
            &ds,
            &FamilyModel::gaussian(),
            alpha0,
            &beta0,
            &SolverOptions::default(),
        )
        .unwrap();
        assert_eq!(out.label, SelectionLabel::Correct);
        assert_eq!(out.chosen.alpha, alpha0);
        assert!(out.beta_full_error < 0.1);
    }

    #[test]
    fn label_classification() {
        let beta0 = [2.0, 2.0, 0.0];
        let ds = random_gaussian_dataset(60, 3, &beta0, 23);
        let fam = FamilyModel::gaussian();
        let fits = fit_candidates(&ds, &fam, &SolverOptions::default()).unwrap();
        let alpha0 = ModelSubset::from_indices(&[0, 1]).unwrap();

        // Force specific choices by scoring with an absurd custom penalty
        // that dominates the data fit.
        let parsimony = CriterionSpec::custom_total(1e6, 0.0);
        let out = select_from_fits(&parsimony, &ds, &fam, &fits, alpha0, &beta0).unwrap();
        assert_eq!(out.label, SelectionLabel::Underfit);
        assert_eq!(out.chosen.p_alpha, 1);

        let greed = CriterionSpec::custom_total(-1e6, 0.0);
        let out = select_from_fits(&greed, &ds, &fam, &fits, alpha0, &beta0).unwrap();
        assert_eq!(out.label, SelectionLabel::Overfit);
        assert_eq!(out.chosen.p_alpha, 3);
    }

    #[test]
    fn nesting_of_loglik_over_supersets() {
        let beta0 = [1.0, -0.5, 0.25, 0.0];
        let ds = random_gaussian_dataset(80, 4, &beta0, 29);
        let fam = FamilyModel::gaussian();
        let fits = fit_candidates(&ds, &fam, &SolverOptions::default()).unwrap();
        let by_alpha: std::collections::HashMap<u32, f64> = fits
            .iter()
            .map(|(a, f)| (a.bits(), f.loglik))
            .collect();
        for (alpha, _) in &fits {
            for (alpha2, _) in &fits {
                if alpha2.is_superset_of(*alpha) {
                    assert!(
                        by_alpha[&alpha.bits()] <= by_alpha[&alpha2.bits()] + 1e-6,
                        "{alpha} vs {alpha2}"
                    );
                }
            }
        }
    }

    #[test]
    fn correct_models_dominate_truth() {
        let beta0 = [1.0, -0.5, 0.0];
        let ds = random_gaussian_dataset(80, 3, &beta0, 31);
        let fam = FamilyModel::gaussian();
        let ll0 = weighted_loglik(&ds, &fam, &beta0).unwrap();
        let alpha0 = ModelSubset::support_of(&beta0).unwrap();
        for (alpha, fit_res) in fit_candidates(&ds, &fam, &SolverOptions::default()).unwrap() {
            if alpha.is_superset_of(alpha0) {
                assert!(fit_res.loglik >= ll0 - 1e-6, "{alpha}");
            }
        }
    }

    #[test]
    fn total_and_per_obs_scales_agree_on_argmin() {
        // AIC directly, BIC against the constant-matched custom penalty.
        for seed in 0..10 {
            let beta0 = [0.8, 0.6, 0.0, 0.0];
            let ds = random_gaussian_dataset(60, 4, &beta0, 1000 + seed);
            let fam = FamilyModel::gaussian();
            let fits = fit_candidates(&ds, &fam, &SolverOptions::default()).unwrap();
            let alpha0 = ModelSubset::support_of(&beta0).unwrap();

            let a_tot =
                select_from_fits(&CriterionSpec::aic_total(), &ds, &fam, &fits, alpha0, &beta0)
                    .unwrap();
            let a_per =
                select_from_fits(&CriterionSpec::aic_per_obs(), &ds, &fam, &fits, alpha0, &beta0)
                    .unwrap();
            assert_eq!(a_tot.chosen.alpha, a_per.chosen.alpha);

            let b_tot =
                select_from_fits(&CriterionSpec::bic_total(), &ds, &fam, &fits, alpha0, &beta0)
                    .unwrap();
            let matched = CriterionSpec {
                scale: Scale::PerObservation,
                ..CriterionSpec::custom_total(0.0, 0.5)
            };
            let b_per = select_from_fits(&matched, &ds, &fam, &fits, alpha0, &beta0).unwrap();
            assert_eq!(b_tot.chosen.alpha, b_per.chosen.alpha);
        }
    }

    #[test]
    fn selection_is_deterministic() {
        let beta0 = [0.7, 0.0, 0.4];
        let ds = random_gaussian_dataset(50, 3, &beta0, 37);
        let fam = FamilyModel::gaussian();
        let alpha0 = ModelSubset::support_of(&beta0).unwrap();
        let spec = CriterionSpec::bic_total();
        let a = select(&spec, &ds, &fam, alpha0, &beta0, &SolverOptions::default()).unwrap();
        let b = select(&spec, &ds, &fam, alpha0, &beta0, &SolverOptions::default()).unwrap();
        assert_eq!(a.chosen.alpha, b.chosen.alpha);
        assert_eq!(a.chosen.criterion_value, b.chosen.criterion_value);
        assert_eq!(a.beta_full_error, b.beta_full_error);
    }

    #[test]
    fn truth_validation_errors() {
        let beta0 = [1.0, 0.0];
        let ds = random_gaussian_dataset(20, 2, &beta0, 41);
        let fam = FamilyModel::gaussian();
        let opts = SolverOptions::default();
        // alpha0 not matching the support.
        let wrong = ModelSubset::from_indices(&[1]).unwrap();
        assert!(select(&CriterionSpec::aic_total(), &ds, &fam, wrong, &beta0, &opts).is_err());
        // Empty alpha0.
        let empty = ModelSubset::from_bits(0);
        assert!(select(&CriterionSpec::aic_total(), &ds, &fam, empty, &beta0, &opts).is_err());
    }

    #[test]
    fn log_mse_requires_gaussian() {
        let ds = Dataset::new(vec![1.0, -1.0], vec![1.0, 0.0], 1).unwrap();
        let fam = FamilyModel::logit();
        let fit_res = fit(&ds, &fam, &SolverOptions::default()).unwrap();
        let spec = CriterionSpec::bic_per_obs().with_log_mse();
        assert!(criterion_value(&spec, &ds, &fam, ModelSubset::from_bits(1), &fit_res).is_err());
    }
}

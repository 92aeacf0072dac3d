//! Experiment harness: replicated selection studies with deterministic
//! parallelism, trajectory/gap diagnostic runs, and CSV/JSON reporting.
//!
//! Replication `r` always draws from stream id `r` of the configured base
//! seed, and aggregation walks replications in index order, so results are
//! bitwise identical for any worker count.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::{
    calibrated, gap_report, lil_trajectory, LilScenario, ResponseProcess,
};
use crate::error::{Error, Result};
use crate::estimation::SolverOptions;
use crate::family::FamilyModel;
use crate::numerics::RngStream;
use crate::selection::{
    fit_candidates, select_from_fits, CriterionSpec, ModelSubset, SelectionLabel,
};
use crate::simulate::{
    gen_dependent_lm, gen_design, gen_glm_responses, CovariateLaw, DesignSpec, ErrorProcessSpec,
};

/// Environment variable that overrides the configured base seed.
pub const SEED_ENV_VAR: &str = "GLMSEL_SEED";

/// The simulated model presets plus a custom independent-response family.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelPreset {
    /// Negative binomial regression with known dispersion.
    Nbr,
    /// Probit regression.
    Probit,
    /// Dependent linear model with MA(0.5, 0.3) errors.
    DepLmMr2,
    /// Dependent linear model with MA(0.5, 0.3, 0.2) errors.
    DepLmMr3,
    /// Independent responses from an arbitrary family.
    Custom(FamilyModel),
}

impl ModelPreset {
    pub fn from_tag(tag: &str, theta: Option<f64>) -> Result<Self> {
        match tag {
            "nbr" => Ok(ModelPreset::Nbr),
            "probit" => Ok(ModelPreset::Probit),
            "dep-lm-mr2" => Ok(ModelPreset::DepLmMr2),
            "dep-lm-mr3" => Ok(ModelPreset::DepLmMr3),
            other => Ok(ModelPreset::Custom(FamilyModel::from_tag(other, theta)?)),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            ModelPreset::Nbr => "nbr".into(),
            ModelPreset::Probit => "probit".into(),
            ModelPreset::DepLmMr2 => "dep-lm-mr2".into(),
            ModelPreset::DepLmMr3 => "dep-lm-mr3".into(),
            ModelPreset::Custom(fam) => fam.name().into(),
        }
    }

    fn ma_coeffs(&self) -> Option<Vec<f64>> {
        match self {
            ModelPreset::DepLmMr2 => Some(vec![0.5, 0.3]),
            ModelPreset::DepLmMr3 => Some(vec![0.5, 0.3, 0.2]),
            _ => None,
        }
    }

    fn is_dependent_lm(&self) -> bool {
        self.ma_coeffs().is_some()
    }

    /// The family the candidate sub-models are fitted with. Dependent
    /// linear models are solved by least squares, which is the gaussian
    /// quasi-likelihood fit.
    fn fitting_family(&self, theta: f64) -> Result<FamilyModel> {
        match self {
            ModelPreset::Nbr => FamilyModel::negbin(theta),
            ModelPreset::Probit => Ok(FamilyModel::probit()),
            ModelPreset::DepLmMr2 | ModelPreset::DepLmMr3 => Ok(FamilyModel::gaussian()),
            ModelPreset::Custom(fam) => Ok(*fam),
        }
    }
}

/// A criterion with the label it is reported under.
#[derive(Debug, Clone)]
pub struct NamedCriterion {
    pub label: String,
    pub spec: CriterionSpec,
}

/// The replication-selection criteria matching the tabulated study.
///
/// GLM presets score `-loglik + p` (AIC) and `-loglik + p log(n)/2` (BIC).
/// Dependent linear models score the profile form `log MSE + 2p/n` and
/// `log MSE + p log(n)/n`, which are the same criteria expressed through
/// the gaussian profile likelihood.
pub fn criterion_for_model(model: &ModelPreset, name: &str) -> Result<NamedCriterion> {
    let dep = model.is_dependent_lm();
    let spec = match (name, dep) {
        ("aic", false) => CriterionSpec::aic_total(),
        ("bic", false) => CriterionSpec::bic_total(),
        ("scc", false) => CriterionSpec::scc_total(1.0),
        ("aic", true) => {
            let mut s = CriterionSpec::custom_total(2.0, 0.0).with_log_mse();
            s.scale = crate::selection::Scale::PerObservation;
            s
        }
        ("bic", true) => CriterionSpec::bic_per_obs().with_log_mse(),
        ("scc", true) => {
            return Err(Error::InvalidConfig(
                "scc is not defined for the dependent linear model presets".into(),
            ))
        }
        (other, _) => {
            return Err(Error::InvalidConfig(format!(
                "unknown criterion '{other}' (expected aic, bic, or scc)"
            )))
        }
    };
    Ok(NamedCriterion {
        label: name.to_ascii_uppercase(),
        spec,
    })
}

/// Configuration for one replicated selection experiment.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub model: ModelPreset,
    pub n: usize,
    pub reps: usize,
    pub beta0: Vec<f64>,
    /// Negative-binomial dispersion.
    pub theta: f64,
    pub criteria: Vec<NamedCriterion>,
    pub base_seed: u64,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
    pub law: CovariateLaw,
}

impl ExperimentConfig {
    /// The tabulated-study preset: three signal coefficients of 0.5, three
    /// redundant columns, standardized-uniform covariates, dispersion 10
    /// for the negative binomial, and AIC + BIC criteria.
    pub fn preset(model: ModelPreset, n: usize, reps: usize, base_seed: u64) -> Result<Self> {
        let criteria = vec![
            criterion_for_model(&model, "aic")?,
            criterion_for_model(&model, "bic")?,
        ];
        Ok(Self {
            model,
            n,
            reps,
            beta0: vec![0.5, 0.5, 0.5, 0.0, 0.0, 0.0],
            theta: 10.0,
            criteria,
            base_seed,
            workers: 0,
            law: CovariateLaw::uniform_standardized(),
        })
    }

    /// Loads a flat `key = value` config file. Recognized keys: `model`,
    /// `n`, `reps`, `seed`, `workers`, `theta`, `beta0` (comma-separated),
    /// `criteria` (comma-separated names).
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut model = None;
        let mut n = None;
        let mut reps = None;
        let mut seed = 0u64;
        let mut workers = 0usize;
        let mut theta = 10.0;
        let mut beta0 = None;
        let mut criteria_names = vec!["aic".to_string(), "bic".to_string()];

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::InvalidConfig(format!(
                    "{}:{}: expected 'key = value'",
                    path.display(),
                    lineno + 1
                )));
            };
            let key = key.trim();
            let value = value.trim();
            let bad = |what: &str| {
                Error::InvalidConfig(format!(
                    "{}:{}: bad {what} value '{value}'",
                    path.display(),
                    lineno + 1
                ))
            };
            match key {
                "model" => model = Some(value.to_string()),
                "n" => n = Some(value.parse().map_err(|_| bad("n"))?),
                "reps" => reps = Some(value.parse().map_err(|_| bad("reps"))?),
                "seed" => seed = value.parse().map_err(|_| bad("seed"))?,
                "workers" => workers = value.parse().map_err(|_| bad("workers"))?,
                "theta" => theta = value.parse().map_err(|_| bad("theta"))?,
                "beta0" => {
                    let parsed: std::result::Result<Vec<f64>, _> =
                        value.split(',').map(|v| v.trim().parse()).collect();
                    beta0 = Some(parsed.map_err(|_| bad("beta0"))?);
                }
                "criteria" => {
                    criteria_names = value
                        .split(',')
                        .map(|v| v.trim().to_ascii_lowercase())
                        .collect();
                }
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "{}:{}: unknown key '{other}'",
                        path.display(),
                        lineno + 1
                    )))
                }
            }
        }

        let model_tag =
            model.ok_or_else(|| Error::InvalidConfig("config missing 'model'".into()))?;
        let model = ModelPreset::from_tag(&model_tag, Some(theta))?;
        let n = n.ok_or_else(|| Error::InvalidConfig("config missing 'n'".into()))?;
        let reps = reps.ok_or_else(|| Error::InvalidConfig("config missing 'reps'".into()))?;
        let mut cfg = Self::preset(model, n, reps, seed)?;
        cfg.workers = workers;
        cfg.theta = theta;
        if let Some(beta0) = beta0 {
            cfg.beta0 = beta0;
        }
        cfg.criteria = criteria_names
            .iter()
            .map(|name| criterion_for_model(&cfg.model, name))
            .collect::<Result<_>>()?;
        Ok(cfg)
    }

    /// Applies the `GLMSEL_SEED` environment override, when present.
    pub fn apply_env_seed(&mut self) -> Result<()> {
        if let Ok(raw) = std::env::var(SEED_ENV_VAR) {
            self.base_seed = raw.parse().map_err(|_| {
                Error::InvalidConfig(format!("{SEED_ENV_VAR} must be a u64, got '{raw}'"))
            })?;
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidConfig("reps must be >= 1".into()));
        }
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be >= 1".into()));
        }
        if self.beta0.is_empty() {
            return Err(Error::InvalidConfig("beta0 must be non-empty".into()));
        }
        if self.criteria.is_empty() {
            return Err(Error::InvalidConfig("at least one criterion required".into()));
        }
        if ModelSubset::support_of(&self.beta0)?.is_empty() {
            return Err(Error::InvalidConfig(
                "beta0 must have at least one nonzero coordinate".into(),
            ));
        }
        Ok(())
    }
}

/// One aggregated result row: a (model, criterion, sample size) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub model: String,
    pub method: String,
    pub sample_size: usize,
    pub correct_rate: f64,
    pub overfit_rate: f64,
    pub underfit_rate: f64,
    /// Mean over replications of the squared coefficient error of the
    /// selected model embedded into the full coefficient space.
    pub mse: f64,
}

/// Aggregated experiment output plus solver diagnostics.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub rows: Vec<TableRow>,
    /// Candidate fits that failed to converge, across all replications;
    /// such candidates score +inf and are never selected.
    pub nonconverged_fits: usize,
    pub reps: usize,
}

struct RepOutcome {
    labels: Vec<SelectionLabel>,
    sq_errors: Vec<f64>,
    nonconverged: usize,
}

fn run_replication(cfg: &ExperimentConfig, rep: u64) -> Result<RepOutcome> {
    let stream = RngStream::new(cfg.base_seed, rep);
    let support = ModelSubset::support_of(&cfg.beta0)?;
    let (design, after_design) = gen_design(&DesignSpec {
        n: cfg.n,
        p_signal: support.cardinality(),
        p_noise: cfg.beta0.len() - support.cardinality(),
        law: cfg.law,
        seed: stream,
    })?;

    let (y, _) = match &cfg.model {
        ModelPreset::Nbr => gen_glm_responses(
            &design,
            &FamilyModel::negbin(cfg.theta)?,
            &cfg.beta0,
            after_design,
        )?,
        ModelPreset::Probit => {
            gen_glm_responses(&design, &FamilyModel::probit(), &cfg.beta0, after_design)?
        }
        ModelPreset::Custom(fam) => gen_glm_responses(&design, fam, &cfg.beta0, after_design)?,
        ModelPreset::DepLmMr2 | ModelPreset::DepLmMr3 => {
            let coeffs = cfg.model.ma_coeffs().expect("dependent preset");
            gen_dependent_lm(
                &design,
                &cfg.beta0,
                &ErrorProcessSpec::ma(coeffs, 1.0),
                after_design,
            )?
        }
    };

    let ds = design.into_dataset(y)?;
    let fam = cfg.model.fitting_family(cfg.theta)?;
    let fits = fit_candidates(&ds, &fam, &SolverOptions::default())?;
    let nonconverged = fits.iter().filter(|(_, f)| !f.converged).count();

    let mut labels = Vec::with_capacity(cfg.criteria.len());
    let mut sq_errors = Vec::with_capacity(cfg.criteria.len());
    for criterion in &cfg.criteria {
        let outcome = select_from_fits(&criterion.spec, &ds, &fam, &fits, support, &cfg.beta0)?;
        labels.push(outcome.label);
        sq_errors.push(outcome.beta_full_error);
    }
    Ok(RepOutcome {
        labels,
        sq_errors,
        nonconverged,
    })
}

/// Runs the replicated study and aggregates one row per criterion.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let outcomes = run_on_pool(cfg.workers, || {
        (0..cfg.reps as u64)
            .into_par_iter()
            .map(|rep| run_replication(cfg, rep))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut nonconverged_fits = 0;
    let mut rows = Vec::with_capacity(cfg.criteria.len());
    for (k, criterion) in cfg.criteria.iter().enumerate() {
        let mut counts = [0usize; 3];
        let mut sq_sum = 0.0;
        for outcome in &outcomes {
            let slot = match outcome.labels[k] {
                SelectionLabel::Correct => 0,
                SelectionLabel::Overfit => 1,
                SelectionLabel::Underfit => 2,
            };
            counts[slot] += 1;
            sq_sum += outcome.sq_errors[k];
        }
        let reps = cfg.reps as f64;
        rows.push(TableRow {
            model: cfg.model.tag(),
            method: criterion.label.clone(),
            sample_size: cfg.n,
            correct_rate: counts[0] as f64 / reps,
            overfit_rate: counts[1] as f64 / reps,
            underfit_rate: counts[2] as f64 / reps,
            mse: sq_sum / reps,
        });
    }
    nonconverged_fits += outcomes.iter().map(|o| o.nonconverged).sum::<usize>();

    Ok(ExperimentReport {
        rows,
        nonconverged_fits,
        reps: cfg.reps,
    })
}

/// Writes rows in the fixed CSV schema with six-decimal rates.
pub fn write_table_csv(rows: &[TableRow], path: &Path) -> Result<()> {
    let mut out = String::from(
        "model,method,sample_size,correct_rate,overfit_rate,underfit_rate,mse\n",
    );
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{:.6},{:.6},{:.6},{:.6}\n",
            row.model,
            row.method,
            row.sample_size,
            row.correct_rate,
            row.overfit_rate,
            row.underfit_rate,
            row.mse
        ));
    }
    write_file(path, out.as_bytes())
}

/// The built-in diagnostic scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    GaussianIid,
    GaussianAr1,
    GaussianMa2,
}

impl ScenarioKind {
    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "gaussian-iid" => Ok(ScenarioKind::GaussianIid),
            "gaussian-ar1" => Ok(ScenarioKind::GaussianAr1),
            "gaussian-ma2" => Ok(ScenarioKind::GaussianMa2),
            other => Err(Error::InvalidConfig(format!(
                "unknown scenario '{other}' (expected gaussian-iid, gaussian-ar1, gaussian-ma2)"
            ))),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            ScenarioKind::GaussianIid => "gaussian-iid",
            ScenarioKind::GaussianAr1 => "gaussian-ar1",
            ScenarioKind::GaussianMa2 => "gaussian-ma2",
        }
    }

    pub fn error_process(&self) -> ErrorProcessSpec {
        match self {
            ScenarioKind::GaussianIid => ErrorProcessSpec::iid(1.0),
            ScenarioKind::GaussianAr1 => ErrorProcessSpec::ar1(0.5, 1.0),
            ScenarioKind::GaussianMa2 => ErrorProcessSpec::ma(vec![0.5, 0.3], 1.0),
        }
    }

    /// The ratio ceiling calibrated for this scenario.
    pub fn ratio_ceiling(&self) -> f64 {
        match self {
            ScenarioKind::GaussianIid => calibrated::RATIO_CEILING_IID,
            ScenarioKind::GaussianAr1 => calibrated::RATIO_CEILING_AR1,
            ScenarioKind::GaussianMa2 => calibrated::RATIO_CEILING_MA2,
        }
    }

    /// The shared trajectory scenario: three 0.5 signals, three redundant
    /// columns, standardized-uniform design, gaussian responses.
    pub fn scenario(&self) -> LilScenario {
        LilScenario::gaussian(
            vec![0.5, 0.5, 0.5, 0.0, 0.0, 0.0],
            ResponseProcess::AdditiveError(self.error_process()),
        )
        .expect("built-in scenario is valid")
    }
}

/// Configuration for a diagnostic run.
#[derive(Debug, Clone)]
pub struct AsymptoticsConfig {
    pub scenario: ScenarioKind,
    pub grid: Vec<usize>,
    pub reps: usize,
    pub base_seed: u64,
    pub workers: usize,
}

/// One per-replication, per-grid-point diagnostic record.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticsRow {
    pub rep_id: u64,
    pub n: usize,
    /// Normalized coefficient ratio; NaN when the fit failed.
    pub ratio: f64,
    pub gap_correct: f64,
    pub gap_wrong_per_n: f64,
}

/// Summary verdicts against the calibrated bounds.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsSummary {
    pub scenario: String,
    pub reps: usize,
    pub grid: Vec<usize>,
    pub ratio_ceiling: f64,
    /// Fraction of replications whose max ratio stayed below the ceiling.
    pub boundedness_pass_rate: f64,
    pub boundedness_ok: bool,
    pub median_ratio_at_max_n: f64,
    pub median_floor: f64,
    pub floor_ok: bool,
    /// Fraction of records with gap_correct inside
    /// [-slack, C log log n].
    pub gap_correct_pass_rate: f64,
    pub gap_correct_ok: bool,
    /// Fraction of records with strictly negative gap_wrong_per_n.
    pub gap_wrong_negative_rate: f64,
    pub gap_wrong_ok: bool,
}

/// Full output of a diagnostic run.
#[derive(Debug, Clone)]
pub struct AsymptoticsReport {
    pub rows: Vec<AsymptoticsRow>,
    pub summary: AsymptoticsSummary,
}

fn asymptotics_replication(
    cfg: &AsymptoticsConfig,
    scn: &LilScenario,
    rep: u64,
) -> Result<Vec<AsymptoticsRow>> {
    let stream = RngStream::new(cfg.base_seed, rep);
    let traj = lil_trajectory(scn, &cfg.grid, stream)?;

    let n_max = *cfg.grid.last().expect("validated grid");
    let full = scn.dataset(n_max, stream)?;
    let p = scn.beta0.len();
    let alpha_correct = ModelSubset::from_indices(&(0..p).collect::<Vec<_>>())?;
    let support = ModelSubset::support_of(&scn.beta0)?;
    let noise: Vec<usize> = (0..p).filter(|j| !support.contains(*j)).collect();
    let alpha_wrong = ModelSubset::from_indices(&noise)?;

    let mut rows = Vec::with_capacity(cfg.grid.len());
    for (k, &n) in cfg.grid.iter().enumerate() {
        let prefix = full.prefix(n)?;
        let gaps = gap_report(&prefix, &scn.family, &scn.beta0, alpha_correct, alpha_wrong)?;
        rows.push(AsymptoticsRow {
            rep_id: rep,
            n,
            ratio: traj.ratios[k].unwrap_or(f64::NAN),
            gap_correct: gaps.gap_correct,
            gap_wrong_per_n: gaps.gap_wrong_per_n,
        });
    }
    Ok(rows)
}

/// Runs the trajectory/gap diagnostics for one scenario.
pub fn run_asymptotics(cfg: &AsymptoticsConfig) -> Result<AsymptoticsReport> {
    if cfg.reps == 0 {
        return Err(Error::InvalidConfig("reps must be >= 1".into()));
    }
    if cfg.grid.is_empty() {
        return Err(Error::InvalidConfig("empty n grid".into()));
    }
    let scn = cfg.scenario.scenario();
    let per_rep = run_on_pool(cfg.workers, || {
        (0..cfg.reps as u64)
            .into_par_iter()
            .map(|rep| asymptotics_replication(cfg, &scn, rep))
            .collect::<Result<Vec<_>>>()
    })?;

    let n_max = *cfg.grid.last().expect("non-empty grid");
    let ceiling = cfg.scenario.ratio_ceiling();
    let mut bounded = 0usize;
    let mut max_n_ratios = Vec::with_capacity(cfg.reps);
    let mut gap_ok = 0usize;
    let mut wrong_negative = 0usize;
    let mut total_rows = 0usize;
    for rep_rows in &per_rep {
        let rep_max = rep_rows
            .iter()
            .map(|r| r.ratio)
            .fold(f64::NEG_INFINITY, f64::max);
        if rep_max.is_finite() && rep_max < ceiling {
            bounded += 1;
        }
        for row in rep_rows {
            total_rows += 1;
            let cap = calibrated::GAP_CORRECT_LOGLOG_COEFF * (row.n as f64).ln().ln();
            if row.gap_correct >= -calibrated::GAP_CORRECT_SLACK && row.gap_correct <= cap {
                gap_ok += 1;
            }
            if row.gap_wrong_per_n < 0.0 {
                wrong_negative += 1;
            }
            if row.n == n_max {
                max_n_ratios.push(row.ratio);
            }
        }
    }

    let boundedness_pass_rate = bounded as f64 / cfg.reps as f64;
    let median = median(&mut max_n_ratios);
    let gap_correct_pass_rate = gap_ok as f64 / total_rows as f64;
    let gap_wrong_negative_rate = wrong_negative as f64 / total_rows as f64;

    let summary = AsymptoticsSummary {
        scenario: cfg.scenario.tag().to_string(),
        reps: cfg.reps,
        grid: cfg.grid.clone(),
        ratio_ceiling: ceiling,
        boundedness_pass_rate,
        boundedness_ok: boundedness_pass_rate >= 0.95,
        median_ratio_at_max_n: median,
        median_floor: calibrated::MEDIAN_RATIO_FLOOR,
        floor_ok: median > calibrated::MEDIAN_RATIO_FLOOR,
        gap_correct_pass_rate,
        gap_correct_ok: gap_correct_pass_rate >= 0.95,
        gap_wrong_negative_rate,
        gap_wrong_ok: gap_wrong_negative_rate == 1.0,
    };

    Ok(AsymptoticsReport {
        rows: per_rep.into_iter().flatten().collect(),
        summary,
    })
}

/// Writes per-replication diagnostic rows in the fixed CSV schema.
pub fn write_asymptotics_csv(rows: &[AsymptoticsRow], path: &Path) -> Result<()> {
    let mut out = String::from("rep_id,n,ratio,gap_correct,gap_wrong_per_n\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{:.6},{:.6},{:.6}\n",
            row.rep_id, row.n, row.ratio, row.gap_correct, row.gap_wrong_per_n
        ));
    }
    write_file(path, out.as_bytes())
}

/// Writes the summary verdicts as pretty JSON.
pub fn write_summary_json(summary: &AsymptoticsSummary, path: &Path) -> Result<()> {
    let json = serde_json::to_string_pretty(summary)
        .map_err(|e| Error::InvalidConfig(format!("summary serialization failed: {e}")))?;
    write_file(path, json.as_bytes())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let io_err = |source: std::io::Error| Error::Io {
        path: PathBuf::from(path),
        source,
    };
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(io_err)?;
        }
    }
    let mut file = fs::File::create(path).map_err(io_err)?;
    file.write_all(bytes).map_err(io_err)
}

fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    }
}

fn run_on_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        f()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("worker pool construction")
            .install(f)
    }
}

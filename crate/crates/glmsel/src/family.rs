//! Exponential-family GLM definitions through the relation function `u` and
//! cumulant `b`.
//!
//! Each family provides the per-observation log-likelihood contribution
//! `y u(eta) - b(u(eta))` (up to the coefficient-free constant), the mean
//! `db/du (u(eta))`, the variance `d2b/du2 (u(eta))`, the first two
//! derivatives of `u`, and a response sampler. Canonical families
//! (gaussian-identity, bernoulli-logit, poisson-log) have `u(eta) = eta`;
//! bernoulli-probit and negbin-log carry genuinely non-identity relation
//! functions.

use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{self, log_phi_cdf, normal_pdf};

/// Enumerated family-plus-link tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    GaussianIdentity,
    BernoulliLogit,
    BernoulliProbit,
    PoissonLog,
    NegBinLog,
}

/// The relation function, its first two derivatives, evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UDerivs {
    pub u: f64,
    pub du: f64,
    pub ddu: f64,
}

/// One GLM family plus link, with known dispersion where relevant.
///
/// `dispersion` is the negative-binomial `theta`; it is fixed in advance and
/// never estimated. For the other four families it is conventionally 1 and
/// ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyModel {
    kind: FamilyKind,
    dispersion: f64,
}

impl FamilyModel {
    pub fn gaussian() -> Self {
        Self {
            kind: FamilyKind::GaussianIdentity,
            dispersion: 1.0,
        }
    }

    pub fn logit() -> Self {
        Self {
            kind: FamilyKind::BernoulliLogit,
            dispersion: 1.0,
        }
    }

    pub fn probit() -> Self {
        Self {
            kind: FamilyKind::BernoulliProbit,
            dispersion: 1.0,
        }
    }

    pub fn poisson() -> Self {
        Self {
            kind: FamilyKind::PoissonLog,
            dispersion: 1.0,
        }
    }

    pub fn negbin(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "negbin dispersion must be positive and finite, got {theta}"
            )));
        }
        Ok(Self {
            kind: FamilyKind::NegBinLog,
            dispersion: theta,
        })
    }

    /// Parses the string tags used in configs: "gaussian", "logit",
    /// "probit", "poisson", "negbin" (the last requires `theta`).
    pub fn from_tag(tag: &str, theta: Option<f64>) -> Result<Self> {
        match tag {
            "gaussian" => Ok(Self::gaussian()),
            "logit" => Ok(Self::logit()),
            "probit" => Ok(Self::probit()),
            "poisson" => Ok(Self::poisson()),
            "negbin" => {
                let theta = theta.ok_or_else(|| {
                    Error::InvalidParameter("negbin requires a theta value".into())
                })?;
                Self::negbin(theta)
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown family tag '{other}'"
            ))),
        }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn dispersion(&self) -> f64 {
        self.dispersion
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            FamilyKind::GaussianIdentity => "gaussian",
            FamilyKind::BernoulliLogit => "logit",
            FamilyKind::BernoulliProbit => "probit",
            FamilyKind::PoissonLog => "poisson",
            FamilyKind::NegBinLog => "negbin",
        }
    }

    /// True for families whose relation function is the identity.
    pub fn is_canonical(&self) -> bool {
        matches!(
            self.kind,
            FamilyKind::GaussianIdentity | FamilyKind::BernoulliLogit | FamilyKind::PoissonLog
        )
    }

    /// Checks that `y` lies in the family's support.
    pub fn check_support(&self, y: f64) -> Result<()> {
        let ok = match self.kind {
            FamilyKind::GaussianIdentity => y.is_finite(),
            FamilyKind::BernoulliLogit | FamilyKind::BernoulliProbit => y == 0.0 || y == 1.0,
            FamilyKind::PoissonLog | FamilyKind::NegBinLog => {
                y.is_finite() && y >= 0.0 && y.fract() == 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Support {
                family: self.name(),
                y,
            })
        }
    }

    /// Per-observation log-likelihood contribution `y u(eta) - b(u(eta))`,
    /// dropping the coefficient-free `c(y)` term.
    ///
    /// Finite for all finite `eta` in the range used here (|eta| <= 40 for
    /// the Bernoulli families); extreme linear predictors are evaluated
    /// through log-CDF and softplus routines rather than raw probabilities.
    pub fn loglik_contrib(&self, y: f64, eta: f64) -> Result<f64> {
        self.check_support(y)?;
        Ok(match self.kind {
            FamilyKind::GaussianIdentity => y * eta - 0.5 * eta * eta,
            FamilyKind::BernoulliLogit => y * eta - softplus(eta),
            FamilyKind::PoissonLog => y * eta - eta.exp(),
            FamilyKind::BernoulliProbit => {
                let (log_phi, log_1m_phi) = log_phi_cdf(eta);
                if y == 1.0 {
                    log_phi
                } else {
                    log_1m_phi
                }
            }
            FamilyKind::NegBinLog => {
                // Normalized so that the y = 0 contribution is the exact
                // log-probability theta * log(theta / (theta + mu)).
                let theta = self.dispersion;
                y * eta - (theta + y) * log_theta_plus_exp(theta, eta) + theta * theta.ln()
            }
        })
    }

    /// `E(y | eta) = db/du (u(eta))`; strictly increasing in `eta`.
    pub fn mean(&self, eta: f64) -> f64 {
        match self.kind {
            FamilyKind::GaussianIdentity => eta,
            FamilyKind::BernoulliLogit => sigmoid(eta),
            FamilyKind::BernoulliProbit => {
                let (log_phi, _) = log_phi_cdf(eta);
                log_phi.exp()
            }
            FamilyKind::PoissonLog | FamilyKind::NegBinLog => eta.exp(),
        }
    }

    /// `Var(y | eta) = d2b/du2 (u(eta)) >= 0`.
    pub fn variance(&self, eta: f64) -> f64 {
        match self.kind {
            FamilyKind::GaussianIdentity => 1.0,
            FamilyKind::BernoulliLogit => {
                let p = sigmoid(eta);
                p * (1.0 - p)
            }
            FamilyKind::BernoulliProbit => {
                let (log_phi, log_1m_phi) = log_phi_cdf(eta);
                (log_phi + log_1m_phi).exp()
            }
            FamilyKind::PoissonLog => eta.exp(),
            FamilyKind::NegBinLog => {
                let mu = eta.exp();
                mu * (1.0 + mu / self.dispersion)
            }
        }
    }

    /// The relation function and its first two derivatives at `eta`.
    ///
    /// Canonical families return `(eta, 1, 0)` exactly.
    pub fn u_derivs(&self, eta: f64) -> UDerivs {
        match self.kind {
            FamilyKind::GaussianIdentity | FamilyKind::BernoulliLogit | FamilyKind::PoissonLog => {
                UDerivs {
                    u: eta,
                    du: 1.0,
                    ddu: 0.0,
                }
            }
            FamilyKind::BernoulliProbit => {
                let (log_phi, log_1m_phi) = log_phi_cdf(eta);
                let log_pdf = normal_pdf(eta).ln();
                // du = pdf / (Phi (1 - Phi)), computed in log space so the
                // tails stay finite.
                let du = (log_pdf - log_phi - log_1m_phi).exp();
                let phi = log_phi.exp();
                let ddu = -du * (eta + du * (1.0 - 2.0 * phi));
                UDerivs {
                    u: log_phi - log_1m_phi,
                    du,
                    ddu,
                }
            }
            FamilyKind::NegBinLog => {
                let theta = self.dispersion;
                // s = exp(eta) / (theta + exp(eta)) via a logistic form.
                let s = sigmoid(eta - theta.ln());
                UDerivs {
                    u: eta - log_theta_plus_exp(theta, eta),
                    du: 1.0 - s,
                    ddu: -s * (1.0 - s),
                }
            }
        }
    }

    /// The composed cumulant `b(u(eta))`.
    pub fn cumulant(&self, eta: f64) -> f64 {
        match self.kind {
            FamilyKind::GaussianIdentity => 0.5 * eta * eta,
            FamilyKind::BernoulliLogit => softplus(eta),
            FamilyKind::PoissonLog => eta.exp(),
            FamilyKind::BernoulliProbit => {
                let (_, log_1m_phi) = log_phi_cdf(eta);
                -log_1m_phi
            }
            FamilyKind::NegBinLog => {
                // theta * log((theta + e^eta) / theta): vanishes as
                // eta -> -inf, matching the normalization of loglik_contrib.
                let theta = self.dispersion;
                theta * softplus(eta - theta.ln())
            }
        }
    }

    /// Samples one response at linear predictor `eta`.
    ///
    /// The negative binomial is drawn exactly as a Poisson mixed over a
    /// Gamma with shape `theta` and mean `exp(eta)`.
    pub fn sample<R: Rng>(&self, eta: f64, rng: &mut R) -> Result<f64> {
        match self.kind {
            FamilyKind::GaussianIdentity => numerics::sample_normal(eta, 1.0, rng),
            FamilyKind::BernoulliLogit => {
                Ok(if rng.random::<f64>() < sigmoid(eta) { 1.0 } else { 0.0 })
            }
            FamilyKind::BernoulliProbit => {
                let p = self.mean(eta);
                Ok(if rng.random::<f64>() < p { 1.0 } else { 0.0 })
            }
            FamilyKind::PoissonLog => numerics::sample_poisson(eta.exp(), rng),
            FamilyKind::NegBinLog => {
                let rate = numerics::sample_gamma(self.dispersion, eta.exp(), rng)?;
                numerics::sample_poisson(rate, rng)
            }
        }
    }
}

/// Numerically stable `log(1 + exp(t))`.
fn softplus(t: f64) -> f64 {
    t.max(0.0) + (-t.abs()).exp().ln_1p()
}

fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// Stable `log(theta + exp(eta))`.
fn log_theta_plus_exp(theta: f64, eta: f64) -> f64 {
    theta.ln() + softplus(eta - theta.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn all_families() -> Vec<FamilyModel> {
        vec![
            FamilyModel::gaussian(),
            FamilyModel::logit(),
            FamilyModel::probit(),
            FamilyModel::poisson(),
            FamilyModel::negbin(10.0).unwrap(),
        ]
    }

    fn bernoulli_y(fam: &FamilyModel) -> bool {
        matches!(
            fam.kind(),
            FamilyKind::BernoulliLogit | FamilyKind::BernoulliProbit
        )
    }

    #[test]
    fn probit_loglik_at_zero() {
        let fam = FamilyModel::probit();
        let ll = fam.loglik_contrib(1.0, 0.0).unwrap();
        assert_relative_eq!(ll, 0.5_f64.ln(), max_relative = 1e-14);
    }

    #[test]
    fn negbin_loglik_oracle_value() {
        // Direct high-precision evaluation of y*eta - (theta+y) log(theta+e^eta).
        let fam = FamilyModel::negbin(10.0).unwrap();
        let ll = fam.loglik_contrib(0.0, 0.0).unwrap();
        assert_relative_eq!(ll, -0.953_101_798_043_248_6, max_relative = 1e-13);
    }

    #[test]
    fn poisson_loglik_oracle_value() {
        let fam = FamilyModel::poisson();
        let ll = fam.loglik_contrib(3.0, 1.0).unwrap();
        assert_relative_eq!(ll, 0.281_718_171_540_954_76, max_relative = 1e-13);
    }

    #[test]
    fn means_at_reference_points() {
        assert_relative_eq!(FamilyModel::logit().mean(0.0), 0.5, max_relative = 1e-15);
        assert_relative_eq!(
            FamilyModel::negbin(10.0).unwrap().mean(0.0),
            1.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(FamilyModel::gaussian().mean(2.5), 2.5, max_relative = 1e-15);
    }

    #[test]
    fn variances_at_reference_points() {
        assert_relative_eq!(FamilyModel::logit().variance(0.0), 0.25, max_relative = 1e-15);
        assert_relative_eq!(
            FamilyModel::negbin(10.0).unwrap().variance(0.0),
            1.1,
            max_relative = 1e-14
        );
        assert_relative_eq!(FamilyModel::gaussian().variance(-3.7), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn canonical_u_is_identity() {
        let d = FamilyModel::poisson().u_derivs(7.0);
        assert_eq!((d.u, d.du, d.ddu), (7.0, 1.0, 0.0));
    }

    #[test]
    fn negbin_u_derivs_oracle() {
        // Symbolic differentiation of u(eta) = eta - log(theta + e^eta).
        let d = FamilyModel::negbin(10.0).unwrap().u_derivs(0.0);
        assert_relative_eq!(d.u, -(11.0_f64.ln()), max_relative = 1e-14);
        assert_relative_eq!(d.du, 10.0 / 11.0, max_relative = 1e-14);
        assert_relative_eq!(d.ddu, -10.0 / 121.0, max_relative = 1e-13);
    }

    #[test]
    fn probit_u_derivs_oracle() {
        let d = FamilyModel::probit().u_derivs(0.0);
        assert_relative_eq!(d.u, 0.0, epsilon = 1e-14);
        assert_relative_eq!(d.du, 1.595_769_121_605_730_7, max_relative = 1e-12);
        assert!(d.ddu.abs() < 1e-12, "probit ddu(0) = {}", d.ddu);
    }

    #[test]
    fn finite_difference_checks_on_grid() {
        // u and b o u derivatives against central differences, and the
        // score identity d/deta loglik = du * (y - mean).
        let h = 1e-5;
        for fam in all_families() {
            let mut eta = -10.0;
            while eta <= 10.0 {
                let d = fam.u_derivs(eta);
                let dp = fam.u_derivs(eta + h);
                let dm = fam.u_derivs(eta - h);

                let du_fd = (dp.u - dm.u) / (2.0 * h);
                assert!(
                    (du_fd - d.du).abs() <= 1e-6 * d.du.abs().max(1.0),
                    "{}: du at {eta}: fd {du_fd} vs {}",
                    fam.name(),
                    d.du
                );
                let ddu_fd = (dp.du - dm.du) / (2.0 * h);
                assert!(
                    (ddu_fd - d.ddu).abs() <= 1e-6 * d.ddu.abs().max(1.0),
                    "{}: ddu at {eta}: fd {ddu_fd} vs {}",
                    fam.name(),
                    d.ddu
                );

                // d/deta b(u(eta)) = mean * du.
                let db_fd = (fam.cumulant(eta + h) - fam.cumulant(eta - h)) / (2.0 * h);
                let db = fam.mean(eta) * d.du;
                assert!(
                    (db_fd - db).abs() <= 1e-6 * db.abs().max(1.0),
                    "{}: d(b o u) at {eta}: fd {db_fd} vs {db}",
                    fam.name()
                );

                let y = if bernoulli_y(&fam) { 1.0 } else { 2.0 };
                let ll_fd = (fam.loglik_contrib(y, eta + h).unwrap()
                    - fam.loglik_contrib(y, eta - h).unwrap())
                    / (2.0 * h);
                let score = d.du * (y - fam.mean(eta));
                assert!(
                    (ll_fd - score).abs() <= 1e-6 * score.abs().max(1.0),
                    "{}: score at {eta}: fd {ll_fd} vs {score}",
                    fam.name()
                );

                eta += 0.5;
            }
        }
    }

    #[test]
    fn mean_is_monotone_on_grid() {
        for fam in all_families() {
            // Bernoulli means saturate to 1.0 at f64 resolution past
            // eta ~ 8.3, where strict inequality is unrepresentable.
            let top = if bernoulli_y(&fam) { 8.0 } else { 10.0 };
            let mut prev = fam.mean(-top);
            let mut eta = -top + 0.25;
            while eta <= top {
                let m = fam.mean(eta);
                assert!(m > prev, "{} mean not increasing at {eta}", fam.name());
                prev = m;
                eta += 0.25;
            }
        }
    }

    #[test]
    fn probit_symmetry() {
        let fam = FamilyModel::probit();
        for eta in [-8.0, -3.0, -0.4, 0.0, 1.2, 6.0] {
            let a = fam.loglik_contrib(1.0, eta).unwrap();
            let b = fam.loglik_contrib(0.0, -eta).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn variance_nonnegative_everywhere() {
        for fam in all_families() {
            let mut eta = -10.0;
            while eta <= 10.0 {
                assert!(fam.variance(eta) >= 0.0);
                eta += 0.5;
            }
        }
    }

    #[test]
    fn support_violations_error() {
        assert!(FamilyModel::logit().loglik_contrib(2.0, 0.0).is_err());
        assert!(FamilyModel::poisson().loglik_contrib(-1.0, 0.0).is_err());
        assert!(FamilyModel::poisson().loglik_contrib(2.5, 0.0).is_err());
        assert!(FamilyModel::negbin(10.0)
            .unwrap()
            .loglik_contrib(0.5, 0.0)
            .is_err());
        assert!(FamilyModel::gaussian().loglik_contrib(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn extreme_eta_stays_finite() {
        for fam in all_families() {
            for eta in [-40.0, -25.0, 25.0, 40.0] {
                let y = if bernoulli_y(&fam) { 1.0 } else { 0.0 };
                let ll = fam.loglik_contrib(y, eta).unwrap();
                assert!(ll.is_finite(), "{} loglik at {eta}", fam.name());
            }
        }
    }

    #[test]
    fn tag_parsing() {
        assert!(FamilyModel::from_tag("probit", None).is_ok());
        assert!(FamilyModel::from_tag("negbin", None).is_err());
        assert!(FamilyModel::from_tag("negbin", Some(10.0)).is_ok());
        assert!(FamilyModel::from_tag("weibull", None).is_err());
        assert!(FamilyModel::negbin(-1.0).is_err());
    }
}

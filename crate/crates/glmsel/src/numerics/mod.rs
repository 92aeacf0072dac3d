//! Dense symmetric linear algebra, stable normal-CDF evaluation, and a
//! deterministic splittable random-number stream.

mod linalg;
mod rng;
mod special;

pub use linalg::{eig_extremes, solve_psd, SymMatrix};
pub use rng::{DistSpec, RngStream};
pub use special::{erfc, erfcx, log_phi_cdf, normal_cdf, normal_pdf};

pub(crate) use rng::{sample, sample_gamma, sample_normal, sample_poisson};

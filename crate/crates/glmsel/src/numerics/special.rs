//! Stable standard-normal CDF evaluation built on Cephes-style rational
//! approximations of the error function.

use std::f64::consts::FRAC_1_SQRT_2;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

// Cephes ndtr/erf coefficient sets (Moshier's public-domain constants).
const T: [f64; 5] = [
    9.604_973_739_870_516e0,
    9.002_601_972_038_427e1,
    2.232_005_345_946_843e3,
    7.003_325_141_128_051e3,
    5.559_230_130_103_949e4,
];
const U: [f64; 5] = [
    3.356_171_416_475_031e1,
    5.213_579_497_801_527e2,
    4.594_323_829_709_801e3,
    2.262_900_006_138_909e4,
    4.926_739_426_086_359e4,
];
const P: [f64; 9] = [
    2.461_969_814_735_305e-10,
    5.641_895_648_310_688e-1,
    7.463_210_564_422_699e0,
    4.863_719_709_856_814e1,
    1.965_208_329_560_771e2,
    5.264_451_949_954_773e2,
    9.345_285_271_719_576e2,
    1.027_551_886_895_157e3,
    5.575_353_353_693_994e2,
];
const Q: [f64; 8] = [
    1.322_819_511_547_45e1,
    8.670_721_408_859_897e1,
    3.549_377_788_878_199e2,
    9.757_085_017_432_055e2,
    1.823_909_166_879_097e3,
    2.246_337_608_187_11e3,
    1.656_663_091_941_613e3,
    5.575_353_408_177_277e2,
];
const R: [f64; 6] = [
    5.641_895_835_477_551e-1,
    1.275_366_707_599_781e0,
    5.019_050_422_511_805e0,
    6.160_210_979_930_536e0,
    7.409_742_699_504_489e0,
    2.978_866_653_721_002e0,
];
const S: [f64; 6] = [
    2.260_528_632_201_173e0,
    9.396_035_249_380_014e0,
    1.204_895_398_080_966e1,
    1.708_144_507_475_659e1,
    9.608_968_090_632_859e0,
    3.369_076_451_000_815e0,
];

fn polevl(x: f64, coef: &[f64]) -> f64 {
    coef.iter().fold(0.0, |acc, &c| acc * x + c)
}

fn p1evl(x: f64, coef: &[f64]) -> f64 {
    coef.iter().fold(1.0, |acc, &c| acc * x + c)
}

fn erf_small(x: f64) -> f64 {
    debug_assert!(x.abs() <= 1.0);
    let z = x * x;
    x * polevl(z, &T) / p1evl(z, &U)
}

/// Scaled complementary error function `exp(x^2) erfc(x)` for `x >= 0`.
///
/// Stays representable for arbitrarily large arguments, which is what keeps
/// log-CDF evaluation finite deep in the normal tail.
pub fn erfcx(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x < 1.0 {
        (x * x).exp() * (1.0 - erf_small(x))
    } else if x < 8.0 {
        polevl(x, &P) / p1evl(x, &Q)
    } else {
        polevl(x, &R) / p1evl(x, &S)
    }
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    let ax = x.abs();
    let y = if ax < 1.0 {
        1.0 - erf_small(ax)
    } else {
        let z = -ax * ax;
        if z < -708.0 {
            0.0
        } else {
            z.exp() * erfcx(ax)
        }
    };
    if x < 0.0 {
        2.0 - y
    } else {
        y
    }
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}

/// `log Phi(x)` for a single tail, finite for |x| up to several hundred.
fn log_ndtr(x: f64) -> f64 {
    if x >= 0.0 {
        // Phi = 1 - Q with Q <= 1/2; log1p keeps the upper tail exact.
        (-0.5 * erfc(x * FRAC_1_SQRT_2)).ln_1p()
    } else {
        // Phi(x) = exp(-x^2/2) * erfcx(-x/sqrt 2) / 2; never goes through
        // the raw CDF, so nothing underflows before the log.
        (0.5 * erfcx(-x * FRAC_1_SQRT_2)).ln() - 0.5 * x * x
    }
}

/// Returns `(log Phi(x), log(1 - Phi(x)))`.
///
/// The pair is computed as `(log_ndtr(x), log_ndtr(-x))`, so the symmetry
/// `log Phi(x) = log(1-Phi)(-x)` holds exactly by construction.
pub fn log_phi_cdf(x: f64) -> (f64, f64) {
    (log_ndtr(x), log_ndtr(-x))
}

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Largest matrix order accepted; the selection problems here stay tiny.
pub const MAX_ORDER: usize = 64;

/// Relative jitter bounds for the positive-semidefinite solve.
const JITTER_START: f64 = 1e-10;
const JITTER_MAX: f64 = 1e-4;

/// A small dense symmetric matrix, symmetrized on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    // Row-major order x order storage; both triangles kept in sync.
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(order: usize) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::Dimension(format!(
                "symmetric matrix order must be in 1..={MAX_ORDER}, got {order}"
            )));
        }
        Ok(Self {
            order,
            data: vec![0.0; order * order],
        })
    }

    pub fn identity(order: usize) -> Result<Self> {
        let mut m = Self::zeros(order)?;
        for i in 0..order {
            m.data[i * order + i] = 1.0;
        }
        Ok(m)
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * m.order + i] = d;
        }
        Ok(m)
    }

    /// Builds from arbitrary row-major entries, enforcing symmetry by
    /// averaging mirrored entries.
    pub fn from_entries(order: usize, entries: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(order)?;
        if entries.len() != order * order {
            return Err(Error::Dimension(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        for i in 0..order {
            for j in 0..order {
                let avg = 0.5 * (entries[i * order + j] + entries[j * order + i]);
                m.data[i * order + j] = avg;
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    /// Sets both mirrored entries.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.order + j] = value;
        self.data[j * self.order + i] = value;
    }

    /// Accumulates `coeff * x xᵗ`; both triangles receive identical values.
    pub fn add_scaled_outer(&mut self, coeff: f64, x: &[f64]) {
        debug_assert_eq!(x.len(), self.order);
        for i in 0..self.order {
            let ci = coeff * x[i];
            for j in 0..self.order {
                self.data[i * self.order + j] += ci * x[j];
            }
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    /// `log det` via Cholesky; `None` when the matrix is not positive definite.
    pub fn log_det(&self) -> Option<f64> {
        let chol = self.to_dmatrix().cholesky()?;
        let l = chol.l();
        Some(2.0 * (0..self.order).map(|i| l[(i, i)].ln()).sum::<f64>())
    }

    pub(crate) fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.order, self.order, &self.data)
    }

    /// Quadratic form vᵗ A v.
    pub fn quad_form(&self, v: &[f64]) -> f64 {
        debug_assert_eq!(v.len(), self.order);
        let mut acc = 0.0;
        for i in 0..self.order {
            let mut row = 0.0;
            for j in 0..self.order {
                row += self.get(i, j) * v[j];
            }
            acc += v[i] * row;
        }
        acc
    }

    /// Matrix-vector product A v.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.order);
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

/// Solves `A x = rhs` for positive-semidefinite `A` by Cholesky with
/// escalating diagonal jitter.
///
/// The jitter starts at `1e-10 * trace(A)/p` and grows tenfold up to
/// `1e-4 * trace(A)/p` before giving up with [`Error::SingularSystem`].
pub fn solve_psd(a: &SymMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    if rhs.len() != a.order() {
        return Err(Error::Dimension(format!(
            "rhs length {} does not match matrix order {}",
            rhs.len(),
            a.order()
        )));
    }
    let b = DVector::from_column_slice(rhs);
    let scale = a.trace() / a.order() as f64;
    let mut jitter = 0.0;
    loop {
        let mut m = a.to_dmatrix();
        if jitter > 0.0 {
            for i in 0..a.order() {
                m[(i, i)] += jitter;
            }
        }
        if let Some(chol) = m.cholesky() {
            return Ok(chol.solve(&b).as_slice().to_vec());
        }
        jitter = if jitter == 0.0 {
            JITTER_START * scale
        } else {
            jitter * 10.0
        };
        if jitter.is_nan() || jitter <= 0.0 || jitter > JITTER_MAX * scale {
            return Err(Error::SingularSystem);
        }
    }
}

/// Returns `(lambda_min, lambda_max)` of a symmetric matrix via a direct
/// symmetric eigendecomposition.
pub fn eig_extremes(a: &SymMatrix) -> (f64, f64) {
    let eig = a.to_dmatrix().symmetric_eigen();
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in eig.eigenvalues.iter() {
        min = min.min(v);
        max = max.max(v);
    }
    (min, max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn solve_identity() {
        let a = SymMatrix::identity(3).unwrap();
        let x = solve_psd(&a, &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(x, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn solve_diagonal() {
        let a = SymMatrix::from_diag(&[2.0, 4.0]).unwrap();
        let x = solve_psd(&a, &[2.0, 4.0]).unwrap();
        assert_relative_eq!(x[0], 1.0, max_relative = 1e-12);
        assert_relative_eq!(x[1], 1.0, max_relative = 1e-12);
    }

    #[test]
    fn solve_two_by_two() {
        // [[2,1],[1,2]] x = (3,3) has solution (1,1).
        let a = SymMatrix::from_entries(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let x = solve_psd(&a, &[3.0, 3.0]).unwrap();
        assert_relative_eq!(x[0], 1.0, max_relative = 1e-12);
        assert_relative_eq!(x[1], 1.0, max_relative = 1e-12);
    }

    #[test]
    fn solve_rejects_hopeless_singularity() {
        let a = SymMatrix::zeros(2).unwrap();
        assert!(matches!(
            solve_psd(&a, &[1.0, 1.0]),
            Err(Error::SingularSystem)
        ));
    }

    #[test]
    fn solve_residual_on_random_pd() {
        // M^t M + I is comfortably positive definite.
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for order in 2..=8 {
            let m: Vec<f64> = (0..order * order)
                .map(|_| rng.random::<f64>() * 2.0 - 1.0)
                .collect();
            let mut a = SymMatrix::identity(order).unwrap();
            for i in 0..order {
                for j in i..order {
                    let mut dot = 0.0;
                    for k in 0..order {
                        dot += m[k * order + i] * m[k * order + j];
                    }
                    a.set(i, j, a.get(i, j) + dot);
                }
            }
            let rhs: Vec<f64> = (0..order).map(|_| rng.random::<f64>()).collect();
            let x = solve_psd(&a, &rhs).unwrap();
            let back = a.mul_vec(&x);
            let num: f64 = back
                .iter()
                .zip(&rhs)
                .map(|(b, r)| (b - r) * (b - r))
                .sum::<f64>()
                .sqrt();
            let den: f64 = rhs.iter().map(|r| r * r).sum::<f64>().sqrt();
            assert!(num / den < 1e-8, "residual {} too large", num / den);
        }
    }

    #[test]
    fn eig_identity_and_diag() {
        let (lo, hi) = eig_extremes(&SymMatrix::identity(4).unwrap());
        assert_relative_eq!(lo, 1.0, max_relative = 1e-12);
        assert_relative_eq!(hi, 1.0, max_relative = 1e-12);

        let (lo, hi) = eig_extremes(&SymMatrix::from_diag(&[1.0, 5.0, 3.0]).unwrap());
        assert_relative_eq!(lo, 1.0, max_relative = 1e-10);
        assert_relative_eq!(hi, 5.0, max_relative = 1e-10);
    }

    #[test]
    fn eig_two_by_two_hand_value() {
        // Characteristic polynomial of [[2,1],[1,2]] gives 1 and 3.
        let a = SymMatrix::from_entries(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let (lo, hi) = eig_extremes(&a);
        assert_relative_eq!(lo, 1.0, max_relative = 1e-8);
        assert_relative_eq!(hi, 3.0, max_relative = 1e-8);
    }

    #[test]
    fn eig_brackets_rayleigh_quotient() {
        let a = SymMatrix::from_entries(3, &[4.0, 1.0, 0.5, 1.0, 3.0, 0.2, 0.5, 0.2, 2.0]).unwrap();
        let (lo, hi) = eig_extremes(&a);
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..100 {
            let mut v: Vec<f64> = (0..3).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
            let q = a.quad_form(&v);
            assert!(lo - 1e-10 <= q && q <= hi + 1e-10);
        }
    }

    #[test]
    fn symmetrization_on_construction() {
        let m = SymMatrix::from_entries(2, &[1.0, 2.0, 4.0, 5.0]).unwrap();
        assert_eq!(m.get(0, 1), 3.0);
        assert_eq!(m.get(1, 0), 3.0);
    }

    #[test]
    fn order_bound_enforced() {
        assert!(SymMatrix::zeros(MAX_ORDER).is_ok());
        assert!(SymMatrix::zeros(MAX_ORDER + 1).is_err());
        assert!(SymMatrix::zeros(0).is_err());
    }
}

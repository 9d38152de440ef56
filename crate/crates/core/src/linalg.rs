use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::Matrix;

/// `I − M` factored once, with its 2-norm condition number.
#[derive(Debug, Clone)]
pub struct ShiftedSolver {
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    condition: f64,
}

impl ShiftedSolver {
    /// Factors `I − M`; fails with [`Error::Singular`] when it is numerically singular.
    pub fn new(m: &Matrix) -> Result<Self> {
        let dim = m.nrows();
        let shifted = Matrix::identity(dim, dim) - m;
        let sv = shifted.singular_values();
        let max = sv.max();
        let min = sv.min();
        if min.is_nan() || min <= f64::EPSILON * dim as f64 * max.max(1.0) {
            return Err(Error::Singular {
                min_singular_value: min,
                eigenvalue: eigenvalue_nearest_one(m),
            });
        }
        Ok(Self {
            lu: shifted.lu(),
            condition: max / min,
        })
    }

    pub fn condition(&self) -> f64 {
        self.condition
    }

    pub fn solve(&self, rhs: &crate::Vector) -> crate::Vector {
        self.lu.solve(rhs).expect("I - M checked non-singular")
    }

    /// `(I − M)^{−1}`.
    pub fn inverse(&self) -> Matrix {
        self.lu.try_inverse().expect("I - M checked non-singular")
    }
}

/// Eigenvalue of `m` closest to one, the one responsible for a singular `I − M`.
pub fn eigenvalue_nearest_one(m: &Matrix) -> Complex<f64> {
    m.complex_eigenvalues()
        .iter()
        .copied()
        .min_by(|a, b| {
            let da = (a - Complex::new(1.0, 0.0)).norm();
            let db = (b - Complex::new(1.0, 0.0)).norm();
            da.total_cmp(&db)
        })
        .unwrap_or(Complex::new(f64::NAN, f64::NAN))
}

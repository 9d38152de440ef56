//! Double-double matrices for the inner sums of the series.
//!
//! Word sums, monomials and partial sums are carried in double-double and
//! rounded once at the end, so cancellation between large terms costs
//! about `2^-106` of their size rather than `2^-53`.

use nalgebra::DMatrix;
use twofloat::TwoFloat;

use crate::Matrix;

pub(crate) type Wide = TwoFloat;
pub(crate) type WideMatrix = DMatrix<TwoFloat>;

pub(crate) fn widen(a: &Matrix) -> WideMatrix {
    a.map(TwoFloat::from)
}

pub(crate) fn narrow(a: &WideMatrix) -> Matrix {
    a.map(f64::from)
}

pub(crate) fn zeros(dim: usize) -> WideMatrix {
    WideMatrix::zeros(dim, dim)
}

pub(crate) fn identity(dim: usize) -> WideMatrix {
    WideMatrix::identity(dim, dim)
}

/// Largest entry magnitude, to `f64` precision.
pub(crate) fn amax(a: &WideMatrix) -> f64 {
    a.iter().map(|x| f64::from(*x).abs()).fold(0.0, f64::max)
}

pub(crate) fn is_finite(a: &WideMatrix) -> bool {
    a.iter().all(|x| f64::from(*x).is_finite())
}

/// Series order `iα + c` without rounding the product.
pub(crate) fn series_order(i: usize, alpha: f64, c: f64) -> Wide {
    Wide::new_mul(i as f64, alpha) + c
}

/// `H_μ(k, a)` with the same conventions as [`crate::grid::monomial`].
pub(crate) fn monomial(order: Wide, k: i64, a: i64) -> Wide {
    let m = k - a;
    if m <= 0 {
        return Wide::from(if m == 0 && order == 0.0 { 1.0 } else { 0.0 });
    }
    let mut value = Wide::from(1.0);
    for t in 1..m {
        let t = t as f64;
        // only divisions by f64 are used
        value *= (order + t) / t;
    }
    value
}

//! Nabla fractional sum and Riemann–Liouville fractional difference.
//!
//! Both operators are finite convolutions against a monomial kernel:
//!
//! ```text
//! ∇_a^{−α} z(k) = Σ_{s=a+1}^{k} H_{α−1}(k, s − 1) z(s)
//! ∇_a^{α}  z(k) = Σ_{s=a+1}^{k} H_{−α−1}(k, s − 1) z(s)      (0 < α ≤ 1)
//! ```
//!
//! The `_by` variants take the grid function as a closure and work for any
//! value type that can be scaled and added (`f64`, vectors, matrices); the
//! plain variants read a [`GridSeries`] and report missing samples.

use std::ops::{AddAssign, Mul};

use super::monomial::monomial_weights;
use super::series::GridSeries;
use crate::error::{Error, Result};
use crate::Vector;

/// `Σ_{s=a+1}^{k} H_{order}(k, s − 1) f(s)`; `zero` when `k ≤ a`.
pub fn kernel_sum_by<T, F>(order: f64, a: i64, k: i64, zero: T, mut f: F) -> T
where
    T: AddAssign + Mul<f64, Output = T>,
    F: FnMut(i64) -> T,
{
    let mut acc = zero;
    if k <= a {
        return acc;
    }
    let weights = monomial_weights(order, (k - a) as usize);
    for s in a + 1..=k {
        // s sits k − s + 1 steps from the kernel base s − 1
        let w = weights[(k - s) as usize];
        if w != 0.0 {
            acc += f(s) * w;
        }
    }
    acc
}

/// Nabla fractional sum of order `alpha > 0` with base `a`, closure form.
pub fn nabla_sum_by<T, F>(alpha: f64, a: i64, k: i64, zero: T, f: F) -> T
where
    T: AddAssign + Mul<f64, Output = T>,
    F: FnMut(i64) -> T,
{
    kernel_sum_by(alpha - 1.0, a, k, zero, f)
}

/// Riemann–Liouville fractional difference of order `alpha` with base `a`, closure form.
///
/// The coefficient of `f(k)` is exactly one, so the value at `k` enters
/// with unit weight.
pub fn rl_difference_by<T, F>(alpha: f64, a: i64, k: i64, zero: T, f: F) -> T
where
    T: AddAssign + Mul<f64, Output = T>,
    F: FnMut(i64) -> T,
{
    kernel_sum_by(-alpha - 1.0, a, k, zero, f)
}

fn check_support(z: &GridSeries, a: i64, k: i64) -> Result<()> {
    if k > a {
        z.get(a + 1)?;
        z.get(k)?;
    }
    Ok(())
}

/// `∇_a^{−α} z(k)` for `α > 0`. Returns the zero vector when `k ≤ a`.
///
/// ```
/// use nabla_dpml::{nabla_sum, GridSeries};
///
/// let ones = GridSeries::scalar(1, &[1.0; 3]).unwrap();
/// assert_eq!(nabla_sum(1.0, 0, &ones, 3).unwrap()[0], 3.0);
/// ```
pub fn nabla_sum(alpha: f64, a: i64, z: &GridSeries, k: i64) -> Result<Vector> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("fractional sum order must be positive, got {alpha}"),
        });
    }
    check_support(z, a, k)?;
    Ok(nabla_sum_by(alpha, a, k, Vector::zeros(z.dim()), |s| {
        z.get(s).expect("support checked").clone()
    }))
}

/// `∇_a^{α} z(k)` for `0 < α ≤ 1`, defined for `k ≥ a + 1`.
pub fn rl_difference(alpha: f64, a: i64, z: &GridSeries, k: i64) -> Result<Vector> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("difference order must lie in (0, 1], got {alpha}"),
        });
    }
    if k <= a {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: format!("difference with base {a} is defined for k >= {}, got {k}", a + 1),
        });
    }
    check_support(z, a, k)?;
    Ok(rl_difference_by(alpha, a, k, Vector::zeros(z.dim()), |s| {
        z.get(s).expect("support checked").clone()
    }))
}

/// Backward difference `∇z(k) = z(k) − z(k − 1)`.
pub fn backward_difference(z: &GridSeries, k: i64) -> Result<Vector> {
    Ok(z.get(k)? - z.get(k - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::monomial;

    fn scalar_fn(first: i64, last: i64, f: impl Fn(i64) -> f64) -> GridSeries {
        GridSeries::from_fn(first, last, 1, |k| Vector::from_element(1, f(k))).unwrap()
    }

    #[test]
    fn empty_sum_is_zero() {
        let z = scalar_fn(1, 5, |_| 1.0);
        assert_eq!(nabla_sum(0.4, 3, &z, 3).unwrap()[0], 0.0);
        assert_eq!(nabla_sum(0.4, 3, &z, 1).unwrap()[0], 0.0);
    }

    #[test]
    fn order_one_sum_is_plain_summation() {
        let z = scalar_fn(1, 3, |_| 1.0);
        assert_eq!(nabla_sum(1.0, 0, &z, 3).unwrap()[0], 3.0);
    }

    #[test]
    fn monomial_sum_hits_order_zero() {
        let z = scalar_fn(1, 10, |s| monomial(0.3 - 1.0, s, 0));
        let v = nabla_sum(0.7, 0, &z, 10).unwrap()[0];
        assert!((v - 1.0).abs() < 1e-13, "{v}");
    }

    #[test]
    fn rl_difference_first_point_has_unit_weight() {
        let z = scalar_fn(-4, 0, |s| 3.0 + s as f64);
        let v = rl_difference(0.35, -4, &z, -3).unwrap()[0];
        assert_eq!(v, z.scalar_at(-3).unwrap());
    }

    #[test]
    fn rl_difference_of_constant() {
        // H_{-1.5}(1, 0) + H_{-1.5}(1, -1) + H_{-1.5}(1, -2) = 1 - 0.5 - 0.125
        let z = scalar_fn(-1, 1, |_| 1.0);
        let v = rl_difference(0.5, -2, &z, 1).unwrap()[0];
        assert!((v - 0.375).abs() < 1e-15);
    }

    #[test]
    fn missing_samples_are_reported() {
        let z = scalar_fn(2, 6, |_| 1.0);
        assert!(matches!(
            nabla_sum(0.5, 0, &z, 4),
            Err(Error::OutOfRange { k: 1, .. })
        ));
        assert!(matches!(
            rl_difference(0.5, 1, &z, 7),
            Err(Error::OutOfRange { k: 7, .. })
        ));
    }

    #[test]
    fn parameter_checks() {
        let z = scalar_fn(1, 3, |_| 1.0);
        assert!(nabla_sum(0.0, 0, &z, 2).is_err());
        assert!(rl_difference(1.5, 0, &z, 2).is_err());
        assert!(rl_difference(0.5, 0, &z, 0).is_err());
    }

    #[test]
    fn order_one_difference_is_backward_difference() {
        let z = scalar_fn(0, 8, |s| (s * s) as f64);
        for k in 2..=8 {
            let rl = rl_difference(1.0, 0, &z, k).unwrap()[0];
            let bd = backward_difference(&z, k).unwrap()[0];
            assert!((rl - bd).abs() < 1e-12);
        }
    }
}

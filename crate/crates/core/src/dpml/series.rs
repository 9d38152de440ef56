use std::collections::VecDeque;

use super::wide::{self, WideMatrix};
use crate::error::{Error, Result};
use crate::Matrix;

/// Stop rule for the infinite `i`-series behind the Mittag-Leffler type functions.
///
/// Summation stops once `window` consecutive terms have max-norm below
/// `tol · (1 + ‖partial sum‖_max)` and the geometric tail extrapolated from
/// the decay over that window is below half the same bound. A series whose terms keep growing for
/// `divergence_growth` consecutive steps past `i_max / 2`, or that reaches
/// `i_max` terms without stopping, is reported as divergent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub tol: f64,
    pub window: usize,
    pub i_max: usize,
    pub divergence_growth: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            window: 3,
            i_max: 500,
            divergence_growth: 10,
        }
    }
}

impl TruncationPolicy {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_i_max(mut self, i_max: usize) -> Self {
        self.i_max = i_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, reason: &str| {
            Err(Error::InvalidParameter {
                name,
                reason: reason.to_string(),
            })
        };
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("tol", "must be a positive finite number");
        }
        if self.window == 0 {
            return bad("window", "must be positive");
        }
        if self.i_max == 0 {
            return bad("i_max", "must be positive");
        }
        if self.divergence_growth == 0 {
            return bad("divergence_growth", "must be positive");
        }
        Ok(())
    }
}

/// Sums `term(0) + term(1) + …` under `policy`. `k` only labels the error.
///
/// `term(i)` returns the matrix term and a magnitude bounding its max-norm,
/// such as the sum of the absolute contributions that make it up. The stop
/// and divergence rules read the magnitude, so a term that is small only
/// through cancellation does not end the summation early. The sum is
/// accumulated in double-double and rounded on return.
pub(crate) fn sum_series<F>(policy: &TruncationPolicy, k: i64, dim: usize, mut term: F) -> Result<Matrix>
where
    F: FnMut(usize) -> (WideMatrix, f64),
{
    let diverged = |terms| Error::Divergence {
        k,
        terms,
        policy: *policy,
    };
    let mut acc = wide::zeros(dim);
    let mut quiet = 0usize;
    let mut growing = 0usize;
    let mut prev_norm = f64::INFINITY;
    // magnitudes of the last `window + 1` terms
    let mut recent: VecDeque<f64> = VecDeque::with_capacity(policy.window + 1);
    for i in 0..policy.i_max {
        let (t, magnitude) = term(i);
        let norm = magnitude.max(wide::amax(&t));
        acc += t;
        if !norm.is_finite() || !wide::is_finite(&acc) {
            return Err(diverged(i + 1));
        }
        if recent.len() > policy.window {
            recent.pop_front();
        }
        recent.push_back(norm);
        let bound = policy.tol * (1.0 + wide::amax(&acc));
        if norm < bound {
            quiet += 1;
            if quiet >= policy.window && tail_estimate(&recent) <= bound / 2.0 {
                return Ok(wide::narrow(&acc));
            }
        } else {
            quiet = 0;
        }
        if i >= policy.i_max / 2 && norm > prev_norm {
            growing += 1;
            if growing >= policy.divergence_growth {
                return Err(diverged(i + 1));
            }
        } else {
            growing = 0;
        }
        prev_norm = norm;
    }
    Err(diverged(policy.i_max))
}

/// A term whose own max-norm serves as its magnitude.
pub(crate) fn plain(t: WideMatrix) -> (WideMatrix, f64) {
    let norm = wide::amax(&t);
    (t, norm)
}

/// Geometric tail `t·ρ/(1 − ρ)` after the last norm `t`, with `ρ` the mean
/// decay ratio across `norms`. Infinite when the norms are not decaying.
fn tail_estimate(norms: &VecDeque<f64>) -> f64 {
    let (first, last) = (norms[0], norms[norms.len() - 1]);
    if last == 0.0 {
        return 0.0;
    }
    if first == 0.0 || norms.len() < 2 {
        return f64::INFINITY;
    }
    let ratio = (last / first).powf(1.0 / (norms.len() - 1) as f64);
    if ratio >= 1.0 {
        f64::INFINITY
    } else {
        last * ratio / (1.0 - ratio)
    }
}

/// `term(0) + … + term(last)` with no stop rule.
pub(crate) fn partial_sum<F>(last: usize, dim: usize, mut term: F) -> Matrix
where
    F: FnMut(usize) -> WideMatrix,
{
    let mut acc = wide::zeros(dim);
    for i in 0..=last {
        acc += term(i);
    }
    wide::narrow(&acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(x: f64) -> WideMatrix {
        wide::widen(&Matrix::from_element(1, 1, x))
    }

    #[test]
    fn geometric_series_converges() {
        let p = TruncationPolicy::default();
        let v = sum_series(&p, 0, 1, |i| plain(scalar(0.5f64.powi(i as i32)))).unwrap();
        assert!((v[(0, 0)] - 2.0).abs() < 1e-11);
    }

    #[test]
    fn slow_geometric_series_accounts_for_tail() {
        let p = TruncationPolicy::default().with_tol(1e-6);
        let v = sum_series(&p, 0, 1, |i| plain(scalar(0.97f64.powi(i as i32)))).unwrap();
        let exact = 1.0 / 0.03;
        assert!((v[(0, 0)] - exact).abs() <= 1e-6 * (1.0 + exact), "{}", v[(0, 0)]);
    }

    #[test]
    fn cancelling_terms_do_not_stop_early() {
        // small signed terms 5..8 with large magnitudes, then a late hump
        let p = TruncationPolicy::default().with_tol(1e-6);
        let shape = |i: usize| if (5..8).contains(&i) { 1e-9 } else { 0.5f64.powi(i as i32) };
        let v = sum_series(&p, 0, 1, |i| (scalar(shape(i)), 0.5f64.powi(i as i32).max(shape(i)))).unwrap();
        assert!((v[(0, 0)] - (2.0 - 0.5f64.powi(5) - 0.5f64.powi(6) - 0.5f64.powi(7) + 3e-9)).abs() < 1e-5);
        let naive = sum_series(&p, 0, 1, |i| plain(scalar(shape(i)))).unwrap();
        assert!(naive[(0, 0)] < v[(0, 0)] - 1e-3);
    }

    #[test]
    fn finite_series_stops_after_window() {
        let p = TruncationPolicy::default();
        let mut calls = 0;
        let v = sum_series(&p, 0, 1, |i| {
            calls += 1;
            plain(scalar(if i < 4 { 1.0 } else { 0.0 }))
        })
        .unwrap();
        assert_eq!(v[(0, 0)], 4.0);
        assert_eq!(calls, 4 + p.window);
    }

    #[test]
    fn growing_series_is_divergent() {
        let p = TruncationPolicy::default();
        let err = sum_series(&p, 7, 1, |i| plain(scalar(1.1f64.powi(i as i32)))).unwrap_err();
        match err {
            Error::Divergence { k, terms, .. } => {
                assert_eq!(k, 7);
                assert!(terms > p.i_max / 2 && terms < p.i_max);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn slow_series_hits_i_max() {
        let p = TruncationPolicy::default().with_i_max(50);
        let err = sum_series(&p, 0, 1, |i| plain(scalar(1.0 / (i as f64 + 1.0)))).unwrap_err();
        assert!(matches!(err, Error::Divergence { terms: 50, .. }));
    }

    #[test]
    fn overflow_is_divergence() {
        let p = TruncationPolicy::default();
        let err = sum_series(&p, 0, 1, |i| plain(scalar(if i == 3 { f64::INFINITY } else { 1.0 })));
        assert!(matches!(err, Err(Error::Divergence { terms: 4, .. })));
    }

    #[test]
    fn policy_validation() {
        assert!(TruncationPolicy::default().validate().is_ok());
        assert!(TruncationPolicy::default().with_tol(0.0).validate().is_err());
        assert!(TruncationPolicy::default().with_i_max(0).validate().is_err());
    }
}

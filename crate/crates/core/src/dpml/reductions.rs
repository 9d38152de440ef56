//! Known matrix functions that the DPML function reduces to.
//!
//! Each reduction is evaluated from its own definition, never through the
//! DPML series, so it can serve as an independent check on [`Dpml`].

use super::function::{check_order, ml_eval, DpmlParams};
use super::words::{binomial, check_commuting};
use crate::error::{Error, Result};
use crate::grid::monomial;
use crate::linalg::ShiftedSolver;
use crate::Matrix;

#[cfg(doc)]
use super::function::Dpml;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    /// `α = β = 1`: fundamental matrix of `∇z(k) = Mz(k) + Nz(k − r)`, the
    /// delayed perturbation of the discrete exponential, computed by
    /// stepping `(I − M)D(k) = D(k − 1) + ND(k − r)`.
    PerturbedDelayedExponential,
    /// `α = β = 1`, `M = Θ`: delayed discrete exponential `e_h^{Nk}` with `h = r − 1`.
    DelayedExponential,
    /// `M = Θ`, `α = β`: delayed discrete Mittag-Leffler function
    /// `F_r(k) = Σ_{i=0}^{p} N^i H_{iα+α−1}(k, (i−1)r)`.
    DelayedMittagLeffler,
    /// `N = Θ`: Mittag-Leffler matrix function `E_{M,α,β−1}(k, −r)`.
    MittagLeffler,
    /// `α = β = 1`, `MN = NM`: `(I − M)^{−(k+r)} e_h^{N₁k}` with `N₁ = (I − M)^{r−1}N`.
    CommutativeFactored,
}

impl Reduction {
    pub const ALL: [Reduction; 5] = [
        Reduction::PerturbedDelayedExponential,
        Reduction::DelayedExponential,
        Reduction::DelayedMittagLeffler,
        Reduction::MittagLeffler,
        Reduction::CommutativeFactored,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Reduction::PerturbedDelayedExponential => "delayed perturbed exponential",
            Reduction::DelayedExponential => "delayed discrete exponential",
            Reduction::DelayedMittagLeffler => "delayed Mittag-Leffler",
            Reduction::MittagLeffler => "Mittag-Leffler",
            Reduction::CommutativeFactored => "commutative factored",
        }
    }

    /// Checks that `params` fit this reduction's parameter pattern.
    pub fn check(self, params: &DpmlParams) -> Result<()> {
        params.validate()?;
        let mismatch = |reason: &str| {
            Err(Error::PatternMismatch {
                pattern: self.name(),
                reason: reason.to_string(),
            })
        };
        let unit_orders = params.alpha == 1.0 && params.beta == 1.0;
        let m_zero = params.m.amax() == 0.0;
        let n_zero = params.n.amax() == 0.0;
        match self {
            Reduction::PerturbedDelayedExponential if !unit_orders => mismatch("needs alpha = beta = 1"),
            Reduction::DelayedExponential if !unit_orders => mismatch("needs alpha = beta = 1"),
            Reduction::DelayedExponential if !m_zero => mismatch("needs M = 0"),
            Reduction::DelayedMittagLeffler if !m_zero => mismatch("needs M = 0"),
            Reduction::DelayedMittagLeffler if params.alpha != params.beta => mismatch("needs alpha = beta"),
            Reduction::MittagLeffler if !n_zero => mismatch("needs N = 0"),
            Reduction::CommutativeFactored if !unit_orders => mismatch("needs alpha = beta = 1"),
            Reduction::CommutativeFactored => check_commuting(&params.m, &params.n),
            _ => Ok(()),
        }
    }

    /// Most specific reduction that applies to `params`, if any.
    pub fn detect(params: &DpmlParams) -> Option<Reduction> {
        [
            Reduction::DelayedExponential,
            Reduction::MittagLeffler,
            Reduction::DelayedMittagLeffler,
            Reduction::CommutativeFactored,
            Reduction::PerturbedDelayedExponential,
        ]
        .into_iter()
        .find(|r| r.check(params).is_ok())
    }

    /// Value of the reduced function at `k`, from its own definition.
    pub fn eval(self, params: &DpmlParams, k: i64) -> Result<Matrix> {
        self.check(params)?;
        let r = params.delay;
        match self {
            Reduction::PerturbedDelayedExponential => perturbed_delayed_exponential(&params.m, &params.n, r, k),
            Reduction::DelayedExponential => Ok(delayed_exponential(&params.n, r - 1, k)),
            Reduction::DelayedMittagLeffler => delayed_mittag_leffler(&params.n, params.alpha, r, k),
            Reduction::MittagLeffler => ml_eval(&params.m, params.alpha, params.beta - 1.0, k, -r, &params.policy),
            Reduction::CommutativeFactored => commutative_factored(&params.m, &params.n, r, k),
        }
    }
}

/// Evaluates whichever reduction [`Reduction::detect`] picks for `params`.
pub fn special_reductions(params: &DpmlParams, k: i64) -> Result<Matrix> {
    match Reduction::detect(params) {
        Some(reduction) => reduction.eval(params, k),
        None => Err(Error::PatternMismatch {
            pattern: "any special-case",
            reason: "need alpha = beta = 1, M = 0 with alpha = beta, or N = 0".into(),
        }),
    }
}

/// Delayed discrete exponential `e_h^{Bk}`:
/// `Θ` for `k < −h`, `I` on `[−h, 0]`, and
/// `Σ_{l=0}^{q} B^l C(k − (l−1)h, l)` on `[(q−1)(h+1) + 1, q(h+1)]`.
pub fn delayed_exponential(b: &Matrix, h: i64, k: i64) -> Matrix {
    let dim = b.nrows();
    if k < -h {
        return Matrix::zeros(dim, dim);
    }
    if k <= 0 {
        return Matrix::identity(dim, dim);
    }
    let q = (k + h).div_euclid(h + 1);
    let mut acc = Matrix::zeros(dim, dim);
    let mut power = Matrix::identity(dim, dim);
    for l in 0..=q {
        let top = k - (l - 1) * h;
        acc += &power * binomial(top as usize, l as usize);
        power = &power * b;
    }
    acc
}

/// Delayed discrete Mittag-Leffler function with delay `r` and order `α`:
/// `Θ` below `−r`, `I` at `−r`, `Σ_{i=0}^{p} N^i H_{iα+α−1}(k, (i−1)r)` on
/// `[(p−1)r + 1, pr]` for `p ≥ 0`.
pub fn delayed_mittag_leffler(n: &Matrix, alpha: f64, r: i64, k: i64) -> Result<Matrix> {
    check_order(alpha)?;
    let dim = n.nrows();
    if k < -r {
        return Ok(Matrix::zeros(dim, dim));
    }
    if k == -r {
        return Ok(Matrix::identity(dim, dim));
    }
    let p = (k + r - 1).div_euclid(r);
    let mut acc = Matrix::zeros(dim, dim);
    let mut power = Matrix::identity(dim, dim);
    for i in 0..=p {
        acc += &power * monomial(i as f64 * alpha + alpha - 1.0, k, (i - 1) * r);
        power = &power * n;
    }
    Ok(acc)
}

/// Fundamental matrix of `∇z(k) = Mz(k) + Nz(k − r)` anchored at `D(−r) = I`.
fn perturbed_delayed_exponential(m: &Matrix, n: &Matrix, r: i64, k: i64) -> Result<Matrix> {
    let dim = m.nrows();
    if k < -r {
        return Ok(Matrix::zeros(dim, dim));
    }
    let inv = ShiftedSolver::new(m)?.inverse();
    // trace[idx] = D(idx − r)
    let mut trace: Vec<Matrix> = vec![Matrix::identity(dim, dim)];
    for step in 1 - r..=k {
        let prev = trace.last().expect("seeded");
        let next = if step <= 0 {
            &inv * prev
        } else {
            // D(step − r) lives at index step
            &inv * (prev + n * &trace[step as usize])
        };
        trace.push(next);
    }
    Ok(trace.pop().expect("non-empty"))
}

fn commutative_factored(m: &Matrix, n: &Matrix, r: i64, k: i64) -> Result<Matrix> {
    let dim = m.nrows();
    if k < -r {
        return Ok(Matrix::zeros(dim, dim));
    }
    let inv = ShiftedSolver::new(m)?.inverse();
    let shifted = Matrix::identity(dim, dim) - m;
    let n1 = shifted.pow((r - 1) as u32) * n;
    Ok(inv.pow((k + r) as u32) * delayed_exponential(&n1, r - 1, k))
}

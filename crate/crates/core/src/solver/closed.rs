use rayon::prelude::*;

use super::{DelaySystem, SolutionTrace};
use crate::dpml::{Dpml, DpmlParams};
use crate::error::{Error, Result};
use crate::grid::{rl_difference, GridSeries};
use crate::{Matrix, Vector};

/// Closed-form solution of a [`DelaySystem`] built from `D = D^{M,N}_{α,α,r}`.
///
/// With `g(s) = ∇_{−r}^α φ(s) − Mφ(s)` on the initial interval,
///
/// ```text
/// z(k) = Σ_{s=1−r}^{min(k,0)} D(k − r − ρ(s)) g(s)      homogeneous part
///      + Σ_{s=1}^{k}          D(k − r − ρ(s)) f(s)      forced part
/// ```
///
/// The first homogeneous term is `D(k)(I − M)φ(1 − r)` because
/// `∇_{−r}^α φ(1 − r) = φ(1 − r)`. The upper limit `min(k, 0)` keeps the sum
/// causal; on `[1 − r, 0]` it reproduces `φ`.
///
/// `D` is tabulated once on `[1 − r, last]`, in parallel over `k`.
#[derive(Debug, Clone)]
pub struct ClosedForm<'a> {
    sys: &'a DelaySystem,
    kernel: Vec<Matrix>,
    last: i64,
    history: Vec<Vector>,
}

impl<'a> ClosedForm<'a> {
    /// General (non-commutative) evaluator, kernel tabulated up to `last`.
    pub fn new(sys: &'a DelaySystem, last: i64) -> Result<Self> {
        let dpml = Dpml::new(Self::params(sys)?)?;
        Self::with_evaluator(sys, last, &dpml)
    }

    /// Uses the binomial word sums; requires `MN = NM`.
    pub fn commutative(sys: &'a DelaySystem, last: i64) -> Result<Self> {
        let dpml = Dpml::commutative(Self::params(sys)?)?;
        Self::with_evaluator(sys, last, &dpml)
    }

    fn params(sys: &DelaySystem) -> Result<DpmlParams> {
        sys.validate()?;
        Ok(DpmlParams::new(sys.alpha, sys.alpha, sys.delay, sys.m.clone(), sys.n.clone())?.with_policy(sys.policy))
    }

    fn with_evaluator(sys: &'a DelaySystem, last: i64, dpml: &Dpml) -> Result<Self> {
        let r = sys.delay;
        let last = last.max(0);
        let kernel = (1 - r..=last)
            .into_par_iter()
            .map(|k| dpml.eval(k))
            .collect::<Result<Vec<_>>>()?;
        let history = (1 - r..=0)
            .map(|s| {
                let d = rl_difference(sys.alpha, -r, &sys.phi, s)?;
                Ok(d - &sys.m * sys.phi.get(s)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            sys,
            kernel,
            last,
            history,
        })
    }

    /// Tabulated `D(k)`; `Θ` below `−r`, `I` at `−r`.
    pub fn kernel(&self, k: i64) -> Result<Matrix> {
        let r = self.sys.delay;
        let dim = self.sys.dim();
        if k < -r {
            Ok(Matrix::zeros(dim, dim))
        } else if k == -r {
            Ok(Matrix::identity(dim, dim))
        } else if k <= self.last {
            Ok(self.kernel[(k - 1 + r) as usize].clone())
        } else {
            Err(Error::OutOfRange {
                k,
                first: -r,
                last: self.last,
            })
        }
    }

    fn kernel_ref(&self, k: i64) -> Result<&Matrix> {
        let r = self.sys.delay;
        if k < 1 - r || k > self.last {
            return Err(Error::OutOfRange {
                k,
                first: 1 - r,
                last: self.last,
            });
        }
        Ok(&self.kernel[(k - 1 + r) as usize])
    }

    fn check_point(&self, k: i64) -> Result<()> {
        let r = self.sys.delay;
        if k < 1 - r {
            return Err(Error::InvalidParameter {
                name: "k",
                reason: format!("solution is defined for k >= {}, got {k}", 1 - r),
            });
        }
        Ok(())
    }

    /// Contribution of the initial data `φ`.
    pub fn homogeneous(&self, k: i64) -> Result<Vector> {
        self.check_point(k)?;
        let r = self.sys.delay;
        let mut z = Vector::zeros(self.sys.dim());
        for s in 1 - r..=k.min(0) {
            z += self.kernel_ref(k - r - (s - 1))? * &self.history[(s - 1 + r) as usize];
        }
        Ok(z)
    }

    /// Contribution of the forcing; zero on `[1 − r, 0]`.
    pub fn forced(&self, k: i64) -> Result<Vector> {
        self.check_point(k)?;
        let r = self.sys.delay;
        let mut z = Vector::zeros(self.sys.dim());
        if self.sys.has_zero_forcing() {
            return Ok(z);
        }
        for s in 1..=k {
            z += self.kernel_ref(k - r - (s - 1))? * self.sys.forcing_at(s)?;
        }
        Ok(z)
    }

    pub fn value(&self, k: i64) -> Result<Vector> {
        Ok(self.homogeneous(k)? + self.forced(k)?)
    }

    /// `z` on `[1 − r, min(K, last)]`.
    pub fn trace(&self) -> Result<SolutionTrace> {
        let r = self.sys.delay;
        let last = self.sys.horizon.min(self.last);
        let values = (1 - r..=last)
            .into_par_iter()
            .map(|k| self.value(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(SolutionTrace::new(GridSeries::new(1 - r, values)?))
    }

    /// Delta-time trace `y(k) = z(k − 1)` on `[2 − r, K + 1]`:
    ///
    /// ```text
    /// y(k) = Σ_{s=−r}^{min(k,1)−2} D(k − 1 − r − s) g(s + 1)
    ///      + Σ_{s=1}^{k−1}         D(k − r − s) f_Δ(s − 1)
    /// ```
    ///
    /// with delta forcing `f_Δ(t) = f(t + 1)` on `t = 0..K−1`. Both sums are
    /// delta sums `Σ_{s=a}^{b−1}`.
    pub fn delta_trace(&self) -> Result<SolutionTrace> {
        let r = self.sys.delay;
        let dim = self.sys.dim();
        let last = self.sys.horizon.min(self.last) + 1;
        let forcing_delta = |t: i64| self.sys.forcing_at(t + 1);
        let values = (2 - r..=last)
            .into_par_iter()
            .map(|k| {
                let mut y = Vector::zeros(dim);
                for s in -r..=k.min(1) - 2 {
                    y += self.kernel_ref(k - 1 - r - s)? * &self.history[(s + r) as usize];
                }
                for s in 1..k {
                    y += self.kernel_ref(k - r - s)? * forcing_delta(s - 1)?;
                }
                Ok(y)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SolutionTrace::new(GridSeries::new(2 - r, values)?))
    }
}

/// Part of the solution driven by `φ` alone, at a single `k ≥ 1 − r`.
pub fn homogeneous_part(sys: &DelaySystem, k: i64) -> Result<Vector> {
    ClosedForm::new(sys, k)?.homogeneous(k)
}

/// Part of the solution driven by the forcing alone, at a single `k ≥ 1 − r`.
pub fn forced_part(sys: &DelaySystem, k: i64) -> Result<Vector> {
    ClosedForm::new(sys, k)?.forced(k)
}

/// Closed-form solution on `[1 − r, K]` by superposition of both parts.
pub fn closed_form_solve(sys: &DelaySystem) -> Result<SolutionTrace> {
    ClosedForm::new(sys, sys.horizon)?.trace()
}

/// Closed-form solution for commuting `M`, `N` using binomial word sums.
pub fn commutative_solve(sys: &DelaySystem) -> Result<SolutionTrace> {
    ClosedForm::commutative(sys, sys.horizon)?.trace()
}

/// Solution of the delta-time counterpart obtained through `∇z(k) = Δz(k − 1)`.
///
/// The returned trace lives on the delta grid `[2 − r, K + 1]` and satisfies
/// `y(k) = z(k − 1)` for the nabla solution `z` of `sys`.
pub fn delta_solve(sys: &DelaySystem) -> Result<SolutionTrace> {
    ClosedForm::new(sys, sys.horizon)?.delta_trace()
}

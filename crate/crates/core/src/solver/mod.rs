//! Linear delay system `∇_{−r}^α z(k) = Mz(k) + Nz(k − r) + f(k)` and its solvers.
//!
//! [`step_solve`] marches the defining equation forward and is the oracle;
//! [`closed_form_solve`], [`commutative_solve`] and [`delta_solve`] evaluate
//! explicit representations built from the DPML matrix function.

mod closed;
mod step;
mod verify;

pub use closed::{closed_form_solve, commutative_solve, delta_solve, forced_part, homogeneous_part, ClosedForm};
pub use step::{residuals, step_solve};
pub use verify::{verify, VerifyReport};

use crate::dpml::TruncationPolicy;
use crate::error::{Error, Result};
use crate::grid::GridSeries;
use crate::{Matrix, Vector};

/// Right-hand side `f(k)` of the delay system on `k = 1..=K`.
#[derive(Debug, Clone, PartialEq)]
pub enum Forcing {
    Zero,
    Constant(Vector),
    /// Samples covering at least `[1, K]`.
    Table(GridSeries),
}

/// Problem instance: order `α`, delay `r`, coefficients `M`, `N`, initial
/// data `φ` on `[1 − r, 0]`, forcing on `[1, K]` and horizon `K`.
///
/// `r = 1` is accepted; the initial interval is then the single point `0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DelaySystem {
    pub alpha: f64,
    pub delay: i64,
    pub m: Matrix,
    pub n: Matrix,
    pub phi: GridSeries,
    pub forcing: Forcing,
    pub horizon: i64,
    pub policy: TruncationPolicy,
}

impl DelaySystem {
    pub fn new(
        alpha: f64,
        delay: i64,
        m: Matrix,
        n: Matrix,
        phi: GridSeries,
        forcing: Forcing,
        horizon: i64,
    ) -> Result<Self> {
        let sys = Self {
            alpha,
            delay,
            m,
            n,
            phi,
            forcing,
            horizon,
            policy: TruncationPolicy::default(),
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn with_policy(mut self, policy: TruncationPolicy) -> Self {
        self.policy = policy;
        self
    }

    /// Same system with different initial data and forcing.
    pub fn with_data(&self, phi: GridSeries, forcing: Forcing) -> Result<Self> {
        let mut sys = self.clone();
        sys.phi = phi;
        sys.forcing = forcing;
        sys.validate()?;
        Ok(sys)
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn validate(&self) -> Result<()> {
        crate::dpml::DpmlParams::new(self.alpha, self.alpha, self.delay, self.m.clone(), self.n.clone())?;
        self.policy.validate()?;
        if self.horizon < 1 {
            return Err(Error::InvalidParameter {
                name: "horizon",
                reason: format!("must be at least 1, got {}", self.horizon),
            });
        }
        let dim = self.dim();
        if self.phi.dim() != dim {
            return Err(Error::DimensionMismatch {
                name: "phi",
                expected: dim,
                found: self.phi.dim(),
            });
        }
        if self.phi.first() != 1 - self.delay || self.phi.last() != 0 {
            return Err(Error::InvalidParameter {
                name: "phi",
                reason: format!(
                    "initial data must cover exactly [{}, 0], got [{}, {}]",
                    1 - self.delay,
                    self.phi.first(),
                    self.phi.last()
                ),
            });
        }
        match &self.forcing {
            Forcing::Zero => {}
            Forcing::Constant(c) if c.len() != dim => {
                return Err(Error::DimensionMismatch {
                    name: "forcing",
                    expected: dim,
                    found: c.len(),
                })
            }
            Forcing::Constant(_) => {}
            Forcing::Table(t) => {
                if t.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        name: "forcing",
                        expected: dim,
                        found: t.dim(),
                    });
                }
                if !(t.contains(1) && t.contains(self.horizon)) {
                    return Err(Error::InvalidParameter {
                        name: "forcing",
                        reason: format!(
                            "table must cover [1, {}], got [{}, {}]",
                            self.horizon,
                            t.first(),
                            t.last()
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// `f(k)` for `1 ≤ k ≤ K`.
    pub fn forcing_at(&self, k: i64) -> Result<Vector> {
        if k < 1 || k > self.horizon {
            return Err(Error::OutOfRange {
                k,
                first: 1,
                last: self.horizon,
            });
        }
        Ok(match &self.forcing {
            Forcing::Zero => Vector::zeros(self.dim()),
            Forcing::Constant(c) => c.clone(),
            Forcing::Table(t) => t.get(k)?.clone(),
        })
    }

    pub fn has_zero_forcing(&self) -> bool {
        match &self.forcing {
            Forcing::Zero => true,
            Forcing::Constant(c) => c.amax() == 0.0,
            Forcing::Table(t) => t.values().iter().all(|v| v.amax() == 0.0),
        }
    }
}

/// Solution values on `[1 − r, K]` (or the shifted delta grid), with
/// optional per-point residuals of the defining equation.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionTrace {
    pub values: GridSeries,
    /// `(k, max-norm residual)` for `k = 1..=K`.
    pub residuals: Option<Vec<(i64, f64)>>,
    /// 2-norm condition number of `I − M`, reported by the stepping solver.
    pub condition_number: Option<f64>,
}

impl SolutionTrace {
    pub fn new(values: GridSeries) -> Self {
        Self {
            values,
            residuals: None,
            condition_number: None,
        }
    }

    pub fn max_residual(&self) -> Option<(i64, f64)> {
        self.residuals
            .as_ref()?
            .iter()
            .copied()
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }
}

//! Discrete nabla fractional calculus on integer grids and closed-form
//! solutions of linear Riemann–Liouville fractional difference systems with
//! one constant delay,
//!
//! ```text
//! ∇_{−r}^α z(k) = M z(k) + N z(k − r) + f(k),   k ≥ 1
//! z(k) = φ(k),                                  1 − r ≤ k ≤ 0
//! ```
//!
//! where `M` and `N` need not commute.
//!
//! The crate is split into three layers:
//!
//! * [`grid`]: fractional Taylor monomials, the nabla fractional sum and the
//!   Riemann–Liouville difference;
//! * [`dpml`]: word sums `Q(i, j)` of `M` and `N`, and the delayed-perturbation
//!   Mittag-Leffler matrix function `D^{M,N}_{α,β,r}` with its special cases;
//! * [`solver`]: the problem model, a direct stepping solver used as an oracle,
//!   and the closed-form solution built from `D`.
//!
//! ```
//! use nabla_dpml::{closed_form_solve, step_solve, DelaySystem, Forcing, GridSeries, Matrix, Vector};
//!
//! let sys = DelaySystem::new(
//!     0.5,
//!     2,
//!     Matrix::from_element(1, 1, 0.3),
//!     Matrix::from_element(1, 1, 0.2),
//!     GridSeries::scalar(-1, &[1.0, 0.5]).unwrap(),
//!     Forcing::Constant(Vector::from_element(1, 1.0)),
//!     20,
//! )
//! .unwrap();
//! let exact = closed_form_solve(&sys).unwrap();
//! let stepped = step_solve(&sys).unwrap();
//! assert!(exact.values.max_abs_diff(&stepped.values).unwrap() < 1e-10);
//! ```

pub mod dpml;
mod error;
pub mod grid;
pub mod linalg;
pub mod solver;

/// Dense real matrix; `M`, `N`, `Θ`, `I`, `Q(i, j)` and `D(k)` all use it.
pub type Matrix = nalgebra::DMatrix<f64>;
/// Dense real column vector holding one grid sample.
pub type Vector = nalgebra::DVector<f64>;

pub use dpml::{
    dpml_eval, ml_eval, special_reductions, word_sum_commutative, Dpml, DpmlParams, Reduction, TruncationPolicy,
    WordSumTable,
};
pub use error::{Error, Result};
pub use grid::{monomial, nabla_sum, rl_difference, GridSeries};
pub use solver::{
    closed_form_solve, commutative_solve, delta_solve, forced_part, homogeneous_part, step_solve, verify,
    DelaySystem, Forcing, SolutionTrace, VerifyReport,
};

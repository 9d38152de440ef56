use nalgebra::Complex;
use thiserror::Error;

use crate::dpml::TruncationPolicy;

/// Errors raised by the grid operators, the DPML evaluators and the solvers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A grid function was read outside the range it is defined on.
    #[error("grid point {k} is outside the defined range [{first}, {last}]")]
    OutOfRange { k: i64, first: i64, last: i64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("dimension mismatch for `{name}`: expected {expected}, found {found}")]
    DimensionMismatch {
        name: &'static str,
        expected: usize,
        found: usize,
    },

    /// `M` and `N` were required to commute but `‖MN − NM‖` exceeded the tolerance.
    #[error("matrices do not commute: max |MN - NM| = {defect:e}")]
    NotCommuting { defect: f64 },

    /// The parameters do not fit the requested special-case reduction.
    #[error("parameters do not match the {pattern} reduction: {reason}")]
    PatternMismatch {
        pattern: &'static str,
        reason: String,
    },

    /// `I − M` cannot be inverted, so the stepping recursion has no unique solution.
    #[error(
        "I - M is singular (smallest singular value {min_singular_value:e}); \
         eigenvalue of M closest to 1 is {eigenvalue}"
    )]
    Singular {
        min_singular_value: f64,
        eigenvalue: Complex<f64>,
    },

    /// A series did not meet the stop criterion of its truncation policy.
    #[error(
        "series diverged at k = {k} after {terms} terms (truncation policy: tol = {:e}, \
         window = {}, i_max = {}, divergence_growth = {})",
        policy.tol, policy.window, policy.i_max, policy.divergence_growth
    )]
    Divergence {
        k: i64,
        terms: usize,
        policy: TruncationPolicy,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

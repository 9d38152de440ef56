//! Fractional Taylor monomials and the nabla operators built on them.

mod monomial;
mod operators;
mod series;

pub use monomial::{monomial, monomial_weights};
pub use operators::{
    backward_difference, kernel_sum_by, nabla_sum, nabla_sum_by, rl_difference, rl_difference_by,
};
pub use series::GridSeries;

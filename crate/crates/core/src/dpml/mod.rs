//! Word sums and the discrete delayed-perturbation Mittag-Leffler matrix function.

mod function;
mod reductions;
mod series;
mod wide;
mod words;

pub use function::{dpml_eval, ml_eval, ml_partial_sum, norm1, Dpml, DpmlParams};
pub use reductions::{delayed_exponential, delayed_mittag_leffler, special_reductions, Reduction};
pub use series::TruncationPolicy;
pub use words::{binomial, commutator_defect, word_sum_commutative, WordSumTable, COMMUTE_TOL};

use super::{DelaySystem, SolutionTrace};
use crate::error::Result;
use crate::grid::{monomial_weights, rl_difference, GridSeries};
use crate::linalg::ShiftedSolver;
use crate::Vector;

/// Direct forward solution of the delay system.
///
/// The Riemann–Liouville difference puts unit weight on `z(k)`, so each step
/// solves
///
/// ```text
/// (I − M) z(k) = N z(k − r) + f(k) − Σ_{s=1−r}^{k−1} H_{−α−1}(k, s − 1) z(s)
/// ```
///
/// No series is involved; this is the reference the closed forms are checked
/// against. Fails when `I − M` is singular.
pub fn step_solve(sys: &DelaySystem) -> Result<SolutionTrace> {
    sys.validate()?;
    let r = sys.delay;
    let shifted = ShiftedSolver::new(&sys.m)?;
    // weights[d − 1] = H_{−α−1}(k, k − d): coefficient of z(k − d + 1)
    let weights = monomial_weights(-sys.alpha - 1.0, (sys.horizon + r) as usize);
    let mut values: Vec<Vector> = sys.phi.values().to_vec();
    let idx = |k: i64| (k - 1 + r) as usize;

    for k in 1..=sys.horizon {
        let mut rhs = &sys.n * &values[idx(k - r)] + sys.forcing_at(k)?;
        for s in 1 - r..k {
            let w = weights[(k - s) as usize];
            if w != 0.0 {
                rhs -= &values[idx(s)] * w;
            }
        }
        values.push(shifted.solve(&rhs));
    }

    let values = GridSeries::new(1 - r, values)?;
    let res = residuals(sys, &values)?;
    Ok(SolutionTrace {
        values,
        residuals: Some(res),
        condition_number: Some(shifted.condition()),
    })
}

/// Max-norm residual of `∇_{−r}^α z(k) − Mz(k) − Nz(k − r) − f(k)` for `k = 1..=K`.
pub fn residuals(sys: &DelaySystem, values: &GridSeries) -> Result<Vec<(i64, f64)>> {
    let r = sys.delay;
    (1..=sys.horizon)
        .map(|k| {
            let lhs = rl_difference(sys.alpha, -r, values, k)?;
            let rhs = &sys.m * values.get(k)? + &sys.n * values.get(k - r)? + sys.forcing_at(k)?;
            Ok((k, (lhs - rhs).amax()))
        })
        .collect()
}

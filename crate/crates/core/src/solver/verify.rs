use super::{closed_form_solve, residuals, step_solve, DelaySystem, SolutionTrace};
use crate::error::Error;

/// Outcome of cross-checking the closed form against the stepping oracle.
///
/// Deviations and residuals are judged on the scale `max(1, ‖z‖_max)`:
/// absolute while the solution is of order one, relative once it grows.
/// Failures are recorded here rather than returned as errors.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub tol: f64,
    pub oracle: Result<SolutionTrace, Error>,
    pub closed_form: Result<SolutionTrace, Error>,
    /// Largest componentwise `|closed − oracle|` over `[1 − r, K]`.
    pub max_deviation: Option<f64>,
    /// Largest `|closed(k) − oracle(k)| / max(1, ‖oracle(k)‖)`.
    pub scaled_deviation: Option<f64>,
    /// Residuals of the closed form in the defining equation, `k = 1..=K`.
    pub closed_form_residuals: Vec<(i64, f64)>,
    /// The same residuals divided by `max(1, max_{s ≤ k} ‖z(s)‖)`.
    pub scaled_residuals: Vec<(i64, f64)>,
    pub pass: bool,
}

fn worst(residuals: &[(i64, f64)]) -> Option<(i64, f64)> {
    residuals.iter().copied().max_by(|a, b| a.1.total_cmp(&b.1))
}

impl VerifyReport {
    pub fn worst_residual(&self) -> Option<(i64, f64)> {
        worst(&self.closed_form_residuals)
    }

    pub fn worst_scaled_residual(&self) -> Option<(i64, f64)> {
        worst(&self.scaled_residuals)
    }

    /// True when the closed form could not be evaluated because a series diverged.
    pub fn diverged(&self) -> bool {
        matches!(self.closed_form, Err(Error::Divergence { .. }))
    }
}

/// Runs both solvers and compares them against `tol` on the scale `max(1, ‖z‖)`.
pub fn verify(sys: &DelaySystem, tol: f64) -> VerifyReport {
    let oracle = step_solve(sys);
    let closed_form = closed_form_solve(sys).and_then(|mut trace| {
        trace.residuals = Some(residuals(sys, &trace.values)?);
        Ok(trace)
    });
    let (max_deviation, scaled_deviation) = match (&oracle, &closed_form) {
        (Ok(a), Ok(b)) => (b.values.max_abs_diff(&a.values).ok(), b.values.max_scaled_diff(&a.values).ok()),
        _ => (None, None),
    };
    let (closed_form_residuals, scaled_residuals) = match &closed_form {
        Ok(trace) => {
            let raw = trace.residuals.clone().unwrap_or_default();
            let mut running = 1.0f64;
            let prefix_max: Vec<f64> = trace
                .values
                .values()
                .iter()
                .map(|v| {
                    running = running.max(v.amax());
                    running
                })
                .collect();
            let first = trace.values.first();
            let scaled = raw
                .iter()
                .map(|&(k, res)| (k, res / prefix_max[(k - first) as usize]))
                .collect();
            (raw, scaled)
        }
        Err(_) => (Vec::new(), Vec::new()),
    };
    let worst_scaled = worst(&scaled_residuals).map_or(0.0, |r| r.1);
    let pass = scaled_deviation.is_some_and(|d| d <= tol) && worst_scaled <= tol;
    VerifyReport {
        tol,
        oracle,
        closed_form,
        max_deviation,
        scaled_deviation,
        closed_form_residuals,
        scaled_residuals,
        pass,
    }
}

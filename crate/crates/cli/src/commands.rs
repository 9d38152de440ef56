use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nabla_dpml::dpml::ml_partial_sum;
use nabla_dpml::{
    closed_form_solve, commutative_solve, delta_solve, ml_eval, step_solve, verify, Dpml, DpmlParams, Error, Matrix,
    SolutionTrace, TruncationPolicy, WordSumTable,
};

use crate::config::{read_matrix, SystemConfig};
use crate::error::{CliError, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::table::GridTable;

/// Largest `i` accepted by `qtable`; row `i` holds `i` matrices built from `2^(i−1)` words.
pub const QTABLE_MAX: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "dpml",
    version,
    about = "Delayed-perturbation Mittag-Leffler functions and fractional delay difference systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Closed form through the general word-sum table.
    Closed,
    /// Direct stepping of the defining equation.
    Step,
    /// Closed form with binomial word sums; needs MN = NM.
    Commutative,
    /// Delta-time counterpart, written on the grid [2 − r, K + 1].
    Delta,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the system in a config file and write `k,z1,...,zn` as CSV.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "closed")]
        method: Method,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the closed form with the stepping solver.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Also write the stepping trace here, even when the closed form fails.
        #[arg(long)]
        oracle_out: Option<PathBuf>,
    },
    /// Print the word sums Q(i, j) for i ≤ imax.
    Qtable {
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
        #[arg(long)]
        imax: usize,
    },
    /// Evaluate D(k) on a range of k and write its entries, row-major, as CSV.
    Eval {
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        delay: i64,
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        imax: Option<usize>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the scalar comparison `k,D,E,F` for k = −r..kmax.
    Figure {
        #[arg(long)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        m: f64,
        #[arg(long, allow_negative_numbers = true)]
        n: f64,
        #[arg(long)]
        delay: i64,
        #[arg(long)]
        kmax: i64,
        /// Partial-sum cutoff used when the series diverge.
        #[arg(long)]
        imax: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Runs a command, writing its report to `out`. Returns the exit status of a
/// completed run; failures come back as errors carrying their own status.
pub fn run(command: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Solve { config, method, out: path } => solve(config, *method, path, out),
        Command::Verify { config, tol, oracle_out } => verify_cmd(config, *tol, oracle_out.as_deref(), out),
        Command::Qtable { m, n, imax } => qtable(m, n, *imax, out),
        Command::Eval {
            m,
            n,
            alpha,
            beta,
            delay,
            from,
            to,
            tol,
            imax,
            out: path,
        } => {
            let mut policy = TruncationPolicy::default();
            if let Some(tol) = tol {
                policy = policy.with_tol(*tol);
            }
            if let Some(imax) = imax {
                policy = policy.with_i_max(*imax);
            }
            let params = DpmlParams::new(*alpha, *beta, *delay, read_matrix(m)?, read_matrix(n)?)?.with_policy(policy);
            let table = eval_table(params, *from, *to)?;
            match path {
                Some(path) => table.write(path)?,
                None => write_out(out, &table.to_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Figure {
            alpha,
            beta,
            m,
            n,
            delay,
            kmax,
            imax,
            out: path,
        } => {
            let table = figure_table(*alpha, *beta, *m, *n, *delay, *kmax, *imax)?;
            table.write(path)?;
            if let Some(note) = table.comments.first() {
                writeln!(out, "{note}").map_err(stdout_error)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn stdout_error(e: std::io::Error) -> CliError {
    CliError::io(Path::new("<stdout>"), e)
}

fn write_out(out: &mut dyn Write, bytes: &[u8]) -> Result<(), CliError> {
    out.write_all(bytes).map_err(stdout_error)
}

/// Solution trace of the config's system by `method`.
pub fn solve_trace(config: &SystemConfig, method: Method) -> Result<SolutionTrace, CliError> {
    let sys = config.system()?;
    let trace = match method {
        Method::Closed => closed_form_solve(&sys),
        Method::Step => step_solve(&sys),
        Method::Commutative => commutative_solve(&sys),
        Method::Delta => delta_solve(&sys),
    }?;
    Ok(trace)
}

pub fn trace_table(trace: &SolutionTrace) -> GridTable {
    let mut table = GridTable::with_columns("z", trace.values.dim());
    for (k, v) in trace.values.iter() {
        table.push(k, v.iter().copied());
    }
    table
}

fn solve(config: &Path, method: Method, path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let config = SystemConfig::from_path(config)?;
    let table = trace_table(&solve_trace(&config, method)?);
    table.write(path)?;
    writeln!(out, "wrote {} rows to {}", table.rows.len(), path.display()).map_err(stdout_error)?;
    Ok(EXIT_OK)
}

fn verify_cmd(config: &Path, tol: f64, oracle_out: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let sys = SystemConfig::from_path(config)?.system()?;
    let report = verify(&sys, tol);
    let oracle = report.oracle.clone()?;
    if let Some(path) = oracle_out {
        trace_table(&oracle).write(path)?;
    }
    if let Some(c) = oracle.condition_number {
        writeln!(out, "condition number of I - M: {c:e}").map_err(stdout_error)?;
    }
    if let Err(e) = &report.closed_form {
        writeln!(out, "closed form unavailable: {e}").map_err(stdout_error)?;
        return Err(e.clone().into());
    }
    let lines = [
        format!(
            "max deviation: {:e} (scaled {:e})",
            report.max_deviation.unwrap_or(f64::NAN),
            report.scaled_deviation.unwrap_or(f64::NAN)
        ),
        match (report.worst_residual(), report.worst_scaled_residual()) {
            (Some((k, r)), Some((ks, rs))) => format!("worst residual: {r:e} at k = {k} (scaled {rs:e} at k = {ks})"),
            _ => "worst residual: none".to_string(),
        },
        format!("{} (tol {tol:e})", if report.pass { "PASS" } else { "FAIL" }),
    ];
    for line in lines {
        writeln!(out, "{line}").map_err(stdout_error)?;
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn format_matrix(a: &Matrix) -> String {
    a.row_iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
            format!("  [{}]\n", cells.join(", "))
        })
        .collect()
}

/// Text listing of `Q(i, j)` for `1 ≤ i ≤ imax`, `0 ≤ j ≤ i − 1`.
pub fn qtable_text(m: Matrix, n: Matrix, imax: usize) -> Result<String, CliError> {
    if imax > QTABLE_MAX {
        return Err(CliError::Usage(format!(
            "--imax must be at most {QTABLE_MAX}, got {imax}; entries grow combinatorially"
        )));
    }
    let table = WordSumTable::new(m, n)?;
    let mut text = String::new();
    for i in 1..=imax {
        for j in 0..i as i64 {
            text.push_str(&format!("Q({i},{j}) =\n{}", format_matrix(&table.get(i, j))));
        }
    }
    Ok(text)
}

fn qtable(m: &Path, n: &Path, imax: usize, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = qtable_text(read_matrix(m)?, read_matrix(n)?, imax)?;
    write_out(out, text.as_bytes())?;
    Ok(EXIT_OK)
}

/// `D(k)` for `k = from..=to`, one row per `k`, entries row-major as `d<row>_<col>`.
pub fn eval_table(params: DpmlParams, from: i64, to: i64) -> Result<GridTable, CliError> {
    if from > to {
        return Err(CliError::Usage(format!("--from ({from}) exceeds --to ({to})")));
    }
    let dim = params.dim();
    let mut header = vec!["k".to_string()];
    for r in 1..=dim {
        header.extend((1..=dim).map(|c| format!("d{r}_{c}")));
    }
    let d = Dpml::new(params)?;
    let mut table = GridTable::new(header);
    for k in from..=to {
        let value = d.eval(k)?;
        table.push(k, value.transpose().iter().copied());
    }
    Ok(table)
}

/// Scalar comparison table `k,D,E,F` on `[−r, kmax]`:
/// `D = D^{M,N}_{α,β,r}`, `E = Σ_i M^i H_{iα+β−1}(k, −r)` and `F = D^{0,N}_{α,β,r}`.
///
/// When any of the three series diverges under the default policy, all
/// columns switch to partial sums over `i ≤ imax` and the table carries a
/// comment saying so.
pub fn figure_table(alpha: f64, beta: f64, m: f64, n: f64, delay: i64, kmax: i64, imax: usize) -> Result<GridTable, CliError> {
    if kmax < -delay {
        return Err(CliError::Usage(format!("--kmax must be at least -delay = {}, got {kmax}", -delay)));
    }
    let scalar = |x: f64| Matrix::from_element(1, 1, x);
    let full = Dpml::new(DpmlParams::new(alpha, beta, delay, scalar(m), scalar(n))?)?;
    let pure_delay = Dpml::new(DpmlParams::new(alpha, beta, delay, scalar(0.0), scalar(n))?)?;
    let policy = TruncationPolicy::default();
    let header = ["k", "D", "E", "F"].map(String::from).to_vec();

    let converged = (-delay..=kmax)
        .map(|k| {
            Ok((
                k,
                [
                    full.eval(k)?[(0, 0)],
                    ml_eval(&scalar(m), alpha, beta - 1.0, k, -delay, &policy)?[(0, 0)],
                    pure_delay.eval(k)?[(0, 0)],
                ],
            ))
        })
        .collect::<Result<Vec<_>, Error>>();
    let mut table = GridTable::new(header);
    match converged {
        Ok(rows) => {
            for (k, row) in rows {
                table.push(k, row);
            }
        }
        Err(Error::Divergence { .. }) => {
            table.comments.push(format!("truncated at i={imax}, convergence not guaranteed"));
            for k in -delay..=kmax {
                table.push(
                    k,
                    [
                        full.partial_sum(k, imax)[(0, 0)],
                        ml_partial_sum(&scalar(m), alpha, beta - 1.0, k, -delay, imax)[(0, 0)],
                        pure_delay.partial_sum(k, imax)[(0, 0)],
                    ],
                );
            }
        }
        Err(e) => return Err(e.into()),
    }
    Ok(table)
}

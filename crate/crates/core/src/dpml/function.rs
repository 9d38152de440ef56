use log::warn;

use super::series::{partial_sum, plain, sum_series, TruncationPolicy};
use super::wide::{self, monomial, series_order, Wide, WideMatrix};
use super::words::{binomial, check_commuting, check_pair, PowerCache, WordSumTable};
use crate::error::{Error, Result};
use crate::Matrix;

/// Parameters `(α, β, r, M, N)` of the discrete delayed-perturbation
/// Mittag-Leffler matrix function, plus the truncation policy of its series.
#[derive(Debug, Clone, PartialEq)]
pub struct DpmlParams {
    pub alpha: f64,
    pub beta: f64,
    pub delay: i64,
    pub m: Matrix,
    pub n: Matrix,
    pub policy: TruncationPolicy,
}

impl DpmlParams {
    pub fn new(alpha: f64, beta: f64, delay: i64, m: Matrix, n: Matrix) -> Result<Self> {
        let params = Self {
            alpha,
            beta,
            delay,
            m,
            n,
            policy: TruncationPolicy::default(),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_policy(mut self, policy: TruncationPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// `α ∈ (0, 1]`, `β` finite, `r ≥ 1`, square `M`, `N` of equal size.
    ///
    /// `α = 1` is admitted so the integer-order reductions can be evaluated.
    pub fn validate(&self) -> Result<()> {
        check_order(self.alpha)?;
        if !self.beta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "beta",
                reason: format!("must be finite, got {}", self.beta),
            });
        }
        if self.delay < 1 {
            return Err(Error::InvalidParameter {
                name: "delay",
                reason: format!("must be at least 1, got {}", self.delay),
            });
        }
        check_pair(&self.m, &self.n)?;
        self.policy.validate()
    }

    /// `‖M‖₁ + ‖N‖₁` (maximum column sums); below one is sufficient for convergence.
    pub fn norm_budget(&self) -> f64 {
        norm1(&self.m) + norm1(&self.n)
    }
}

pub(crate) fn check_order(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("must lie in (0, 1], got {alpha}"),
        })
    }
}

/// Induced 1-norm (largest absolute column sum).
pub fn norm1(a: &Matrix) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone)]
enum WordSource {
    Table(WordSumTable),
    Commutative { m: PowerCache, n: PowerCache },
}

/// Evaluator for `D^{M,N}_{α,β,r}(k)`:
///
/// ```text
/// Θ                                               k ≤ −r − 1
/// I                                               k = −r
/// Σ_i M^i H_{iα+β−1}(k, −r)                       1 − r ≤ k ≤ 0
/// Σ_i Σ_{j=0}^{p} Q(i+1, j) H_{iα+β−1}(k, (j−1)r)  (p−1)r + 1 ≤ k ≤ pr, p ≥ 1
/// ```
///
/// The word sums are memoized inside the evaluator, so reuse one instance
/// for many `k`. Instances are `Sync`; concurrent evaluations see the same
/// table and return the same values as sequential ones.
#[derive(Debug, Clone)]
pub struct Dpml {
    params: DpmlParams,
    words: WordSource,
    m_powers: PowerCache,
}

impl Dpml {
    /// Evaluator backed by the general (non-commutative) word-sum table.
    pub fn new(params: DpmlParams) -> Result<Self> {
        params.validate()?;
        warn_if_outside_budget(&params);
        let words = WordSource::Table(WordSumTable::new(params.m.clone(), params.n.clone())?);
        let m_powers = PowerCache::new(params.m.clone());
        Ok(Self {
            params,
            words,
            m_powers,
        })
    }

    /// Evaluator that replaces `Q(i+1, j)` by `C(i, j) M^{i−j} N^j`; requires `MN = NM`.
    pub fn commutative(params: DpmlParams) -> Result<Self> {
        params.validate()?;
        check_commuting(&params.m, &params.n)?;
        warn_if_outside_budget(&params);
        let words = WordSource::Commutative {
            m: PowerCache::new(params.m.clone()),
            n: PowerCache::new(params.n.clone()),
        };
        let m_powers = PowerCache::new(params.m.clone());
        Ok(Self {
            params,
            words,
            m_powers,
        })
    }

    pub fn params(&self) -> &DpmlParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    /// Interval index `p = ⌈k / r⌉` of `k ≥ 1`.
    pub fn interval(&self, k: i64) -> i64 {
        let r = self.params.delay;
        (k + r - 1).div_euclid(r)
    }

    /// `D(k)` with the series truncated by the parameters' policy.
    pub fn eval(&self, k: i64) -> Result<Matrix> {
        let r = self.params.delay;
        let dim = self.dim();
        if k < -r {
            Ok(Matrix::zeros(dim, dim))
        } else if k == -r {
            Ok(Matrix::identity(dim, dim))
        } else if k <= 0 {
            sum_series(&self.params.policy, k, dim, |i| plain(self.ml_term(i, k)))
        } else {
            self.word_series(k, self.interval(k))
        }
    }

    /// `Σ_i Σ_{j=0}^{p} Q(i+1, j) H_{iα+β−1}(k, (j−1)r)` for an explicit `p`.
    ///
    /// With `p = 0` this is the Mittag-Leffler branch written through the
    /// word table, which gives a second route to `D` on `[1 − r, 0]`.
    pub fn word_series(&self, k: i64, p: i64) -> Result<Matrix> {
        sum_series(&self.params.policy, k, self.dim(), |i| self.word_term(i, k, p))
    }

    /// `D(k)` from the first `last + 1` terms of its series, without a stop rule.
    ///
    /// Used where the series is known to diverge and only a fixed partial sum
    /// is meaningful.
    pub fn partial_sum(&self, k: i64, last: usize) -> Matrix {
        let r = self.params.delay;
        let dim = self.dim();
        if k < -r {
            Matrix::zeros(dim, dim)
        } else if k == -r {
            Matrix::identity(dim, dim)
        } else if k <= 0 {
            partial_sum(last, dim, |i| self.ml_term(i, k))
        } else {
            let p = self.interval(k);
            partial_sum(last, dim, |i| self.word_term(i, k, p).0)
        }
    }

    fn order(&self, i: usize) -> Wide {
        series_order(i, self.params.alpha, self.params.beta) - 1.0
    }

    fn ml_term(&self, i: usize, k: i64) -> WideMatrix {
        self.m_powers.get(i) * monomial(self.order(i), k, -self.params.delay)
    }

    /// Term `i` of the word series and the sum of its parts' max-norms.
    fn word_term(&self, i: usize, k: i64, p: i64) -> (WideMatrix, f64) {
        let r = self.params.delay;
        let order = self.order(i);
        let top = (p.max(0) as usize).min(i);
        let mut term = wide::zeros(self.dim());
        let mut magnitude = 0.0;
        let mut add = |part: WideMatrix| {
            magnitude += wide::amax(&part);
            term += part;
        };
        match &self.words {
            WordSource::Table(table) => table.with_row(i + 1, |row| {
                for (j, q) in row.iter().enumerate().take(top + 1) {
                    let h = monomial(order, k, (j as i64 - 1) * r);
                    if h != 0.0 {
                        add(q * h);
                    }
                }
            }),
            WordSource::Commutative { m, n } => {
                for j in 0..=top {
                    let h = monomial(order, k, (j as i64 - 1) * r);
                    if h != 0.0 {
                        add(m.get(i - j) * n.get(j) * (h * binomial(i, j)));
                    }
                }
            }
        }
        (term, magnitude)
    }
}

fn warn_if_outside_budget(params: &DpmlParams) {
    let budget = params.norm_budget();
    if budget >= 1.0 {
        warn!(
            "||M||_1 + ||N||_1 = {budget} >= 1: the DPML series may diverge; \
             divergence is detected by the truncation policy"
        );
    }
}

/// `D^{M,N}_{α,β,r}(k)` through a fresh evaluator.
pub fn dpml_eval(params: &DpmlParams, k: i64) -> Result<Matrix> {
    Dpml::new(params.clone())?.eval(k)
}

/// Matrix Mittag-Leffler series `Σ_{i≥0} M^i H_{iα+c}(k, a)`.
///
/// ```
/// use nabla_dpml::{ml_eval, Matrix, TruncationPolicy};
///
/// // one step past the base every monomial is 1: Σ 0.5^i = 2
/// let b = Matrix::from_element(1, 1, 0.5);
/// let e = ml_eval(&b, 0.6, -0.4, 1, 0, &TruncationPolicy::default()).unwrap();
/// assert!((e[(0, 0)] - 2.0).abs() < 1e-11);
/// ```
pub fn ml_eval(m: &Matrix, alpha: f64, c: f64, k: i64, a: i64, policy: &TruncationPolicy) -> Result<Matrix> {
    check_order(alpha)?;
    check_pair(m, m)?;
    policy.validate()?;
    let dim = m.nrows();
    let base = wide::widen(m);
    let mut power = wide::identity(dim);
    sum_series(policy, k, dim, |i| {
        let term = &power * monomial(series_order(i, alpha, c), k, a);
        power = &base * &power;
        plain(term)
    })
}

/// Fixed partial sum `Σ_{i=0}^{last} M^i H_{iα+c}(k, a)` of the Mittag-Leffler series.
pub fn ml_partial_sum(m: &Matrix, alpha: f64, c: f64, k: i64, a: i64, last: usize) -> Matrix {
    let dim = m.nrows();
    let base = wide::widen(m);
    let mut power = wide::identity(dim);
    partial_sum(last, dim, |i| {
        let term = &power * monomial(series_order(i, alpha, c), k, a);
        power = &base * &power;
        term
    })
}

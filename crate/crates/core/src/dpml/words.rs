//! Word sums `Q(i, j)` of non-commuting coefficient matrices.
//!
//! `Q(i + 1, j)` is the sum of all ordered products of `i` factors drawn from
//! `{M, N}` that contain exactly `j` copies of `N`. It obeys
//!
//! ```text
//! Q(i + 1, j) = M Q(i, j) + N Q(i, j − 1),   Q(0, j) = Q(i, −1) = Θ,   Q(1, 0) = I
//! ```
//!
//! and collapses to `C(i, j) M^{i−j} N^j` when `MN = NM`.

use std::sync::RwLock;

use super::wide::{self, WideMatrix};
use crate::error::{Error, Result};
use crate::Matrix;

/// Absolute commutator tolerance, scaled by `max(1, ‖M‖_max ‖N‖_max)`.
pub const COMMUTE_TOL: f64 = 1e-12;

/// Memoized table of `Q(i, j)`, grown on demand.
///
/// Row `i` stores `Q(i, 0), …, Q(i, i − 1)` in double-double; every other
/// entry is `Θ`. Growth takes a write lock, so a shared table can be read from several
/// threads.
#[derive(Debug)]
pub struct WordSumTable {
    m: Matrix,
    n: Matrix,
    wide_m: WideMatrix,
    wide_n: WideMatrix,
    rows: RwLock<Vec<Vec<WideMatrix>>>,
}

impl WordSumTable {
    pub fn new(m: Matrix, n: Matrix) -> Result<Self> {
        check_pair(&m, &n)?;
        let dim = m.nrows();
        Ok(Self {
            wide_m: wide::widen(&m),
            wide_n: wide::widen(&n),
            m,
            n,
            rows: RwLock::new(vec![Vec::new(), vec![wide::identity(dim)]]),
        })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn m(&self) -> &Matrix {
        &self.m
    }

    pub fn n(&self) -> &Matrix {
        &self.n
    }

    /// Number of rows currently materialized.
    pub fn depth(&self) -> usize {
        self.rows.read().expect("word table lock").len()
    }

    fn ensure(&self, i: usize) {
        if self.depth() > i {
            return;
        }
        let mut rows = self.rows.write().expect("word table lock");
        while rows.len() <= i {
            let prev = rows.last().expect("row 1 is seeded");
            let len = prev.len();
            let mut next = Vec::with_capacity(len + 1);
            for j in 0..=len {
                let mut q = match prev.get(j) {
                    Some(same) => &self.wide_m * same,
                    None => wide::zeros(self.dim()),
                };
                if j >= 1 {
                    q += &self.wide_n * &prev[j - 1];
                }
                next.push(q);
            }
            rows.push(next);
        }
    }

    /// `Q(i, j)`, rounded to `f64`.
    ///
    /// ```
    /// use nabla_dpml::{Matrix, WordSumTable};
    ///
    /// let m = Matrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    /// let n = Matrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]);
    /// let q = WordSumTable::new(m.clone(), n.clone()).unwrap();
    /// assert_eq!(q.get(3, 1), &m * &n + &n * &m);
    /// ```
    pub fn get(&self, i: usize, j: i64) -> Matrix {
        if j < 0 || j as usize >= i {
            return Matrix::zeros(self.dim(), self.dim());
        }
        self.ensure(i);
        wide::narrow(&self.rows.read().expect("word table lock")[i][j as usize])
    }

    /// Runs `f` on row `i`, i.e. on `[Q(i, 0), …, Q(i, i − 1)]`, without copying.
    pub(crate) fn with_row<R>(&self, i: usize, f: impl FnOnce(&[WideMatrix]) -> R) -> R {
        self.ensure(i);
        let rows = self.rows.read().expect("word table lock");
        f(&rows[i])
    }
}

impl Clone for WordSumTable {
    fn clone(&self) -> Self {
        Self {
            m: self.m.clone(),
            n: self.n.clone(),
            wide_m: self.wide_m.clone(),
            wide_n: self.wide_n.clone(),
            rows: RwLock::new(self.rows.read().expect("word table lock").clone()),
        }
    }
}

pub(crate) fn check_pair(m: &Matrix, n: &Matrix) -> Result<()> {
    if !m.is_square() || m.nrows() == 0 {
        return Err(Error::InvalidParameter {
            name: "M",
            reason: format!("expected a non-empty square matrix, got {}x{}", m.nrows(), m.ncols()),
        });
    }
    if !n.is_square() || n.nrows() != m.nrows() {
        return Err(Error::DimensionMismatch {
            name: "N",
            expected: m.nrows(),
            found: if n.is_square() { n.nrows() } else { n.ncols() },
        });
    }
    Ok(())
}

/// Largest entry of `|MN − NM|`.
pub fn commutator_defect(m: &Matrix, n: &Matrix) -> f64 {
    (m * n - n * m).amax()
}

pub(crate) fn check_commuting(m: &Matrix, n: &Matrix) -> Result<()> {
    check_pair(m, n)?;
    let defect = commutator_defect(m, n);
    if defect > COMMUTE_TOL * (m.amax() * n.amax()).max(1.0) {
        return Err(Error::NotCommuting { defect });
    }
    Ok(())
}

/// `C(i, j)` as a float, exact for the sizes used in series evaluation.
pub fn binomial(i: usize, j: usize) -> f64 {
    if j > i {
        return 0.0;
    }
    let j = j.min(i - j);
    let mut c = 1.0;
    for t in 1..=j {
        c = c * (i - j + t) as f64 / t as f64;
    }
    c.round()
}

/// `Q(i + 1, j)` for commuting `M`, `N` in the closed form `C(i, j) M^{i−j} N^j`.
pub fn word_sum_commutative(m: &Matrix, n: &Matrix, i: usize, j: i64) -> Result<Matrix> {
    check_commuting(m, n)?;
    let dim = m.nrows();
    if j < 0 || j as usize > i {
        return Ok(Matrix::zeros(dim, dim));
    }
    let j = j as usize;
    let (m_powers, n_powers) = (PowerCache::new(m.clone()), PowerCache::new(n.clone()));
    Ok(wide::narrow(&(m_powers.get(i - j) * n_powers.get(j) * wide::Wide::from(binomial(i, j)))))
}

/// Lazily grown `A^0, A^1, …` in double-double, one multiply per new power.
#[derive(Debug)]
pub(crate) struct PowerCache {
    base: WideMatrix,
    powers: RwLock<Vec<WideMatrix>>,
}

impl PowerCache {
    pub(crate) fn new(base: Matrix) -> Self {
        let dim = base.nrows();
        Self {
            base: wide::widen(&base),
            powers: RwLock::new(vec![wide::identity(dim)]),
        }
    }

    pub(crate) fn get(&self, i: usize) -> WideMatrix {
        {
            let powers = self.powers.read().expect("power cache lock");
            if let Some(p) = powers.get(i) {
                return p.clone();
            }
        }
        let mut powers = self.powers.write().expect("power cache lock");
        while powers.len() <= i {
            let next = &self.base * powers.last().expect("seeded with identity");
            powers.push(next);
        }
        powers[i].clone()
    }
}

impl Clone for PowerCache {
    fn clone(&self) -> Self {
        Self {
            base: self.base.clone(),
            powers: RwLock::new(self.powers.read().expect("power cache lock").clone()),
        }
    }
}

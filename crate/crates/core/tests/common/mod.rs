//! Independent oracles and random instance generators shared by the
//! integration and acceptance tests.
#![allow(dead_code)]

use nabla_dpml::grid::{monomial, nabla_sum_by, rl_difference_by};
use nabla_dpml::{DelaySystem, Forcing, GridSeries, Matrix, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(ln|Γ(x)|, sign Γ(x))`, reflecting below 1/2.
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x >= 0.5 {
        (ln_gamma(x), 1.0)
    } else {
        let sin = (PI * x).sin();
        let (l, sign) = ln_gamma_signed(1.0 - x);
        (PI.ln() - sin.abs().ln() - l, sin.signum() * sign)
    }
}

/// `H_μ(a + m, a) = Γ(m + μ) / (Γ(m) Γ(μ + 1))` through log-gamma.
/// Valid for `m ≥ 1` and non-integer `μ`.
pub fn gamma_ratio_monomial(mu: f64, m: i64) -> f64 {
    let (top, s_top) = ln_gamma_signed(m as f64 + mu);
    let (bottom, _) = ln_gamma_signed(m as f64);
    let (norm, s_norm) = ln_gamma_signed(mu + 1.0);
    s_top * s_norm * (top - bottom - norm).exp()
}

/// `|lhs − rhs| / max(1, |rhs|)`.
pub fn rel_defect(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / rhs.abs().max(1.0)
}

pub fn matrix_rel_defect(lhs: &Matrix, rhs: &Matrix) -> f64 {
    (lhs - rhs).amax() / rhs.amax().max(1.0)
}

/// `z` sampled on `[first, first + values.len() − 1]`.
pub struct Samples<'a> {
    pub first: i64,
    pub values: &'a [f64],
}

impl Samples<'_> {
    pub fn at(&self, k: i64) -> f64 {
        self.values[(k - self.first) as usize]
    }

    pub fn last(&self) -> i64 {
        self.first + self.values.len() as i64 - 1
    }
}

/// Defect of `∇_a^{−α} ∇_a^{−β} z(k) = ∇_a^{−(α+β)} z(k)`; `z` starts at `a + 1`.
pub fn composition_defect(alpha: f64, beta: f64, z: &Samples, k: i64) -> f64 {
    let a = z.first - 1;
    let inner = |s: i64| nabla_sum_by(beta, a, s, 0.0, |t| z.at(t));
    let lhs = nabla_sum_by(alpha, a, k, 0.0, inner);
    let rhs = nabla_sum_by(alpha + beta, a, k, 0.0, |t| z.at(t));
    rel_defect(lhs, rhs)
}

/// Defect of `∇_a^{−α} H_{β−1}(·, a)(k) = H_{α+β−1}(k, a)`.
pub fn monomial_sum_defect(alpha: f64, beta: f64, a: i64, k: i64) -> f64 {
    let lhs = nabla_sum_by(alpha, a, k, 0.0, |s| monomial(beta - 1.0, s, a));
    rel_defect(lhs, monomial(alpha + beta - 1.0, k, a))
}

/// Defect of `∇_a^{α} H_{β−1}(·, a)(k) = H_{β−α−1}(k, a)`.
pub fn monomial_difference_defect(alpha: f64, beta: f64, a: i64, k: i64) -> f64 {
    let lhs = rl_difference_by(alpha, a, k, 0.0, |s| monomial(beta - 1.0, s, a));
    rel_defect(lhs, monomial(beta - alpha - 1.0, k, a))
}

/// Defect of `∇_a^{−β} ∇_{ρ(a)}^{β} z(k) = z(k) − H_{β−1}(k, ρ(a)) z(a)`; `z` starts at `a`.
pub fn sum_difference_defect(beta: f64, z: &Samples, k: i64) -> f64 {
    let a = z.first;
    let difference = |s: i64| rl_difference_by(beta, a - 1, s, 0.0, |t| z.at(t));
    let lhs = nabla_sum_by(beta, a, k, 0.0, difference);
    let rhs = z.at(k) - monomial(beta - 1.0, k, a - 1) * z.at(a);
    rel_defect(lhs, rhs)
}

/// Defect of `∇_k Σ_{s=a+1}^{k} z(k, s) = Σ_{s=a+1}^{k} ∇_k z(k, s) + z(k − 1, k)`.
pub fn leibniz_defect(kernel: impl Fn(i64, i64) -> f64, a: i64, k: i64) -> f64 {
    let total = |t: i64| (a + 1..=t).map(|s| kernel(t, s)).sum::<f64>();
    let lhs = total(k) - total(k - 1);
    let rhs = (a + 1..=k).map(|s| kernel(k, s) - kernel(k - 1, s)).sum::<f64>() + kernel(k - 1, k);
    let scale = (a + 1..=k).map(|s| kernel(k, s).abs() + kernel(k - 1, s).abs()).sum::<f64>();
    (lhs - rhs).abs() / scale.max(1.0)
}

/// Sum of all products of `len` factors from `{M, N}` with exactly `j`
/// factors `N`, by enumerating every word.
pub fn explicit_word_sum(m: &Matrix, n: &Matrix, len: usize, j: usize) -> Matrix {
    let dim = m.nrows();
    let mut acc = Matrix::zeros(dim, dim);
    for word in 0u32..(1 << len) {
        if word.count_ones() as usize != j {
            continue;
        }
        let mut product = Matrix::identity(dim, dim);
        for bit in 0..len {
            product *= if word >> bit & 1 == 1 { n } else { m };
        }
        acc += product;
    }
    acc
}

pub fn random_matrix(rng: &mut impl Rng, dim: usize, norm: f64) -> Matrix {
    let raw = Matrix::from_fn(dim, dim, |_, _| rng.random_range(-1.0..1.0));
    let current = nabla_dpml::dpml::norm1(&raw);
    if current == 0.0 {
        raw
    } else {
        raw * (norm / current)
    }
}

pub fn random_vector(rng: &mut impl Rng, dim: usize) -> Vector {
    Vector::from_fn(dim, |_, _| rng.random_range(-1.0..1.0))
}

/// Generic pair with `‖M‖₁ + ‖N‖₁ = budget`.
pub fn random_pair(rng: &mut impl Rng, dim: usize, budget: f64) -> (Matrix, Matrix) {
    let share = rng.random_range(0.1..0.9);
    (random_matrix(rng, dim, budget * share), random_matrix(rng, dim, budget * (1.0 - share)))
}

/// Commuting pair: `N` is a polynomial in `M`, rescaled so `‖M‖₁ + ‖N‖₁ = budget`.
pub fn random_commuting_pair(rng: &mut impl Rng, dim: usize, budget: f64) -> (Matrix, Matrix) {
    let share = rng.random_range(0.1..0.9);
    let m = random_matrix(rng, dim, budget * share);
    let coeffs: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
    let poly = Matrix::identity(dim, dim) * coeffs[0] + &m * coeffs[1] + &m * &m * coeffs[2];
    let norm = nabla_dpml::dpml::norm1(&poly);
    let n = if norm == 0.0 { poly } else { poly * (budget * (1.0 - share) / norm) };
    (m, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataKind {
    InitialOnly,
    ForcingOnly,
    Mixed,
}

impl DataKind {
    pub const ALL: [DataKind; 3] = [DataKind::InitialOnly, DataKind::ForcingOnly, DataKind::Mixed];
}

pub fn random_phi(rng: &mut impl Rng, dim: usize, delay: i64) -> GridSeries {
    GridSeries::from_fn(1 - delay, 0, dim, |_| random_vector(rng, dim)).unwrap()
}

pub fn random_forcing(rng: &mut impl Rng, dim: usize, horizon: i64) -> Forcing {
    Forcing::Table(GridSeries::from_fn(1, horizon, dim, |_| random_vector(rng, dim)).unwrap())
}

pub fn random_data(rng: &mut impl Rng, dim: usize, delay: i64, horizon: i64, kind: DataKind) -> (GridSeries, Forcing) {
    let phi = match kind {
        DataKind::ForcingOnly => GridSeries::zeros(1 - delay, 0, dim).unwrap(),
        _ => random_phi(rng, dim, delay),
    };
    let forcing = match kind {
        DataKind::InitialOnly => Forcing::Zero,
        _ => random_forcing(rng, dim, horizon),
    };
    (phi, forcing)
}

/// Random system with `‖M‖₁ + ‖N‖₁ = budget`.
pub fn random_system(
    rng: &mut impl Rng,
    dim: usize,
    delay: i64,
    alpha: f64,
    budget: f64,
    horizon: i64,
    kind: DataKind,
) -> DelaySystem {
    let (m, n) = random_pair(rng, dim, budget);
    let (phi, forcing) = random_data(rng, dim, delay, horizon, kind);
    DelaySystem::new(alpha, delay, m, n, phi, forcing, horizon).unwrap()
}

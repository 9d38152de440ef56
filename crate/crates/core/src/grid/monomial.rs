/// Fractional Taylor monomial `H_μ(k, a) = (k − a)^{μ̄} / Γ(μ + 1)` on the integer grid.
///
/// With `m = k − a ≥ 1` the gamma ratio `Γ(m + μ) / (Γ(m) Γ(μ + 1))` telescopes to
///
/// ```text
/// H_μ(k, a) = ∏_{t=1}^{m−1} (t + μ) / t
/// ```
///
/// which is what is evaluated here. The product stays finite for every real
/// order, negative integers included, and gives the exact values
/// `H_{−1}(k, k − 1) = 1` and `H_{−1}(k, i − 1) = 0` for `i < k`.
///
/// Below the base the monomial vanishes. At `k = a` the value is `1` for
/// `μ = 0` and `0` otherwise (the `Γ(0)` pole in the denominator).
///
/// ```
/// use nabla_dpml::monomial;
///
/// assert_eq!(monomial(-1.0, 5, 4), 1.0);
/// assert_eq!(monomial(-1.0, 5, 2), 0.0);
/// assert!((monomial(0.5, 3, 0) - 1.875).abs() < 1e-15);
/// ```
pub fn monomial(order: f64, k: i64, a: i64) -> f64 {
    let m = k - a;
    if m <= 0 {
        return if m == 0 && order == 0.0 { 1.0 } else { 0.0 };
    }
    let mut value = 1.0;
    for t in 1..m {
        let t = t as f64;
        value *= (t + order) / t;
    }
    value
}

/// `H_μ(a + m, a)` for `m = 1..=len`, built with one multiply per entry.
///
/// `weights[m − 1]` is the coefficient of a grid value `m − 1` steps behind the
/// evaluation point in a nabla sum with kernel order `μ`.
pub fn monomial_weights(order: f64, len: usize) -> Vec<f64> {
    let mut weights = Vec::with_capacity(len);
    let mut w = 1.0;
    for m in 1..=len {
        weights.push(w);
        let t = m as f64;
        w *= (t + order) / t;
    }
    weights
}

mod common;

use common::{gamma_ratio_monomial, rel_defect};
use nabla_dpml::monomial;
use proptest::prelude::*;

/// Non-integer orders spread over `[−5, 5]`, kept at least 0.05 from the
/// integers where the reflection formula loses relative accuracy.
fn orders() -> Vec<f64> {
    (0..=400)
        .map(|t| -5.0 + 0.025 * t as f64 + 0.0071)
        .filter(|mu: &f64| (mu - mu.round()).abs() >= 0.05 && mu.abs() <= 5.0)
        .collect()
}

#[test]
fn product_matches_gamma_ratio_on_full_range() {
    let mut worst = 0.0f64;
    for mu in orders() {
        for m in 1..=200 {
            let d = (monomial(mu, m + 7, 7) - gamma_ratio_monomial(mu, m)).abs() / gamma_ratio_monomial(mu, m).abs();
            worst = worst.max(d);
        }
    }
    assert!(worst <= 1e-12, "worst relative deviation {worst:e}");
}

#[test]
fn oracle_reproduces_reference_values() {
    assert!(rel_defect(gamma_ratio_monomial(0.5, 3), 1.875) < 1e-14);
    assert!(rel_defect(gamma_ratio_monomial(-1.5, 3), -0.125) < 1e-14);
    assert_eq!(monomial(0.5, 3, 0), 1.875);
    assert_eq!(monomial(-1.5, 1, -2), -0.125);
}

#[test]
fn unit_step_monomials_are_exact() {
    for k in -20..=20 {
        assert_eq!(monomial(-1.0, k, k - 1), 1.0);
        for i in k - 30..k {
            assert_eq!(monomial(-1.0, k, i - 1), 0.0, "k = {k}, i = {i}");
        }
    }
}

proptest! {
    #[test]
    fn product_matches_gamma_ratio(mu in -5.0f64..5.0, m in 1i64..=200, base in -50i64..50) {
        prop_assume!((mu - mu.round()).abs() >= 0.05);
        let oracle = gamma_ratio_monomial(mu, m);
        let value = monomial(mu, base + m, base);
        prop_assert!((value - oracle).abs() <= 1e-12 * oracle.abs(), "{value} vs {oracle}");
    }

    #[test]
    fn depends_only_on_distance(mu in -5.0f64..5.0, m in -5i64..60, shift in -100i64..100) {
        prop_assert_eq!(monomial(mu, m, 0), monomial(mu, m + shift, shift));
    }
}

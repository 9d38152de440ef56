mod common;

use common::{explicit_word_sum, random_commuting_pair, random_matrix, rng};
use nabla_dpml::dpml::commutator_defect;
use nabla_dpml::{word_sum_commutative, Error, Matrix, WordSumTable};
use proptest::prelude::*;

fn generic_pair(seed: u64) -> (Matrix, Matrix) {
    let mut rng = rng(seed);
    (random_matrix(&mut rng, 2, 1.5), random_matrix(&mut rng, 2, 1.5))
}

fn close(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    (a - b).amax() <= tol
}

#[test]
fn short_words_match_symbolic_entries() {
    for seed in 0..20 {
        let (m, n) = generic_pair(seed);
        assert!(commutator_defect(&m, &n) > 1e-3);
        let q = WordSumTable::new(m.clone(), n.clone()).unwrap();
        let id = Matrix::identity(2, 2);
        let expected = [
            (1, 0, id),
            (2, 0, m.clone()),
            (2, 1, n.clone()),
            (3, 0, &m * &m),
            (3, 1, &m * &n + &n * &m),
            (3, 2, &n * &n),
            (4, 0, &m * &m * &m),
            (4, 1, &m * &m * &n + &m * &n * &m + &n * &m * &m),
            (4, 2, &m * &n * &n + &n * (&m * &n + &n * &m)),
            (4, 3, &n * &n * &n),
        ];
        for (i, j, value) in expected {
            assert!(close(&q.get(i, j), &value, 1e-12), "Q({i},{j}) seed {seed}");
        }
    }
}

#[test]
fn base_cases_and_zero_entries() {
    let (m, n) = generic_pair(7);
    let q = WordSumTable::new(m, n).unwrap();
    let zero = Matrix::zeros(2, 2);
    for j in 0..5 {
        assert_eq!(q.get(0, j), zero);
    }
    for i in 0..6 {
        assert_eq!(q.get(i, -1), zero);
    }
    assert_eq!(q.get(2, 3), zero);
    assert_eq!(q.get(2, 5), zero);
    assert_eq!(q.get(1, 0), Matrix::identity(2, 2));
}

#[test]
fn table_equals_explicit_word_enumeration() {
    let (m, n) = generic_pair(11);
    let q = WordSumTable::new(m.clone(), n.clone()).unwrap();
    for len in 0..=12 {
        for j in 0..=len {
            let oracle = explicit_word_sum(&m, &n, len, j);
            let scale = oracle.amax().max(1.0);
            assert!(close(&q.get(len + 1, j as i64), &oracle, 1e-12 * scale), "len {len}, j {j}");
        }
    }
}

#[test]
fn row_sums_expand_binomial_power() {
    for seed in 0..10 {
        let (m, n) = generic_pair(100 + seed);
        let q = WordSumTable::new(m.clone(), n.clone()).unwrap();
        let total = &m + &n;
        let mut power = Matrix::identity(2, 2);
        let (mut m_power, mut n_power) = (power.clone(), power.clone());
        for i in 0..=12usize {
            let row = (0..=i as i64).fold(Matrix::zeros(2, 2), |acc, j| acc + q.get(i + 1, j));
            assert!(close(&row, &power, 1e-10 * power.amax().max(1.0)), "i = {i}");
            assert!(close(&q.get(i + 1, 0), &m_power, 1e-14 * m_power.amax().max(1.0)));
            assert!(close(&q.get(i + 1, i as i64), &n_power, 1e-14 * n_power.amax().max(1.0)));
            power = &power * &total;
            m_power = &m * m_power;
            n_power = &n * n_power;
        }
    }
}

#[test]
fn commutative_collapse_on_random_pairs() {
    let mut rng = rng(2024);
    for case in 0..50 {
        let dim = 1 + case % 3;
        let (m, n) = random_commuting_pair(&mut rng, dim, 1.6);
        let q = WordSumTable::new(m.clone(), n.clone()).unwrap();
        for i in 0..=12usize {
            for j in 0..=i as i64 {
                let closed = word_sum_commutative(&m, &n, i, j).unwrap();
                let table = q.get(i + 1, j);
                assert!(close(&closed, &table, 1e-10 * table.amax().max(1.0)), "case {case}, ({i},{j})");
            }
        }
    }
}

#[test]
fn commutative_form_rejects_generic_pairs() {
    let (m, n) = generic_pair(3);
    assert!(matches!(word_sum_commutative(&m, &n, 2, 1), Err(Error::NotCommuting { .. })));
}

#[test]
fn concurrent_reads_agree_with_sequential() {
    let (m, n) = generic_pair(5);
    let shared = WordSumTable::new(m.clone(), n.clone()).unwrap();
    let fresh = WordSumTable::new(m, n).unwrap();
    std::thread::scope(|scope| {
        for t in 0..8 {
            let table = &shared;
            scope.spawn(move || {
                for i in (0..=14).rev().chain(0..=14) {
                    let _ = table.get((i + t) % 15, (i % 4) as i64);
                }
            });
        }
    });
    for i in 0..=14 {
        for j in -1..=i as i64 {
            assert_eq!(shared.get(i, j), fresh.get(i, j));
        }
    }
}

proptest! {
    #[test]
    fn recursion_holds(entries in proptest::collection::vec(-1.0f64..1.0, 8), i in 1usize..10, j in 0i64..10) {
        let m = Matrix::from_row_slice(2, 2, &entries[..4]);
        let n = Matrix::from_row_slice(2, 2, &entries[4..]);
        let q = WordSumTable::new(m.clone(), n.clone()).unwrap();
        let next = q.get(i + 1, j);
        let expected = &m * q.get(i, j) + &n * q.get(i, j - 1);
        prop_assert!(close(&next, &expected, 1e-13 * expected.amax().max(1.0)));
    }
}

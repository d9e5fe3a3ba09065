use bookram::combinatorics::binomial;
use bookram::lemmas::{
    convex_binomial, degprod_certify, dichotomy_bound, dichotomy_certify, dichotomy_value, elementary_symmetric, gen_binomial,
};
use proptest::prelude::*;

/// Sum over all k-subsets of the product, by bitmask.
fn esym_brute(x: &[f64], k: usize) -> f64 {
    (0u32..1 << x.len())
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..x.len()).filter(|i| m >> i & 1 == 1).map(|i| x[i]).product::<f64>())
        .sum()
}

#[test]
fn integer_binomials() {
    for n in 0..30u32 {
        for k in 0..8u32 {
            let want = binomial(n as u64, k as u64) as f64;
            assert!((gen_binomial(n as f64, k) - want).abs() <= 1e-12 * (1.0 + want), "C({n},{k})");
        }
    }
    assert_eq!(gen_binomial(2.5, 2), 2.5 * 1.5 / 2.0);
    assert_eq!(gen_binomial(-1.0, 3), -1.0);
}

#[test]
fn dichotomy_at_centre_equals_bound() {
    for k in 1..=6 {
        for t in [1.0, 2.0, 5.0] {
            let x = vec![t / 2.0; k];
            let v = dichotomy_value(&x, t).unwrap();
            assert!((v - dichotomy_bound(k, t)).abs() < 1e-12 * (1.0 + v));
        }
    }
    assert!(dichotomy_value(&[], 1.0).is_err());
    assert!(dichotomy_value(&[1.5], 1.0).is_err());
}

#[test]
fn bare_polynomial_breaks_the_degree_product_bound() {
    // one coordinate 1/2, k = 3: e_3 = 0 but the cubic is positive
    let x = [0.5, 0.0, 0.0, 0.0];
    assert_eq!(elementary_symmetric(&x, 3), 0.0);
    assert!(gen_binomial(0.5, 3) > 0.06);
    assert_eq!(convex_binomial(0.5, 3), 0.0);
}

#[test]
fn certify_reports_are_deterministic() {
    let a = dichotomy_certify(3, 2.0, 2000, 9, 1e-9).unwrap().to_tsv();
    let b = dichotomy_certify(3, 2.0, 2000, 9, 1e-9).unwrap().to_tsv();
    assert_eq!(a, b);
    let a = degprod_certify(6, 3, 2000, 9, 1e-9).unwrap().to_tsv();
    let b = degprod_certify(6, 3, 2000, 9, 1e-9).unwrap().to_tsv();
    assert_eq!(a, b);
}

proptest! {
    #[test]
    fn esym_recurrence_matches_subsets(x in prop::collection::vec(0.0f64..1.0, 1..10), k in 0usize..6) {
        let got = elementary_symmetric(&x, k);
        let want = esym_brute(&x, k);
        prop_assert!((got - want).abs() <= 1e-9 * (1.0 + want.abs()));
    }

    #[test]
    fn dichotomy_holds_at_random_points(t in 0.5f64..6.0, raw in prop::collection::vec(0.0f64..1.0, 1..7)) {
        let x: Vec<f64> = raw.iter().map(|r| r * t).collect();
        let v = dichotomy_value(&x, t).unwrap();
        prop_assert!(v >= dichotomy_bound(x.len(), t) * (1.0 - 1e-12) - 1e-12);
    }

    #[test]
    fn degprod_holds_at_random_points(x in prop::collection::vec(0.0f64..=1.0, 1..11), k in 1usize..5) {
        prop_assume!(k <= x.len());
        let c: f64 = x.iter().sum();
        prop_assert!(elementary_symmetric(&x, k) >= convex_binomial(c, k as u32) - 1e-9);
    }

    #[test]
    fn convex_binomial_is_convex(a in 0.0f64..12.0, b in 0.0f64..12.0, k in 0u32..7) {
        let mid = convex_binomial((a + b) / 2.0, k);
        prop_assert!(mid <= (convex_binomial(a, k) + convex_binomial(b, k)) / 2.0 + 1e-9);
    }
}

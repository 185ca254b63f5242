mod common;

use common::{ideal, poly, random_poly, zring};
use diffpow_core::diffops::{apply_d, commutator, diff_power_membership, leibniz_expand};
use diffpow_core::groebner::Ideal;
use diffpow_core::poly::{ExponentVector, Polynomial};
use diffpow_core::powers::generator_products;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn alpha() -> impl Strategy<Value = ExponentVector> {
    (0u32..=3, 0u32..=3).prop_filter("nonzero", |(a, b)| a + b > 0).prop_map(|(a, b)| ExponentVector::new([a, b]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutator_matches_definition_on_monomials(a in alpha(), seed in any::<u64>()) {
        let r = zring(&["x", "y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_poly(&r, &mut rng, 3, 9, 4);
        let op = commutator(&a, &g);
        for m in ExponentVector::all_up_to_degree(2, 6) {
            let f = Polynomial::monomial(&r, diffpow_core::poly::Scalar::one(), m);
            let expected = &apply_d(&a, &(&g * &f)) - &(&g * &apply_d(&a, &f));
            prop_assert_eq!(op.apply(&f).unwrap(), expected);
        }
    }

    #[test]
    fn leibniz_rule(a in alpha(), seed in any::<u64>()) {
        let r = zring(&["x", "y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&r, &mut rng, 4, 9, 4);
        let g = random_poly(&r, &mut rng, 4, 9, 4);
        prop_assert_eq!(leibniz_expand(&a, &f, &g), apply_d(&a, &(&f * &g)));
    }

    #[test]
    fn differential_levels_descend(seed in any::<u64>()) {
        let r = zring(&["x", "y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = ideal(&r, &["x - 2", "y - 3"]);
        let f = &random_poly(&r, &mut rng, 2, 5, 3) * &poly(&r, "(x - 2)^2*(y - 3)");
        let levels: Vec<bool> = (1..=5).map(|n| diff_power_membership(&q, n, &f).unwrap()).collect();
        prop_assert!(levels.windows(2).all(|w| w[0] || !w[1]), "{:?}", levels);
    }
}

/// `D_α(a^n) ⊆ a^(n-|α|)`.
#[test]
fn operators_lower_powers_by_their_order() {
    let r = zring(&["x", "y"]);
    for a in [ideal(&r, &["2", "x"]), ideal(&r, &["x - 2", "y - 3"]), ideal(&r, &["x^2 + 1", "y"])] {
        for n in 1..=3u32 {
            for f in generator_products(&r, a.generators(), n) {
                for t in 0..=n {
                    let lower = if t == n { Ideal::unit(&r) } else { a.pow(n - t) };
                    for alpha in ExponentVector::all_up_to_degree(2, t).into_iter().filter(|e| e.total_degree() == t) {
                        // Products of fewer than n generators only land in a^(k - t).
                        if a.pow(n).contains(&f).unwrap() {
                            assert!(lower.contains(&apply_d(&alpha, &f)).unwrap(), "D_{alpha:?}({f})");
                        }
                    }
                }
            }
        }
    }
}

/// With `I = (x, y)` and `u ∉ I`: `D_α(u z^α) ∉ I`, and `D_α(u z^β) ∈ I` for
/// `β ≠ α` of the same order.
#[test]
fn divided_powers_detect_exact_monomials() {
    let r = zring(&["x", "y", "z"]);
    let i = ideal(&r, &["x", "y"]);
    for u in ["1", "z - 4", "3*z^2 + 7"] {
        let u = poly(&r, u);
        for t in 1..=4u32 {
            let alphas: Vec<ExponentVector> = (0..=t).map(|a| ExponentVector::new([a, t - a, 0])).collect();
            for a in &alphas {
                for b in &alphas {
                    let f = u.mul_term(&diffpow_core::poly::Scalar::one(), b);
                    assert_eq!(i.contains(&apply_d(a, &f)).unwrap(), a != b, "D_{a:?}(u z^{b:?})");
                }
            }
        }
    }
}

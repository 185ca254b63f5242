mod common;

use common::{ideal, poly, random_poly, zring};
use diffpow_core::groebner::Ideal;
use diffpow_core::pderiv::{pder_power_membership, verify_axioms, FrobeniusLift, PDerivation};
use diffpow_core::powers::generator_products;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lifts() -> Vec<(u64, &'static str)> {
    vec![
        (2, "x -> x^2, y -> y^2"),
        (2, "x -> x^2 + 2*x*y, y -> y^2 - 2"),
        (3, "x -> x^3, y -> y^3"),
        (3, "x -> x^3 + 3*y, y -> y^3"),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lift_is_a_frobenius_homomorphism(k in 0usize..4, seed in any::<u64>()) {
        let r = zring(&["x", "y"]);
        let (p, text) = lifts()[k];
        let lift = FrobeniusLift::parse(&r, p, text).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&r, &mut rng, 3, 9, 4);
        let g = random_poly(&r, &mut rng, 3, 9, 4);
        prop_assert_eq!(lift.apply(&(&f * &g)).unwrap(), &lift.apply(&f).unwrap() * &lift.apply(&g).unwrap());
        prop_assert_eq!(lift.apply(&(&f + &g)).unwrap(), &lift.apply(&f).unwrap() + &lift.apply(&g).unwrap());
        let diff = &lift.apply(&f).unwrap() - &f.pow(p as u32);
        prop_assert!(diff.all_coefficients_divisible_by(&BigInt::from(p)));
        let d = PDerivation::new(lift).unwrap();
        prop_assert!(verify_axioms(&d, &[(f, g)]).unwrap().is_ok());
    }

    #[test]
    fn p_levels_form_ideals(seed in any::<u64>()) {
        let r = zring(&["x", "y"]);
        let a = ideal(&r, &["4", "x + 2", "y + 2"]);
        let d = PDerivation::standard(&r, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = a.pow(2);
        let f = &random_poly(&r, &mut rng, 1, 3, 2) * &gens.generators()[seed as usize % gens.generators().len()];
        let g = &poly(&r, "4") * &random_poly(&r, &mut rng, 1, 3, 2);
        let s = random_poly(&r, &mut rng, 2, 5, 3);
        for n in 1..=2 {
            let fm = pder_power_membership(&a, n, &d, &f).unwrap();
            let gm = pder_power_membership(&a, n, &d, &g).unwrap();
            if fm && gm {
                prop_assert!(pder_power_membership(&a, n, &d, &(&f + &g)).unwrap());
            }
            if fm {
                prop_assert!(pder_power_membership(&a, n, &d, &(&s * &f)).unwrap());
            }
        }
    }
}

/// `δ(a^n) ⊆ a^(n-1)` for primary `a` containing `p`.
#[test]
fn delta_lowers_powers_by_one() {
    let zx = zring(&["x"]);
    let zxy = zring(&["x", "y"]);
    let cases = [
        (ideal(&zx, &["2", "x"]), 2),
        (ideal(&zxy, &["2", "x^2", "y"]), 2),
        (ideal(&zxy, &["3", "x", "y"]), 3),
        (ideal(&zx, &["2", "x^2 + x + 1"]), 2),
    ];
    for (a, p) in cases {
        let d = PDerivation::standard(a.ring(), p).unwrap();
        for n in 1..=3u32 {
            let lower = if n == 1 { Ideal::unit(a.ring()) } else { a.pow(n - 1) };
            let fewer = if n > 1 { generator_products(a.ring(), a.generators(), n - 1).len() } else { 0 };
            for f in &generator_products(a.ring(), a.generators(), n)[fewer..] {
                assert!(lower.contains(&d.apply(f).unwrap()).unwrap(), "δ({f}) ∉ {a}^{}", n - 1);
            }
        }
    }
}

/// Members at levels `s` and `t` multiply into level `s + t` when `p ∈ a`.
#[test]
fn p_levels_multiply() {
    let r = zring(&["x", "y"]);
    let a = ideal(&r, &["2", "x^2", "y"]);
    let d = PDerivation::standard(&r, 2).unwrap();
    let candidates: Vec<_> = ["2", "y", "x^2", "4", "2*y", "x^4 + 2*y", "y^2 - 2*x^2", "8*x", "x^2*y + 4"]
        .iter()
        .map(|s| poly(&r, s))
        .collect();
    let level = |f| (1..=4).take_while(|&n| pder_power_membership(&a, n, &d, f).unwrap()).last().unwrap_or(0);
    for f in &candidates {
        for g in &candidates {
            let (s, t) = (level(f), level(g));
            if s > 0 && t > 0 && s + t <= 4 {
                assert!(pder_power_membership(&a, s + t, &d, &(f * g)).unwrap(), "{f} · {g}");
            }
        }
    }
}

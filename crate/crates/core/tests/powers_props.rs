mod common;

use common::{ideal, random_poly, zring};
use diffpow_core::diffops::diff_power_membership;
use diffpow_core::groebner::Ideal;
use diffpow_core::pderiv::{pder_power_membership, PDerivation};
use diffpow_core::poly::Polynomial;
use diffpow_core::powers::{generator_products, mixed_power_witness, symbolic_membership, SymbolicPower};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn primes() -> Vec<(Ideal, u64)> {
    let zx = zring(&["x"]);
    let zxy = zring(&["x", "y"]);
    vec![
        (ideal(&zx, &["2", "x"]), 2),
        (ideal(&zx, &["2", "x^2 + x + 1"]), 2),
        (ideal(&zxy, &["3", "x"]), 3),
    ]
}

fn mixed(q: &Ideal, n: u32, d: &PDerivation, f: &Polynomial) -> bool {
    let scope: Vec<usize> = (0..q.ring().nvars()).collect();
    mixed_power_witness(q, n, d, f, &scope).unwrap().is_none()
}

/// A sample biased toward deep powers: a random multiple of a product of
/// generators.
fn sample(q: &Ideal, rng: &mut ChaCha8Rng, seed: u64) -> Polynomial {
    let prods = generator_products(q.ring(), q.generators(), 3);
    let base = &prods[seed as usize % prods.len()];
    &random_poly(q.ring(), rng, 2, 5, 3) * base
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symbolic_sits_inside_every_differential_power(k in 0usize..3, seed in any::<u64>()) {
        let (q, p) = primes().swap_remove(k);
        let d = PDerivation::standard(q.ring(), p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample(&q, &mut rng, seed);
        for n in 1..=4 {
            if symbolic_membership(&q, n, &f).unwrap() {
                prop_assert!(diff_power_membership(&q, n, &f).unwrap());
                prop_assert!(pder_power_membership(&q, n, &d, &f).unwrap());
                prop_assert!(mixed(&q, n, &d, &f));
            }
        }
    }

    #[test]
    fn mixed_levels_descend_and_match_symbolic(k in 0usize..3, seed in any::<u64>()) {
        let (q, p) = primes().swap_remove(k);
        let d = PDerivation::standard(q.ring(), p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample(&q, &mut rng, seed);
        let levels: Vec<bool> = (1..=4).map(|n| mixed(&q, n, &d, &f)).collect();
        prop_assert!(levels.windows(2).all(|w| w[0] || !w[1]));
        for n in 1..=3u32 {
            prop_assert_eq!(levels[n as usize - 1], symbolic_membership(&q, n, &f).unwrap(), "n={} f={}", n, f);
        }
    }

    #[test]
    fn mixed_powers_are_primary(k in 0usize..3, seed in any::<u64>()) {
        let (q, p) = primes().swap_remove(k);
        let d = PDerivation::standard(q.ring(), p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(q.ring(), &mut rng, 2, 5, 3);
        prop_assume!(!q.contains(&f).unwrap());
        let g = sample(&q, &mut rng, seed / 7);
        for n in 1..=3 {
            if mixed(&q, n, &d, &(&f * &g)) {
                prop_assert!(mixed(&q, n, &d, &g));
            }
        }
    }
}

#[test]
fn powers_sit_inside_mixed_powers() {
    for (q, p) in primes() {
        let d = PDerivation::standard(q.ring(), p).unwrap();
        for n in 1..=3 {
            let power = q.pow(n);
            for g in power.generators() {
                assert!(mixed(&q, n, &d, g), "{g} ∈ {q}^{n}");
            }
        }
    }
}

#[test]
fn maximal_ideals_collapse() {
    let zxy = zring(&["x", "y"]);
    let m = ideal(&zxy, &["2", "x", "y"]);
    let d = PDerivation::standard(&zxy, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=3 {
        let power = m.pow(n);
        for _ in 0..40 {
            let f = random_poly(&zxy, &mut rng, 4, 8, 4);
            assert_eq!(mixed(&m, n, &d, &f), power.contains(&f).unwrap(), "{f} at n={n}");
        }
    }
}

#[test]
fn cached_symbolic_power_matches_one_shot() {
    let (q, _) = primes().swap_remove(0);
    let sym = SymbolicPower::new(&q, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let f = sample(&q, &mut rng, 5);
        assert_eq!(sym.contains(&f).unwrap(), symbolic_membership(&q, 3, &f).unwrap());
    }
}

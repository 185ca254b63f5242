mod common;

use common::{random_ideal, random_member, random_poly, zring, qring};
use diffpow_core::groebner::Ideal;
use diffpow_core::lattice::truncated_ideal_lattice;
use diffpow_core::poly::{MonomialOrder, Ring};
use diffpow_core::Error;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Steps allowed per Gröbner computation on a random instance. Over ℤ a few
/// instances in a thousand blow up their coefficients; those are discarded.
const BUDGET: u64 = 1_000_000;

fn bounded<T>(r: diffpow_core::Result<T>) -> Result<T, TestCaseError> {
    match r {
        Err(Error::BudgetExceeded { .. }) => Err(TestCaseError::reject("step budget exceeded")),
        r => Ok(r.unwrap()),
    }
}

fn instance(r: &Ring, rng: &mut ChaCha8Rng) -> Ideal {
    random_ideal(r, rng).with_budget(BUDGET)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_matches_truncated_lattice(seed in any::<u64>(), two_vars in any::<bool>(), d in 0u32..=4) {
        let r = if two_vars { zring(&["x", "y"]) } else { zring(&["x"]) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = instance(&r, &mut rng);
        let lattice = truncated_ideal_lattice(&i, d).unwrap();
        for f in [random_poly(&r, &mut rng, d, 5, 4), random_member(&i, &mut rng, d)] {
            prop_assert_eq!(bounded(i.contains(&f))?, lattice.member(&f).unwrap(), "{} in {}", f, i);
        }
    }

    #[test]
    fn combinations_reduce_to_zero(seed in any::<u64>(), nvars in 1usize..=3) {
        let r = zring(&["x", "y", "z"][..nvars]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = instance(&r, &mut rng);
        let f = random_member(&i, &mut rng, 5);
        prop_assert!(bounded(i.normal_form(&f))?.is_zero());
        let lex = bounded(i.strong_groebner(MonomialOrder::Lex))?;
        prop_assert!(lex.normal_form(&f).unwrap().is_zero());
    }

    #[test]
    fn colon_membership_both_ways(seed in any::<u64>()) {
        let r = zring(&["x", "y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = instance(&r, &mut rng);
        let f = random_poly(&r, &mut rng, 2, 5, 2);
        prop_assume!(!f.is_zero());
        let colon = bounded(i.colon(&f))?;
        for g in [random_poly(&r, &mut rng, 2, 5, 3), random_member(&colon, &mut rng, 3)] {
            prop_assert_eq!(bounded(colon.contains(&g))?, bounded(i.contains(&(&g * &f)))?);
        }
    }

    #[test]
    fn intersection_membership_both_ways(seed in any::<u64>(), over_q in any::<bool>()) {
        let r = if over_q { qring(&["x", "y"]) } else { zring(&["x", "y"]) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = instance(&r, &mut rng);
        let j = instance(&r, &mut rng);
        let meet = bounded(i.intersect(&j))?;
        let product = &random_member(&i, &mut rng, 2) * &random_member(&j, &mut rng, 2);
        for g in [random_poly(&r, &mut rng, 3, 5, 3), product] {
            let both = bounded(i.contains(&g))? && bounded(j.contains(&g))?;
            prop_assert_eq!(bounded(meet.contains(&g))?, both);
        }
    }

    #[test]
    fn orders_agree_on_membership(seed in any::<u64>()) {
        let r = zring(&["x", "y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = instance(&r, &mut rng);
        let f = random_poly(&r, &mut rng, 4, 5, 4);
        let verdicts: Vec<bool> = [MonomialOrder::GradedRevLex, MonomialOrder::GradedLex, MonomialOrder::Lex]
            .into_iter()
            .map(|o| bounded(i.strong_groebner(o)).map(|gb| gb.normal_form(&f).unwrap().is_zero()))
            .collect::<Result<_, _>>()?;
        prop_assert!(verdicts.iter().all(|&v| v == verdicts[0]));
    }
}

#[test]
fn saturation_stabilizes() {
    let r = zring(&["x", "y"]);
    let i = Ideal::parse(&r, &["x^2*y", "x*y^3"]).unwrap();
    let (sat, k) = i.saturation(&common::poly(&r, "y")).unwrap();
    assert!(sat.ideal_eq(&Ideal::parse(&r, &["x"]).unwrap()).unwrap());
    assert!(k >= 1);
}

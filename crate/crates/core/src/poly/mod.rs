//! Exact sparse multivariate polynomials over ℤ, ℚ and 𝔽_p.

mod domain;
mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use domain::{is_prime, CoefficientDomain, Prime, Scalar};
pub use monomial::{ExponentVector, MonomialOrder};
pub use polynomial::{binomial, Polynomial, Term, CANONICAL_ORDER};
pub use ring::{PolyRing, Ring};

pub(crate) use ring::same_ring;

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;
    use crate::error::Error;

    fn ring(domain: CoefficientDomain, vars: &[&str]) -> Ring {
        PolyRing::new(domain, vars.iter().copied()).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn add_examples() {
        let r = ring(CoefficientDomain::Integers, &["x", "y"]);
        assert_eq!(&p(&r, "x+2") + &p(&r, "y+2"), p(&r, "x+y+4"));
        assert_eq!(&p(&r, "x*y - 3") + &Polynomial::zero(&r), p(&r, "x*y - 3"));
        let sum = &p(&r, "x^2+x") + &p(&r, "-x^2");
        assert_eq!(sum, p(&r, "x"));
        assert_eq!(sum.num_terms(), 1);
    }

    #[test]
    fn mul_examples() {
        let r = ring(CoefficientDomain::Integers, &["x", "y"]);
        assert_eq!(&p(&r, "x+2") * &p(&r, "y+2"), p(&r, "x*y+2*x+2*y+4"));
        assert_eq!(&p(&r, "3*x - y") * &Polynomial::one(&r), p(&r, "3*x - y"));
        let f2 = ring(CoefficientDomain::prime_field(2).unwrap(), &["x"]);
        assert_eq!(&p(&f2, "x+1") * &p(&f2, "x-1"), p(&f2, "x^2+1"));
        assert_eq!((&p(&f2, "x+1") * &p(&f2, "x-1")).to_string(), "x^2 + 1");
    }

    #[test]
    fn pow_examples() {
        let r = ring(CoefficientDomain::Integers, &["x", "y"]);
        assert_eq!(p(&r, "x+2").pow(2), p(&r, "x^2+4*x+4"));
        assert_eq!(p(&r, "x-7*y").pow(0), Polynomial::one(&r));
        let f2 = ring(CoefficientDomain::prime_field(2).unwrap(), &["x", "y"]);
        assert_eq!(p(&f2, "x+y").pow(2), p(&f2, "x^2+y^2"));
    }

    #[test]
    fn substitute_examples() {
        let r = ring(CoefficientDomain::Integers, &["x", "y"]);
        let sq: BTreeMap<String, Polynomial> =
            [("x".to_string(), p(&r, "x^2")), ("y".to_string(), p(&r, "y^2"))].into();
        assert_eq!(p(&r, "x*y").substitute(&sq).unwrap(), p(&r, "x^2*y^2"));
        let only_x: BTreeMap<String, Polynomial> = [("x".to_string(), p(&r, "x^2"))].into();
        assert_eq!(p(&r, "x+2").substitute(&only_x).unwrap(), p(&r, "x^2+2"));
        let id: BTreeMap<String, Polynomial> = [("x".to_string(), p(&r, "x"))].into();
        assert_eq!(p(&r, "x^3 - 4*x").substitute(&id).unwrap(), p(&r, "x^3 - 4*x"));
        assert_eq!(
            p(&r, "x*y").substitute(&only_x),
            Err(Error::MissingImage("y".to_string()))
        );
    }

    #[test]
    fn divexact_examples() {
        let r = ring(CoefficientDomain::Integers, &["x"]);
        let two = BigInt::from(2);
        assert_eq!(p(&r, "2*x^2+4").divexact_integer(&two).unwrap(), p(&r, "x^2+2"));
        assert_eq!(Polynomial::zero(&r).divexact_integer(&BigInt::from(5)).unwrap(), Polynomial::zero(&r));
        assert!(matches!(
            p(&r, "x+1").divexact_integer(&two),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn polynomial_exact_division() {
        let r = ring(CoefficientDomain::Integers, &["x", "y"]);
        let f = p(&r, "(x^2 - 3*y)*(2*x*y + 1)");
        assert_eq!(f.div_exact(&p(&r, "2*x*y + 1")).unwrap(), p(&r, "x^2 - 3*y"));
        assert!(p(&r, "x^2 + 1").div_exact(&p(&r, "x + 1")).is_err());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = ring(CoefficientDomain::Integers, &["x"]);
        let b = ring(CoefficientDomain::Rationals, &["x"]);
        assert_eq!(p(&a, "x").checked_add(&p(&b, "x")), Err(Error::RingMismatch));
        assert_eq!(p(&a, "x").checked_mul(&p(&b, "x")), Err(Error::RingMismatch));
    }

    #[test]
    fn degree_is_additive_over_integral_domains() {
        let r = ring(CoefficientDomain::Integers, &["x", "y"]);
        let f = p(&r, "x^2*y - 3");
        let g = p(&r, "y^3 + x");
        assert_eq!((&f * &g).degree(), Some(6));
        assert_eq!((&f + &g).degree(), Some(3));
    }

    // Random polynomials in two variables with small coefficients.
    fn arb_poly(domain: CoefficientDomain) -> impl Strategy<Value = Polynomial> {
        let r = ring(domain, &["x", "y"]);
        prop::collection::vec((-9i64..=9, 0u32..4, 0u32..4), 0..6).prop_map(move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .map(|(c, a, b)| (Scalar::from_i64(c), ExponentVector::new([a, b]))),
            )
            .unwrap()
        })
    }

    fn domains() -> impl Strategy<Value = CoefficientDomain> {
        prop_oneof![
            Just(CoefficientDomain::Integers),
            Just(CoefficientDomain::Rationals),
            Just(CoefficientDomain::prime_field(2).unwrap()),
            Just(CoefficientDomain::prime_field(5).unwrap()),
        ]
    }

    fn triple() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
        domains().prop_flat_map(|d| (arb_poly(d), arb_poly(d), arb_poly(d)))
    }

    proptest! {
        #[test]
        fn canonical_form_and_ring_axioms((f, g, h) in triple()) {
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert!((&f - &f).is_zero());
            prop_assert!((&f + &f.neg()).is_zero());
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
        }

        #[test]
        fn substitution_is_a_homomorphism((f, g, h) in triple(), k in 0usize..2) {
            let r = f.ring().clone();
            let images = if k == 0 {
                vec![Some(h.clone()), Some(p(&r, "x*y - 1"))]
            } else {
                vec![Some(p(&r, "y")), Some(h.clone())]
            };
            let s = |q: &Polynomial| q.substitute_indexed(&images, &r).unwrap();
            prop_assert_eq!(s(&(&f * &g)), &s(&f) * &s(&g));
            prop_assert_eq!(s(&(&f + &g)), &s(&f) + &s(&g));
        }

        #[test]
        fn divexact_inverts_scaling(f in arb_poly(CoefficientDomain::Integers), m in -20i64..20) {
            prop_assume!(m != 0);
            let scaled = f.scale_i64(m);
            prop_assert_eq!(scaled.divexact_integer(&BigInt::from(m)).unwrap(), f);
        }
    }
}

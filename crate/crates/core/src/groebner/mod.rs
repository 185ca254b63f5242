//! Gröbner bases over ℤ (strong) and over fields, with the ideal operations
//! built on them.

mod certificate;
mod engine;
mod ideal;

pub use certificate::{CertificateKind, PrimeCertificate, MAX_IRREDUCIBLE_DEGREE};
pub use ideal::{GroebnerBasis, Ideal, DEFAULT_BUDGET};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::poly::{CoefficientDomain, MonomialOrder, PolyRing, Polynomial, Ring};

    fn zx() -> Ring {
        PolyRing::new(CoefficientDomain::Integers, ["x"]).unwrap()
    }

    fn zxy() -> Ring {
        PolyRing::new(CoefficientDomain::Integers, ["x", "y"]).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::parse(r, gens).unwrap()
    }

    fn basis_strings(i: &Ideal) -> Vec<String> {
        i.basis().unwrap().elements().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn field_basis_of_variables() {
        let r = PolyRing::new(CoefficientDomain::Rationals, ["x", "y"]).unwrap();
        assert_eq!(basis_strings(&ideal(&r, &["x", "y"])), ["y", "x"]);
    }

    #[test]
    fn gcd_polynomials_over_integers() {
        let r = zx();
        assert_eq!(basis_strings(&ideal(&r, &["2*x", "3*x"])), ["x"]);
        let i = ideal(&r, &["4", "2*x", "x^2"]);
        assert!(i.normal_form(&p(&r, "2*x^2")).unwrap().is_zero());
        assert_eq!(i.normal_form(&p(&r, "2")).unwrap(), p(&r, "2"));
        assert!(i.basis().unwrap().is_strong());
    }

    #[test]
    fn normal_form_examples() {
        let r = zx();
        let i = ideal(&r, &["x^2 + 1"]);
        assert!(i.normal_form(&p(&r, "x^2 + 1")).unwrap().is_zero());
        assert_eq!(i.normal_form(&p(&r, "x^2")).unwrap(), p(&r, "-1"));
    }

    #[test]
    fn membership_examples() {
        let r = zxy();
        assert!(ideal(&r, &["x", "y"]).contains(&p(&r, "x*y")).unwrap());
        assert!(!ideal(&r, &["2"]).contains(&p(&r, "3")).unwrap());
        let q = ideal(&r, &["2", "x^2 + x + 1"]);
        assert!(!q.contains(&p(&r, "(x^2 + x + 1)^2 - 2 + x")).unwrap());
        assert!(q.contains(&p(&r, "(x^2 + x + 1)^2 - 2")).unwrap());
    }

    #[test]
    fn colon_examples() {
        let r = zxy();
        let i = ideal(&r, &["x^2", "x*y", "y^2"]);
        assert!(i.colon(&p(&r, "x")).unwrap().ideal_eq(&ideal(&r, &["x", "y"])).unwrap());
        assert!(i.colon(&p(&r, "1")).unwrap().ideal_eq(&i).unwrap());
        let j = ideal(&zx(), &["4", "2*x", "x^2"]);
        let c = j.colon(&p(&zx(), "2")).unwrap();
        assert!(c.ideal_eq(&ideal(&zx(), &["2", "x"])).unwrap());
        assert!(matches!(i.colon(&Polynomial::zero(&r)), Err(Error::Precondition(_))));
    }

    #[test]
    fn saturation_examples() {
        let r = zxy();
        let (s, k) = ideal(&r, &["x^2*y"]).saturation(&p(&r, "y")).unwrap();
        assert!(s.ideal_eq(&ideal(&r, &["x^2"])).unwrap());
        assert_eq!(k, 1);
        let (s, k) = ideal(&r, &["x"]).saturation(&p(&r, "x")).unwrap();
        assert!(s.is_unit().unwrap());
        assert_eq!(k, 1);
    }

    #[test]
    fn saturation_of_square_of_a_space_curve_prime() {
        let r = PolyRing::new(CoefficientDomain::Integers, ["x", "y", "z"]).unwrap();
        let q = ideal(&r, &["2", "x^3 - y*z", "y^2 - x*z", "z^2 - x^2*y"]);
        let q2 = q.pow(2);
        let (sat, _) = q2.saturation(&p(&r, "z")).unwrap();
        assert!(sat.contains_ideal(&q2).unwrap());
        let witness = sat.generators().iter().find(|g| !q2.contains(g).unwrap()).cloned();
        let witness = witness.expect("saturation strictly larger");
        assert!(q.contains(&witness).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let r = zxy();
        let a = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
        assert!(a.ideal_eq(&ideal(&r, &["x*y"])).unwrap());
        let b = ideal(&r, &["2"]).intersect(&ideal(&r, &["3"])).unwrap();
        assert!(b.ideal_eq(&ideal(&r, &["6"])).unwrap());
        let c = ideal(&r, &["x", "y"]).intersect(&ideal(&r, &["x^2", "y"])).unwrap();
        assert!(c.ideal_eq(&ideal(&r, &["x^2", "y"])).unwrap());
    }

    /// Integer eliminations prone to coefficient explosion.
    #[test]
    fn integer_eliminations_stay_small() {
        let r = zxy();
        let cases = [
            (vec!["-5*x^3 + 3*y", "-5*x*y^2 + 5*x*y"], vec!["-3*x*y - 4*y^2 - 2*x"]),
            (vec!["-4*x^2*y - 5*x*y - 4*x", "x*y^2 + 8"], vec!["2*x*y - 3*x + 4*y", "5*y^3"]),
        ];
        for (a, b) in cases {
            let (a, b) = (ideal(&r, &a).with_budget(2_000_000), ideal(&r, &b));
            let meet = a.intersect(&b).unwrap();
            for g in meet.generators() {
                assert!(a.contains(g).unwrap() && b.contains(g).unwrap(), "{g}");
            }
            for (f, g) in a.generators().iter().zip(b.generators()) {
                assert!(meet.contains(&(f * g)).unwrap());
            }
        }
        let i = ideal(&r, &["4*x^3 + 5*x*y + 3", "-2*x*y + 3*y^2 - 4*x"]).with_budget(2_000_000);
        let f = p(&r, "3*x^2 + 2");
        let colon = i.colon(&f).unwrap();
        for g in colon.generators() {
            assert!(i.contains(&(g * &f)).unwrap());
        }
        assert!(colon.contains_ideal(&i).unwrap());
    }

    #[test]
    fn containment_examples() {
        let r = zx();
        assert!(ideal(&r, &["x"]).contains_ideal(&ideal(&r, &["x^2"])).unwrap());
        assert!(!ideal(&r, &["x^2"]).contains_ideal(&ideal(&r, &["x"])).unwrap());
        let sq = ideal(&r, &["2", "x"]).pow(2);
        assert!(sq.ideal_eq(&ideal(&r, &["4", "2*x", "x^2"])).unwrap());
    }

    #[test]
    fn certificates() {
        let r = zx();
        let q = ideal(&r, &["2", "x^2 + x + 1"]);
        let cert = PrimeCertificate::from_generators(CertificateKind::PIrreducible, &q).unwrap();
        assert!(cert.check(&q).unwrap());
        let bad = ideal(&r, &["2", "x^2 + 1"]);
        let cert = PrimeCertificate::from_generators(CertificateKind::PIrreducible, &bad).unwrap();
        assert!(!cert.check(&bad).unwrap());
        let lin = ideal(&zxy(), &["x - 2", "y - 3"]);
        assert!(PrimeCertificate::LinearKernel.check(&lin).unwrap());
        assert!(PrimeCertificate::Trusted.check(&bad).unwrap());
        let principal = ideal(&r, &["x^2 - 2"]);
        assert!(PrimeCertificate::PrincipalIrreducibleOverQ { f: p(&r, "x^2 - 2") }.check(&principal).unwrap());
        let split = ideal(&r, &["x^2 - 1"]);
        assert!(!PrimeCertificate::PrincipalIrreducibleOverQ { f: p(&r, "x^2 - 1") }.check(&split).unwrap());
        let wrong_p = PrimeCertificate::PPlusIrreducibleUnivariate { p: 4, f: p(&r, "x") };
        assert!(matches!(wrong_p.check(&q), Err(Error::MalformedCertificate(_))));
    }

    #[test]
    fn budget_is_enforced() {
        let r = PolyRing::new(CoefficientDomain::Integers, ["x", "y", "z"]).unwrap();
        let i = ideal(&r, &["3*x^2*y - 2*z^3 + 1", "5*x*y^2 - z + 4", "7*x*z^2 - y^3"]).with_budget(10);
        assert_eq!(i.basis().unwrap_err(), Error::BudgetExceeded { budget: 10 });
    }

    #[test]
    fn every_order_agrees_on_membership() {
        let r = zxy();
        let i = ideal(&r, &["6*x^2 - 4*y", "9*x*y + 3", "2*y^2 - x"]);
        let orders = [
            MonomialOrder::Lex,
            MonomialOrder::GradedLex,
            MonomialOrder::GradedRevLex,
            MonomialOrder::Elimination { block: 1 },
        ];
        let probes = ["x", "3", "6*x^2 - 4*y + 2*y^2 - x", "x*y + 1", "(9*x*y + 3)*(x - y^3)", "12"];
        for f in probes {
            let f = p(&r, f);
            let answers: Vec<bool> = orders
                .iter()
                .map(|&o| i.strong_groebner(o).unwrap().normal_form(&f).unwrap().is_zero())
                .collect();
            assert!(answers.iter().all(|&a| a == answers[0]), "{f}: {answers:?}");
        }
    }
}

//! Lifts of Frobenius and the p-derivations `δ(f) = (φ(f) - f^p) / p` they
//! induce on polynomial rings over ℤ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{binomial, same_ring, CoefficientDomain, Polynomial, Prime, Ring};

/// A ring endomorphism `φ` of `ℤ[x_1, …, x_k]` with `φ(x_i) ≡ x_i^p (mod p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusLift {
    ring: Ring,
    p: Prime,
    images: Vec<Polynomial>,
}

impl FrobeniusLift {
    /// Validates one image per variable against `x^p` modulo `p`.
    pub fn new(ring: &Ring, p: u64, images: Vec<Polynomial>) -> Result<FrobeniusLift> {
        if ring.domain() != CoefficientDomain::Integers {
            return Err(Error::InvalidLift("lifts of Frobenius need integer coefficients".into()));
        }
        let prime = Prime::new(p)?;
        if images.len() != ring.nvars() {
            return Err(Error::InvalidLift("one image per variable is required".into()));
        }
        let pb = prime.to_bigint();
        for (i, img) in images.iter().enumerate() {
            if !same_ring(img.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            let frob = Polynomial::var(ring, i).pow(p as u32);
            if !(img - &frob).all_coefficients_divisible_by(&pb) {
                return Err(Error::InvalidLift(format!(
                    "{} -> {img} is not congruent to {frob} mod {p}",
                    ring.vars()[i]
                )));
            }
        }
        Ok(FrobeniusLift {
            ring: ring.clone(),
            p: prime,
            images,
        })
    }

    /// The lift `x_i ↦ x_i^p`.
    pub fn standard(ring: &Ring, p: u64) -> Result<FrobeniusLift> {
        let p32 = u32::try_from(p).map_err(|_| Error::NotPrime(p))?;
        let images = (0..ring.nvars()).map(|i| Polynomial::var(ring, i).pow(p32)).collect();
        FrobeniusLift::new(ring, p, images)
    }

    /// Images by variable name; variables not mentioned get `x ↦ x^p`.
    pub fn from_map(ring: &Ring, p: u64, images: &BTreeMap<String, Polynomial>) -> Result<FrobeniusLift> {
        let p32 = u32::try_from(p).map_err(|_| Error::NotPrime(p))?;
        for name in images.keys() {
            if ring.var_index(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        let slots = ring
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| images.get(v).cloned().unwrap_or_else(|| Polynomial::var(ring, i).pow(p32)))
            .collect();
        FrobeniusLift::new(ring, p, slots)
    }

    /// Parses `x -> x^2, y -> y^2 + 2`.
    pub fn parse(ring: &Ring, p: u64, text: &str) -> Result<FrobeniusLift> {
        let mut images = BTreeMap::new();
        let mut offset = 0;
        for part in text.split(',') {
            let col = offset + 1;
            offset += part.len() + 1;
            let Some((lhs, rhs)) = part.split_once("->") else {
                return Err(Error::Parse {
                    column: col,
                    message: "expected `variable -> image`".into(),
                });
            };
            let name = lhs.trim();
            if ring.var_index(name).is_none() {
                return Err(Error::Parse {
                    column: col + lhs.len() - lhs.trim_start().len(),
                    message: format!("unknown variable `{name}`"),
                });
            }
            let rhs_col = col + lhs.len() + 2;
            let img = Polynomial::parse(ring, rhs).map_err(|e| match e {
                Error::Parse { column, message } => Error::Parse {
                    column: rhs_col + column - 1,
                    message,
                },
                other => other,
            })?;
            if images.insert(name.to_string(), img).is_some() {
                return Err(Error::Parse {
                    column: col,
                    message: format!("`{name}` given twice"),
                });
            }
        }
        FrobeniusLift::from_map(ring, p, &images)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn p(&self) -> u64 {
        self.p.get()
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// `φ(f)`: substitution of the images, fixing integer constants.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let slots: Vec<Option<Polynomial>> = self.images.iter().cloned().map(Some).collect();
        f.substitute_indexed(&slots, &self.ring)
    }
}

impl fmt::Display for FrobeniusLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ring
            .vars()
            .iter()
            .zip(&self.images)
            .map(|(v, img)| format!("{v} -> {img}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// The p-derivation attached to a lift of Frobenius.
#[derive(Clone, Debug, PartialEq)]
pub struct PDerivation {
    lift: FrobeniusLift,
}

impl PDerivation {
    /// Wraps `lift`, spot-checking the product and sum rules on a fixed
    /// sample of small polynomials.
    pub fn new(lift: FrobeniusLift) -> Result<PDerivation> {
        let d = PDerivation { lift };
        let ring = d.lift.ring.clone();
        let mut sample = vec![Polynomial::from_i64(&ring, 3), Polynomial::from_i64(&ring, -2)];
        for i in 0..ring.nvars() {
            let x = Polynomial::var(&ring, i);
            sample.push(&x + &Polynomial::from_i64(&ring, 1));
            sample.push(&x.pow(2) - &x.scale_i64(2));
        }
        let pairs: Vec<_> = sample.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        let report = verify_axioms(&d, &pairs)?;
        if !report.is_ok() {
            return Err(Error::InvalidLift("p-derivation axioms fail on the spot sample".into()));
        }
        if !d.apply(&Polynomial::one(&ring))?.is_zero() {
            return Err(Error::InvalidLift("δ(1) is not zero".into()));
        }
        Ok(d)
    }

    pub fn standard(ring: &Ring, p: u64) -> Result<PDerivation> {
        PDerivation::new(FrobeniusLift::standard(ring, p)?)
    }

    pub fn lift(&self) -> &FrobeniusLift {
        &self.lift
    }

    pub fn p(&self) -> u64 {
        self.lift.p()
    }

    /// `δ(f) = (φ(f) - f^p) / p`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        let p = self.lift.p();
        let diff = &self.lift.apply(f)? - &f.pow(p as u32);
        diff.divexact_integer(&BigInt::from(p))
    }

    /// `δ^a(f)`, with `δ^0` the identity.
    pub fn iterate(&self, a: u32, f: &Polynomial) -> Result<Polynomial> {
        let mut g = f.clone();
        for _ in 0..a {
            g = self.apply(&g)?;
        }
        Ok(g)
    }
}

/// The Fermat quotient `(m - m^p) / p`, the p-derivation of ℤ.
pub fn fermat_quotient(m: &BigInt, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let num = m - m.pow(p as u32);
    debug_assert!((&num % &pb).is_zero());
    num / pb
}

/// `C_p(f, g) = (f^p + g^p - (f + g)^p) / p`.
pub fn cp(f: &Polynomial, g: &Polynomial, p: u64) -> Polynomial {
    let mut acc = Polynomial::zero(f.ring());
    let pb = BigInt::from(p);
    for i in 1..p as u32 {
        let c = binomial(p as u32, i) / &pb;
        acc = &acc - &(&f.pow(i) * &g.pow(p as u32 - i)).scale(&f.domain().from_bigint(c));
    }
    acc
}

/// A failure of the product or sum rule on a sample pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub law: &'static str,
    pub f: String,
    pub g: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub pairs_checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `δ(fg) = f^p δ(g) + g^p δ(f) + p δ(f) δ(g)` and
/// `δ(f + g) = δ(f) + δ(g) + C_p(f, g)` on every pair.
pub fn verify_axioms(d: &PDerivation, samples: &[(Polynomial, Polynomial)]) -> Result<AxiomReport> {
    let p = d.p();
    let mut report = AxiomReport::default();
    for (f, g) in samples {
        let (df, dg) = (d.apply(f)?, d.apply(g)?);
        let prod = &(&f.pow(p as u32) * &dg) + &(&g.pow(p as u32) * &df);
        let prod = &prod + &(&df * &dg).scale_i64(p as i64);
        if d.apply(&(f * g))? != prod {
            report.violations.push(AxiomViolation {
                law: "product",
                f: f.to_string(),
                g: g.to_string(),
            });
        }
        let sum = &(&df + &dg) + &cp(f, g, p);
        if d.apply(&(f + g))? != sum {
            report.violations.push(AxiomViolation {
                law: "sum",
                f: f.to_string(),
                g: g.to_string(),
            });
        }
        report.pairs_checked += 1;
    }
    Ok(report)
}

/// Least `a ≤ n - 1` with `δ^a(f) ∉ I`, with that value.
pub fn pder_power_witness(ideal: &Ideal, n: u32, d: &PDerivation, f: &Polynomial) -> Result<Option<(u32, Polynomial)>> {
    if n == 0 {
        return Err(Error::Precondition("p-differential powers start at n = 1".into()));
    }
    let mut g = f.clone();
    for a in 0..n {
        if a > 0 {
            g = d.apply(&g)?;
        }
        if !ideal.contains(&g)? {
            return Ok(Some((a, g)));
        }
    }
    Ok(None)
}

/// Whether `δ^a(f) ∈ I` for all `a ≤ n - 1`.
pub fn pder_power_membership(ideal: &Ideal, n: u32, d: &PDerivation, f: &Polynomial) -> Result<bool> {
    Ok(pder_power_witness(ideal, n, d, f)?.is_none())
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(m: &BigInt, p: u64) -> Option<u32> {
    if m.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut m = m.clone();
    let mut v = 0;
    while m.is_multiple_of(&pb) {
        m /= &pb;
        v += 1;
    }
    Some(v)
}

/// `p^k` as a big integer.
pub fn prime_power(p: u64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..k {
        acc *= p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn zxy() -> Ring {
        PolyRing::new(CoefficientDomain::Integers, ["x", "y"]).unwrap()
    }

    fn zx() -> Ring {
        PolyRing::new(CoefficientDomain::Integers, ["x"]).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn lift_examples() {
        let r = zxy();
        let phi = FrobeniusLift::standard(&r, 2).unwrap();
        assert_eq!(phi.apply(&p(&r, "x + 2")).unwrap(), p(&r, "x^2 + 2"));
        assert_eq!(phi.apply(&p(&r, "7")).unwrap(), p(&r, "7"));
        assert_eq!(phi.to_string(), "x -> x^2, y -> y^2");
    }

    #[test]
    fn lift_validation_and_parsing() {
        let r = zxy();
        let phi = FrobeniusLift::parse(&r, 2, "x -> x^2 + 2*x, y -> y^2").unwrap();
        assert_eq!(phi.images()[0], p(&r, "x^2 + 2*x"));
        assert!(matches!(FrobeniusLift::parse(&r, 2, "x -> x^3"), Err(Error::InvalidLift(_))));
        assert!(matches!(FrobeniusLift::parse(&r, 2, "z -> z^2"), Err(Error::Parse { column: 1, .. })));
        assert!(matches!(
            FrobeniusLift::parse(&r, 2, "x -> x^2, y -> y^"),
            Err(Error::Parse { column: 18, .. })
        ));
        assert!(matches!(FrobeniusLift::standard(&r, 4), Err(Error::NotPrime(4))));
        let partial = FrobeniusLift::parse(&r, 3, "y -> y^3 + 3").unwrap();
        assert_eq!(partial.images()[0], p(&r, "x^3"));
    }

    #[test]
    fn pderivation_examples() {
        let r = zxy();
        let d = PDerivation::standard(&r, 2).unwrap();
        assert_eq!(d.apply(&p(&r, "x + 2")).unwrap(), p(&r, "-1 - 2*x"));
        assert!(d.apply(&p(&r, "x")).unwrap().is_zero());
        assert_eq!(d.apply(&p(&r, "2*x")).unwrap(), p(&r, "-x^2"));
        assert_eq!(d.iterate(0, &p(&r, "x*y + 5")).unwrap(), p(&r, "x*y + 5"));
        assert_eq!(d.iterate(2, &p(&r, "4")).unwrap(), p(&r, "-21"));
        let q = Ideal::parse(&zx(), &["2", "x"]).unwrap();
        let dx = PDerivation::standard(&zx(), 2).unwrap();
        assert!(q.contains(&dx.iterate(2, &p(&zx(), "2*x")).unwrap()).unwrap());
    }

    #[test]
    fn fermat_quotient_examples() {
        let b = |v: i64| BigInt::from(v);
        assert_eq!(fermat_quotient(&b(2), 2), b(-1));
        assert_eq!(fermat_quotient(&b(0), 5), b(0));
        assert_eq!(fermat_quotient(&b(1), 7), b(0));
        for pr in [2u64, 3, 5] {
            for n in 1..=6u32 {
                let pn = prime_power(pr, n);
                let expected = prime_power(pr, n - 1) - prime_power(pr, pr as u32 * n - 1);
                let fq = fermat_quotient(&pn, pr);
                assert_eq!(fq, expected);
                assert_eq!(valuation(&fq, pr), Some(n - 1));
            }
        }
    }

    #[test]
    fn cp_examples() {
        let r = zxy();
        assert_eq!(cp(&p(&r, "x"), &p(&r, "y"), 2), p(&r, "-x*y"));
        assert!(cp(&p(&r, "x^2 + 3"), &Polynomial::zero(&r), 5).is_zero());
        let (a, b) = (p(&r, "x + 2*y"), p(&r, "x*y - 1"));
        let direct = (&(&a.pow(3) + &b.pow(3)) - &(&a + &b).pow(3)).divexact_integer(&BigInt::from(3)).unwrap();
        assert_eq!(cp(&a, &b, 3), direct);
    }

    #[test]
    fn axioms_hold_and_sum_residual_is_cp() {
        let r = zxy();
        let d = PDerivation::new(FrobeniusLift::parse(&r, 2, "x -> x^2 + 2*y, y -> y^2").unwrap()).unwrap();
        let pairs = vec![(p(&r, "x"), p(&r, "y")), (p(&r, "x^2 - 3"), p(&r, "2*x*y + 1"))];
        assert!(verify_axioms(&d, &pairs).unwrap().is_ok());
        let residual = &d.apply(&p(&r, "x + y")).unwrap() - &(&d.apply(&p(&r, "x")).unwrap() + &d.apply(&p(&r, "y")).unwrap());
        assert_eq!(residual, cp(&p(&r, "x"), &p(&r, "y"), 2));
        assert!(d.apply(&Polynomial::one(&r)).unwrap().is_zero());
    }

    #[test]
    fn membership_examples() {
        let r = zx();
        let two = Ideal::parse(&r, &["2"]).unwrap();
        let d = PDerivation::standard(&r, 2).unwrap();
        for k in 0..5u32 {
            for n in 1..5u32 {
                let f = Polynomial::from_bigint(&r, prime_power(2, k));
                assert_eq!(pder_power_membership(&two, n, &d, &f).unwrap(), k >= n, "2^{k} at level {n}");
            }
        }
        assert!(pder_power_membership(&two, 1, &d, &p(&r, "2*x + 4")).unwrap());
        let r2 = zxy();
        let a = Ideal::parse(&r2, &["4", "x + 2", "y + 2"]).unwrap();
        let d2 = PDerivation::standard(&r2, 2).unwrap();
        let f = p(&r2, "(x + 2)*(y + 2)");
        assert!(a.pow(2).contains(&f).unwrap());
        assert!(!pder_power_membership(&a, 2, &d2, &f).unwrap());
    }
}

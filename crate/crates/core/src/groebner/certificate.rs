//! Checkable evidence that an ideal is prime.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{is_prime, CoefficientDomain, Polynomial, Scalar};

/// Largest degree accepted by the exhaustive irreducibility search.
pub const MAX_IRREDUCIBLE_DEGREE: u32 = 8;

const SEARCH_LIMIT: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeCertificate {
    /// Accepted without a check; reports flag it.
    Trusted,
    /// Generators are an optional prime `p` and polynomials `x_i - h_i` with
    /// distinct pivot variables `x_i` that occur in no `h_j`, so the quotient
    /// is a polynomial ring over ℤ, 𝔽_p or the coefficient field.
    LinearKernel,
    /// The ideal equals `(p, f)` with `f` univariate and irreducible mod `p`.
    PPlusIrreducibleUnivariate { p: u64, f: Polynomial },
    /// The ideal equals `(f)` with `f` univariate, primitive, and irreducible
    /// over ℚ (witnessed by irreducibility modulo a small prime).
    PrincipalIrreducibleOverQ { f: Polynomial },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Trusted,
    Linear,
    PIrreducible,
    PrincipalIrreducible,
}

impl CertificateKind {
    pub fn parse(s: &str) -> Option<CertificateKind> {
        match s {
            "trusted" => Some(CertificateKind::Trusted),
            "linear" => Some(CertificateKind::Linear),
            "p-irreducible" => Some(CertificateKind::PIrreducible),
            "principal-irreducible" => Some(CertificateKind::PrincipalIrreducible),
            _ => None,
        }
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::Trusted => "trusted",
            CertificateKind::Linear => "linear",
            CertificateKind::PIrreducible => "p-irreducible",
            CertificateKind::PrincipalIrreducible => "principal-irreducible",
        })
    }
}

impl PrimeCertificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            PrimeCertificate::Trusted => CertificateKind::Trusted,
            PrimeCertificate::LinearKernel => CertificateKind::Linear,
            PrimeCertificate::PPlusIrreducibleUnivariate { .. } => CertificateKind::PIrreducible,
            PrimeCertificate::PrincipalIrreducibleOverQ { .. } => CertificateKind::PrincipalIrreducible,
        }
    }

    pub fn is_trusted(&self) -> bool {
        matches!(self, PrimeCertificate::Trusted)
    }

    /// Builds a certificate of the given kind from the generators of `q`.
    pub fn from_generators(kind: CertificateKind, q: &Ideal) -> Result<PrimeCertificate> {
        match kind {
            CertificateKind::Trusted => Ok(PrimeCertificate::Trusted),
            CertificateKind::Linear => Ok(PrimeCertificate::LinearKernel),
            CertificateKind::PIrreducible => {
                let gens = q.generators();
                let p = gens.iter().find_map(|g| g.constant_value());
                let rest: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_constant()).collect();
                match (p, rest.as_slice()) {
                    (Some(Scalar::Int(p)), [f]) if gens.len() == 2 => {
                        let p = p.abs().to_u64().ok_or_else(|| malformed("prime too large"))?;
                        Ok(PrimeCertificate::PPlusIrreducibleUnivariate { p, f: (*f).clone() })
                    }
                    _ => Err(malformed("expected generators p, f")),
                }
            }
            CertificateKind::PrincipalIrreducible => match q.generators() {
                [f] => Ok(PrimeCertificate::PrincipalIrreducibleOverQ { f: f.clone() }),
                _ => Err(malformed("expected a single generator")),
            },
        }
    }

    /// Whether the certificate proves `q` prime. Trusted always passes.
    pub fn check(&self, q: &Ideal) -> Result<bool> {
        match self {
            PrimeCertificate::Trusted => Ok(true),
            PrimeCertificate::LinearKernel => check_linear(q),
            PrimeCertificate::PPlusIrreducibleUnivariate { p, f } => {
                if q.ring().domain() != CoefficientDomain::Integers {
                    return Err(malformed("p plus irreducible needs integer coefficients"));
                }
                if !is_prime(*p) {
                    return Err(malformed(&format!("{p} is not prime")));
                }
                let coeffs = univariate_coefficients(f)?;
                let reduced = reduce_mod(&coeffs, *p);
                if reduced.len() < 2 {
                    return Ok(false);
                }
                if !irreducible_mod_p(&reduced, *p)? {
                    return Ok(false);
                }
                let claimed = Ideal::new(q.ring(), [Polynomial::from_i64(q.ring(), *p as i64), f.clone()])?;
                q.ideal_eq(&claimed)
            }
            PrimeCertificate::PrincipalIrreducibleOverQ { f } => {
                let coeffs = match q.ring().domain() {
                    CoefficientDomain::Integers => {
                        let c = univariate_coefficients(f)?;
                        let content = c.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
                        if !content.is_one() {
                            return Ok(false);
                        }
                        c
                    }
                    CoefficientDomain::Rationals => cleared_denominators(f)?,
                    CoefficientDomain::PrimeField(_) => {
                        return Err(malformed("principal irreducible needs ℤ or ℚ coefficients"))
                    }
                };
                if coeffs.len() < 2 || !irreducible_over_q(&coeffs)? {
                    return Ok(false);
                }
                q.ideal_eq(&Ideal::principal(f))
            }
        }
    }
}

fn malformed(msg: &str) -> Error {
    Error::MalformedCertificate(msg.to_string())
}

/// Coefficients low to high of a polynomial in at most one variable.
fn univariate_coefficients(f: &Polynomial) -> Result<Vec<BigInt>> {
    let vars = f.support_vars();
    if vars.len() > 1 {
        return Err(malformed("polynomial is not univariate"));
    }
    let deg = f.degree().unwrap_or(0) as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for t in f.terms() {
        let c = t.coeff.as_int().ok_or_else(|| malformed("non-integer coefficient"))?;
        out[t.exp.total_degree() as usize] = c.clone();
    }
    Ok(out)
}

fn cleared_denominators(f: &Polynomial) -> Result<Vec<BigInt>> {
    let vars = f.support_vars();
    if vars.len() > 1 {
        return Err(malformed("polynomial is not univariate"));
    }
    let deg = f.degree().unwrap_or(0) as usize;
    let rats: Vec<_> = f.terms().iter().map(|t| (t.exp.total_degree() as usize, t.coeff.to_rational())).collect();
    let den = rats.iter().fold(BigInt::one(), |a, (_, r)| a.lcm(r.denom()));
    let mut out = vec![BigInt::zero(); deg + 1];
    for (d, r) in rats {
        out[d] = r.numer() * (&den / r.denom());
    }
    let content = out.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    if !content.is_zero() {
        for c in &mut out {
            *c = &*c / &content;
        }
    }
    Ok(out)
}

/// Reduces coefficients mod `p` and strips leading zeros.
fn reduce_mod(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let lead_inv = pow_mod(*b.last().unwrap(), p - 2, p);
    while r.len() >= b.len() {
        let c = r.last().unwrap() * lead_inv % p;
        let shift = r.len() - b.len();
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Exhaustive search for a monic factor of degree at most half of `f`.
fn irreducible_mod_p(f: &[u64], p: u64) -> Result<bool> {
    let deg = f.len() - 1;
    if deg as u32 > MAX_IRREDUCIBLE_DEGREE {
        return Err(malformed(&format!("degree {deg} exceeds {MAX_IRREDUCIBLE_DEGREE}")));
    }
    if p > u32::MAX as u64 {
        return Err(Error::Unsupported("primes above 2^32 in irreducibility search"));
    }
    let mut work = 0u64;
    for d in 1..=deg / 2 {
        let count = p.checked_pow(d as u32).filter(|c| work + c <= SEARCH_LIMIT);
        let count = count.ok_or(Error::Unsupported("irreducibility search too large"))?;
        work += count;
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                g.push(k % p);
                k /= p;
            }
            g.push(1);
            if rem_mod_p(f, &g, p).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Irreducible mod some prime not dividing the leading coefficient implies
/// irreducible over ℚ for a primitive polynomial.
fn irreducible_over_q(coeffs: &[BigInt]) -> Result<bool> {
    let lead = coeffs.last().unwrap();
    if coeffs.len() == 2 {
        return Ok(true);
    }
    for q in (2u64..200).filter(|&q| is_prime(q)) {
        if (lead % BigInt::from(q)).is_zero() {
            continue;
        }
        let reduced = reduce_mod(coeffs, q);
        match irreducible_mod_p(&reduced, q) {
            Ok(true) => return Ok(true),
            Ok(false) => continue,
            Err(Error::Unsupported(_)) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(false)
}

fn check_linear(q: &Ideal) -> Result<bool> {
    let ring = q.ring();
    let domain = ring.domain();
    let mut rest = Vec::new();
    let mut has_constant = false;
    for g in q.generators() {
        match g.constant_value() {
            Some(c) => {
                let ok = match (&c, domain) {
                    (Scalar::Int(v), CoefficientDomain::Integers) => v.abs().to_u64().map(is_prime).unwrap_or(false),
                    _ => false,
                };
                if !ok || has_constant {
                    return Ok(false);
                }
                has_constant = true;
            }
            None => rest.push(g),
        }
    }
    // For each generator, the variables it could be solved for.
    let candidates: Vec<Vec<usize>> = rest
        .iter()
        .map(|g| {
            g.support_vars()
                .into_iter()
                .filter(|&v| {
                    g.terms().iter().all(|t| t.exp.get(v) == 0 || (t.exp.total_degree() == 1 && pivot_unit(domain, &t.coeff)))
                })
                .collect()
        })
        .collect();
    let mut chosen = vec![usize::MAX; rest.len()];
    Ok(assign_pivots(&rest, &candidates, 0, &mut chosen))
}

fn pivot_unit(domain: CoefficientDomain, c: &Scalar) -> bool {
    if domain.is_field() {
        !c.is_zero()
    } else {
        c.as_int().map(|v| v.abs().is_one()).unwrap_or(false)
    }
}

fn assign_pivots(gens: &[&Polynomial], candidates: &[Vec<usize>], i: usize, chosen: &mut Vec<usize>) -> bool {
    if i == gens.len() {
        return gens.iter().enumerate().all(|(k, g)| {
            g.support_vars().iter().all(|v| *v == chosen[k] || !chosen.contains(v))
        });
    }
    for &v in &candidates[i] {
        if chosen[..i].contains(&v) {
            continue;
        }
        chosen[i] = v;
        if assign_pivots(gens, candidates, i + 1, chosen) {
            return true;
        }
    }
    chosen[i] = usize::MAX;
    false
}

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::domain::{CoefficientDomain, Scalar};
use crate::poly::monomial::{ExponentVector, MonomialOrder};
use crate::poly::ring::{same_ring, Ring};

/// Order in which terms are stored.
pub const CANONICAL_ORDER: MonomialOrder = MonomialOrder::GradedRevLex;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Scalar,
    pub exp: ExponentVector,
}

/// Sparse polynomial in canonical form: nonzero coefficients, exponents
/// strictly decreasing in graded reverse lexicographic order.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        let c = ring.domain().normalize(c).expect("constant outside the coefficient domain");
        Self::monomial(ring, c, ExponentVector::zero(ring.nvars()))
    }

    pub fn from_i64(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, Scalar::from_i64(c))
    }

    pub fn from_bigint(ring: &Ring, c: BigInt) -> Self {
        Self::constant(ring, Scalar::Int(c))
    }

    /// `c * x^exp`; `c` must already be a canonical element of the domain.
    pub fn monomial(ring: &Ring, c: Scalar, exp: ExponentVector) -> Self {
        assert_eq!(exp.len(), ring.nvars(), "exponent vector length");
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![Term { coeff: c, exp }]
        };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Scalar::one(), ExponentVector::unit(ring.nvars(), i))
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    /// Builds a polynomial from arbitrary terms: coefficients are normalized
    /// into the domain, like exponents merged and zeros dropped.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Scalar, ExponentVector)>) -> Result<Self> {
        let domain = ring.domain();
        let mut acc: HashMap<ExponentVector, Scalar> = HashMap::new();
        for (c, e) in terms {
            if e.len() != ring.nvars() {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    e.len(),
                    ring.nvars()
                )));
            }
            let c = domain.normalize(c)?;
            match acc.get_mut(&e) {
                Some(v) => *v = domain.add(v, &c),
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Ok(Self::from_map(ring, acc))
    }

    fn from_map(ring: &Ring, acc: HashMap<ExponentVector, Scalar>) -> Self {
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exp, coeff)| Term { coeff, exp })
            .collect();
        terms.sort_by(|a, b| CANONICAL_ORDER.cmp(&b.exp, &a.exp));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Terms already in canonical order with canonical coefficients.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| CANONICAL_ORDER.cmp(&w[0].exp, &w[1].exp) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.ring.domain()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].exp.is_constant() && self.terms[0].coeff.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.exp.is_constant())
    }

    /// The constant value when the polynomial has no variable terms.
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [t] if t.exp.is_constant() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.exp.total_degree())
    }

    /// Largest exponent of variable `i` occurring in the polynomial.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|t| t.exp.get(i)).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn coefficient(&self, exp: &ExponentVector) -> Scalar {
        self.terms
            .iter()
            .find(|t| &t.exp == exp)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Indices of variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|t| t.exp.get(i) > 0))
            .collect()
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let domain = self.domain();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let conv = |c: &Scalar| if negate_other { domain.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match CANONICAL_ORDER.cmp(&a.exp, &b.exp) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: conv(&b.coeff),
                        exp: b.exp.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        domain.sub(&a.coeff, &b.coeff)
                    } else {
                        domain.add(&a.coeff, &b.coeff)
                    };
                    if !c.is_zero() {
                        out.push(Term { coeff: c, exp: a.exp.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|t| Term {
            coeff: conv(&t.coeff),
            exp: t.exp.clone(),
        }));
        Polynomial::from_sorted(&self.ring, out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            return Ok(self.mul_term(&other.terms[0].coeff, &other.terms[0].exp));
        }
        if self.terms.len() == 1 {
            return Ok(other.mul_term(&self.terms[0].coeff, &self.terms[0].exp));
        }
        let domain = self.domain();
        let mut acc: HashMap<ExponentVector, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let e = a.exp.mul(&b.exp);
                let c = a.coeff.mul(&b.coeff);
                match acc.get_mut(&e) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        if domain.characteristic() != 0 {
            for v in acc.values_mut() {
                *v = domain.normalize(std::mem::replace(v, Scalar::zero())).expect("field element");
            }
        }
        Ok(Polynomial::from_map(&self.ring, acc))
    }

    /// `c * x^exp * self`.
    pub fn mul_term(&self, c: &Scalar, exp: &ExponentVector) -> Polynomial {
        let domain = self.domain();
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: domain.mul(&t.coeff, c),
                exp: t.exp.mul(exp),
            })
            .filter(|t| !t.coeff.is_zero())
            .collect();
        // Multiplication by a monomial preserves the order.
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        self.mul_term(c, &ExponentVector::zero(self.ring.nvars()))
    }

    pub fn scale_i64(&self, c: i64) -> Polynomial {
        self.scale(&self.domain().from_i64(c))
    }

    pub fn neg(&self) -> Polynomial {
        let domain = self.domain();
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: domain.neg(&t.coeff),
                exp: t.exp.clone(),
            })
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// `self^k` by repeated squaring; `self^0 = 1`.
    pub fn pow(&self, k: u32) -> Polynomial {
        if k == 0 {
            return Polynomial::one(&self.ring);
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            let mut c = Scalar::one();
            for _ in 0..k {
                c = self.domain().mul(&c, &t.coeff);
            }
            return Polynomial::monomial(&self.ring, c, t.exp.scale(k));
        }
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Ring-homomorphism evaluation sending variable `i` to `images[i]`.
    ///
    /// All images must live in one ring over the same coefficient domain; it
    /// may differ from the source ring. Variables that do not occur in `self`
    /// may have no image.
    pub fn substitute_indexed(&self, images: &[Option<Polynomial>], target: &Ring) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Dimension("one image slot per variable is required".into()));
        }
        if target.domain() != self.domain() {
            return Err(Error::RingMismatch);
        }
        for img in images.iter().flatten() {
            if !same_ring(img.ring(), target) {
                return Err(Error::RingMismatch);
            }
        }
        for i in self.support_vars() {
            if images[i].is_none() {
                return Err(Error::MissingImage(self.ring.vars()[i].clone()));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); images.len()];
        let mut result = Polynomial::zero(target);
        for t in &self.terms {
            let mut prod = Polynomial::constant(target, t.coeff.clone());
            for (i, &e) in t.exp.as_slice().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i].as_ref().expect("checked above");
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Polynomial::one(target));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * img;
                    cache.push(next);
                }
                prod = &prod * &cache[e as usize];
            }
            result = &result + &prod;
        }
        Ok(result)
    }

    /// Substitution by variable name; see [`Polynomial::substitute_indexed`].
    pub fn substitute(&self, images: &BTreeMap<String, Polynomial>) -> Result<Polynomial> {
        for name in images.keys() {
            if self.ring.var_index(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        let target = match images.values().next() {
            Some(p) => p.ring().clone(),
            None => self.ring.clone(),
        };
        let slots: Vec<Option<Polynomial>> = self.ring.vars().iter().map(|v| images.get(v).cloned()).collect();
        self.substitute_indexed(&slots, &target)
    }

    /// Exact division of every coefficient by the integer `m` (ℤ only).
    pub fn divexact_integer(&self, m: &BigInt) -> Result<Polynomial> {
        if self.domain() != CoefficientDomain::Integers {
            return Err(Error::Unsupported("integer coefficients"));
        }
        if m.is_zero() {
            return Err(Error::InexactDivision);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = t.coeff.as_int().expect("integer coefficient");
            let (q, r) = c.div_rem(m);
            if !r.is_zero() {
                return Err(Error::NotDivisible {
                    coefficient: c.to_string(),
                    divisor: m.to_string(),
                });
            }
            terms.push(Term {
                coeff: Scalar::Int(q),
                exp: t.exp.clone(),
            });
        }
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    /// Exact quotient `self / g`; fails when `g` does not divide `self`.
    pub fn div_exact(&self, g: &Polynomial) -> Result<Polynomial> {
        self.check(g)?;
        let lead = g.leading_term().ok_or(Error::InexactDivision)?;
        let domain = self.domain();
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some(t) = rem.leading_term() {
            let exp = t.exp.checked_div(&lead.exp).ok_or(Error::InexactDivision)?;
            let coeff = domain
                .div_exact(&t.coeff, &lead.coeff)
                .map_err(|_| Error::InexactDivision)?;
            rem = &rem - &g.mul_term(&coeff, &exp);
            quotient.push(Term { coeff, exp });
        }
        Ok(Polynomial::from_sorted(&self.ring, quotient))
    }

    /// Gcd of the integer coefficients (ℤ only; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .filter_map(|t| t.coeff.as_int())
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Whether every integer coefficient is divisible by `m` (ℤ only).
    pub fn all_coefficients_divisible_by(&self, m: &BigInt) -> bool {
        self.terms
            .iter()
            .all(|t| t.coeff.as_int().map(|c| (c % m).is_zero()).unwrap_or(false))
    }

    /// Image under a change of coefficient domain (e.g. reduction mod p).
    pub fn change_ring(&self, ring: &Ring) -> Result<Polynomial> {
        if ring.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        Polynomial::from_terms(ring, self.terms.iter().map(|t| (t.coeff.clone(), t.exp.clone())))
    }

    /// Moves the polynomial into `ring`, sending variable `i` to `var_map[i]`.
    pub fn embed(&self, ring: &Ring, var_map: &[usize]) -> Result<Polynomial> {
        if var_map.len() != self.ring.nvars() || var_map.iter().any(|&j| j >= ring.nvars()) {
            return Err(Error::Dimension("variable map does not fit the target ring".into()));
        }
        Polynomial::from_terms(
            ring,
            self.terms.iter().map(|t| {
                let mut e = vec![0u32; ring.nvars()];
                for (i, &j) in var_map.iter().enumerate() {
                    e[j] += t.exp.get(i);
                }
                (t.coeff.clone(), ExponentVector::new(e))
            }),
        )
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = if neg { t.coeff.neg() } else { t.coeff.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || t.exp.is_constant() {
                factors.push(abs.to_string());
            }
            for (i, &e) in t.exp.as_slice().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars()[i], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Binomial coefficient as a big integer (0 when `k > n`).
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

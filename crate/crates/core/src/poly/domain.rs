//! Coefficient domains: the integers, the rationals, and prime fields.
//!
//! Every coefficient is a [`Scalar`], an exact rational number that is kept in
//! its integer form whenever the denominator is one. The domain decides which
//! scalars are legal (integers only for ℤ, residues in `[0, p)` for 𝔽_p) and
//! performs the arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// An exact rational number with an integer fast path.
///
/// Invariant: the `Frac` variant always has a denominator greater than one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Frac(BigRational),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Int(BigInt::zero())
    }

    pub fn one() -> Self {
        Scalar::Int(BigInt::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Scalar::Int(BigInt::from(v))
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.denom().is_one() {
            Scalar::Int(r.numer().clone())
        } else {
            Scalar::Frac(r)
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Int(v) if v.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Int(v) if v.is_one())
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_negative(),
            Scalar::Frac(r) => r.is_negative(),
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(v) => Some(v),
            Scalar::Frac(_) => None,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Int(v) => BigRational::from_integer(v.clone()),
            Scalar::Frac(r) => r.clone(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Int(v) => Scalar::Int(-v),
            Scalar::Frac(r) => Scalar::Frac(-r),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            _ => Scalar::from_rational(self.to_rational() + other.to_rational()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a - b),
            _ => Scalar::from_rational(self.to_rational() - other.to_rational()),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            _ => Scalar::from_rational(self.to_rational() * other.to_rational()),
        }
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::Int(v)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_i64(v)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Frac(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// A verified prime number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientDomain {
    Integers,
    Rationals,
    PrimeField(Prime),
}

impl CoefficientDomain {
    pub fn prime_field(p: u64) -> Result<Self> {
        Ok(CoefficientDomain::PrimeField(Prime::new(p)?))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientDomain::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientDomain::PrimeField(p) => p.get(),
            _ => 0,
        }
    }

    /// Brings an arbitrary rational into canonical form for this domain.
    ///
    /// Fails for a proper fraction over ℤ, or a fraction whose denominator is
    /// divisible by `p` over 𝔽_p.
    pub fn normalize(&self, s: Scalar) -> Result<Scalar> {
        match self {
            CoefficientDomain::Integers => match s {
                Scalar::Int(_) => Ok(s),
                Scalar::Frac(r) => Err(Error::NotDivisible {
                    coefficient: r.numer().to_string(),
                    divisor: r.denom().to_string(),
                }),
            },
            CoefficientDomain::Rationals => Ok(s),
            CoefficientDomain::PrimeField(p) => {
                let p = p.to_bigint();
                match s {
                    Scalar::Int(v) => Ok(Scalar::Int(v.mod_floor(&p))),
                    Scalar::Frac(r) => {
                        let den = r.denom().mod_floor(&p);
                        let inv = mod_inverse(&den, &p).ok_or_else(|| Error::NotDivisible {
                            coefficient: r.numer().to_string(),
                            divisor: r.denom().to_string(),
                        })?;
                        Ok(Scalar::Int((r.numer() * inv).mod_floor(&p)))
                    }
                }
            }
        }
    }

    fn reduce(&self, s: Scalar) -> Scalar {
        match self {
            CoefficientDomain::PrimeField(p) => match s {
                Scalar::Int(v) => Scalar::Int(v.mod_floor(&p.to_bigint())),
                other => self.normalize(other).expect("field element"),
            },
            _ => s,
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.reduce(Scalar::from_i64(v))
    }

    pub fn from_bigint(&self, v: BigInt) -> Scalar {
        self.reduce(Scalar::Int(v))
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a.add(b))
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a.sub(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a.mul(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(a.neg())
    }

    /// Multiplicative inverse in a field; `None` for zero or over ℤ.
    pub fn inverse(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            CoefficientDomain::Integers => {
                let v = a.as_int()?;
                if v.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            CoefficientDomain::Rationals => Some(Scalar::from_rational(a.to_rational().recip())),
            CoefficientDomain::PrimeField(p) => {
                let p = p.to_bigint();
                mod_inverse(a.as_int()?, &p).map(Scalar::Int)
            }
        }
    }

    /// Exact quotient `a / b`; over ℤ this fails unless `b | a`.
    pub fn div_exact(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        match self {
            CoefficientDomain::Integers => {
                let (x, y) = (a.as_int().expect("integer"), b.as_int().expect("integer"));
                if y.is_zero() {
                    return Err(Error::InexactDivision);
                }
                let (q, r) = x.div_rem(y);
                if r.is_zero() {
                    Ok(Scalar::Int(q))
                } else {
                    Err(Error::NotDivisible {
                        coefficient: x.to_string(),
                        divisor: y.to_string(),
                    })
                }
            }
            _ => {
                let inv = self.inverse(b).ok_or(Error::InexactDivision)?;
                Ok(self.mul(a, &inv))
            }
        }
    }

    /// Whether `b` divides `a` in this domain.
    pub fn divides(&self, b: &Scalar, a: &Scalar) -> bool {
        match self {
            CoefficientDomain::Integers => {
                let (x, y) = (a.as_int().expect("integer"), b.as_int().expect("integer"));
                if y.is_zero() {
                    x.is_zero()
                } else {
                    (x % y).is_zero()
                }
            }
            _ => !b.is_zero() || a.is_zero(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            CoefficientDomain::Integers => "Z".to_string(),
            CoefficientDomain::Rationals => "Q".to_string(),
            CoefficientDomain::PrimeField(p) => format!("GF({p})"),
        }
    }
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

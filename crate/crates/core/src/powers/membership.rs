use serde::Serialize;

use crate::diffops::{all_vars, apply_d, multi_indices};
use crate::error::{Error, Result};
use crate::groebner::{Ideal, PrimeCertificate};
use crate::pderiv::PDerivation;
use crate::poly::{same_ring, ExponentVector, Polynomial};

/// Membership in the symbolic power `Q^(n)` of a prime `Q`, decided by
/// `f ∈ Q^(n)` iff `(Q^n : f) ⊄ Q`. The power is computed once.
#[derive(Clone, Debug)]
pub struct SymbolicPower {
    prime: Ideal,
    power: Ideal,
    n: u32,
}

impl SymbolicPower {
    pub fn new(prime: &Ideal, n: u32) -> Result<SymbolicPower> {
        SymbolicPower::modulo(prime, &Ideal::zero(prime.ring()), n)
    }

    /// The symbolic power of `Q / relations` in the quotient ring, pulled
    /// back: `f` is a member iff `((Q^n + relations) : f) ⊄ Q`.
    pub fn modulo(prime: &Ideal, relations: &Ideal, n: u32) -> Result<SymbolicPower> {
        if n == 0 {
            return Err(Error::Precondition("symbolic powers start at n = 1".into()));
        }
        if !prime.contains_ideal(relations)? {
            return Err(Error::Precondition("relations are not contained in the prime".into()));
        }
        let power = prime.pow(n).sum(relations)?;
        power.basis()?;
        prime.basis()?;
        Ok(SymbolicPower {
            prime: prime.clone(),
            power,
            n,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The ideal `Q^n` (plus relations) whose colon ideals are examined.
    pub fn power(&self) -> &Ideal {
        &self.power
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        if !self.prime.contains(f)? {
            return Ok(false);
        }
        if self.power.contains(f)? {
            return Ok(true);
        }
        let colon = self.power.colon(f)?;
        Ok(!self.prime.contains_ideal(&colon)?)
    }
}

/// Whether `f ∈ Q^(n)`.
pub fn symbolic_membership(q: &Ideal, n: u32, f: &Polynomial) -> Result<bool> {
    SymbolicPower::new(q, n)?.contains(f)
}

/// Whether the class of `f` lies in the `n`-th symbolic power of
/// `Q / relations`.
pub fn symbolic_membership_quotient(q: &Ideal, relations: &Ideal, n: u32, f: &Polynomial) -> Result<bool> {
    SymbolicPower::modulo(q, relations, n)?.contains(f)
}

/// A failing composition `δ^s ∘ D_α` and the value it produced.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedWitness {
    pub s: u32,
    pub alpha: ExponentVector,
    pub value: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Composition {
    pub s: u32,
    pub alpha: Vec<u32>,
}

impl MixedWitness {
    pub fn composition(&self) -> Composition {
        Composition {
            s: self.s,
            alpha: self.alpha.as_slice().to_vec(),
        }
    }
}

/// First `(s, α)` with `s + |α| ≤ n - 1`, `α` supported on `scope`, and
/// `δ^s(D_α(f)) ∉ Q`; compositions are tried by increasing `|α|`, then `s`.
pub fn mixed_power_witness(
    q: &Ideal,
    n: u32,
    d: &PDerivation,
    f: &Polynomial,
    scope: &[usize],
) -> Result<Option<MixedWitness>> {
    if n == 0 {
        return Err(Error::Precondition("mixed powers start at n = 1".into()));
    }
    if !same_ring(d.lift().ring(), q.ring()) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(None);
    }
    for alpha in multi_indices(q.ring().nvars(), scope, n - 1) {
        let mut g = apply_d(&alpha, f);
        for s in 0..n - alpha.total_degree() {
            if s > 0 {
                g = d.apply(&g)?;
            }
            if !q.contains(&g)? {
                return Ok(Some(MixedWitness { s, alpha, value: g }));
            }
        }
    }
    Ok(None)
}

/// Everything that pins down one membership question about a prime `Q`.
#[derive(Clone, Debug)]
pub struct PowerQuery {
    ideal: Ideal,
    certificate: PrimeCertificate,
    n: u32,
    p: Option<u64>,
    derivation: Option<PDerivation>,
    diff_vars: Vec<usize>,
    degree_bound: Option<u32>,
}

impl PowerQuery {
    /// Fails unless the certificate validates.
    pub fn new(ideal: Ideal, certificate: PrimeCertificate, n: u32) -> Result<PowerQuery> {
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        if !certificate.check(&ideal)? {
            return Err(Error::Precondition(format!(
                "{} certificate does not validate for {ideal}",
                certificate.kind()
            )));
        }
        let diff_vars = all_vars(ideal.ring());
        Ok(PowerQuery {
            ideal,
            certificate,
            n,
            p: None,
            derivation: None,
            diff_vars,
            degree_bound: None,
        })
    }

    /// Records the residue characteristic; `p` must lie in the ideal.
    pub fn with_prime(mut self, p: u64) -> Result<PowerQuery> {
        let pp = Polynomial::from_i64(self.ideal.ring(), p as i64);
        if !self.ideal.contains(&pp)? {
            return Err(Error::Precondition(format!("{p} is not in {}", self.ideal)));
        }
        if let Some(d) = &self.derivation {
            if d.p() != p {
                return Err(Error::Precondition("derivation prime differs from p".into()));
            }
        }
        self.p = Some(p);
        Ok(self)
    }

    /// Attaches a p-derivation, setting `p` from it when unset.
    pub fn with_derivation(mut self, d: PDerivation) -> Result<PowerQuery> {
        if !same_ring(d.lift().ring(), self.ideal.ring()) {
            return Err(Error::RingMismatch);
        }
        let p = d.p();
        self.derivation = Some(d);
        if self.p != Some(p) {
            self = self.with_prime(p)?;
        }
        Ok(self)
    }

    /// Restricts differentiation to the given variables; the others act as
    /// constants of the base ring.
    pub fn with_diff_vars(mut self, vars: Vec<usize>) -> Result<PowerQuery> {
        for (k, &v) in vars.iter().enumerate() {
            if v >= self.ideal.ring().nvars() || vars[..k].contains(&v) {
                return Err(Error::InvalidVariables(format!("bad differential variable index {v}")));
            }
        }
        self.diff_vars = vars;
        Ok(self)
    }

    pub fn with_degree_bound(mut self, d: u32) -> PowerQuery {
        self.degree_bound = Some(d);
        self
    }

    pub fn with_n(mut self, n: u32) -> Result<PowerQuery> {
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        self.n = n;
        Ok(self)
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn certificate(&self) -> &PrimeCertificate {
        &self.certificate
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> Option<u64> {
        self.p
    }

    pub fn derivation(&self) -> Option<&PDerivation> {
        self.derivation.as_ref()
    }

    pub fn diff_vars(&self) -> &[usize] {
        &self.diff_vars
    }

    pub fn degree_bound(&self) -> Option<u32> {
        self.degree_bound
    }

    fn need_derivation(&self) -> Result<&PDerivation> {
        self.derivation
            .as_ref()
            .ok_or_else(|| Error::Precondition("a Frobenius lift is required".into()))
    }

    pub fn symbolic(&self, f: &Polynomial) -> Result<bool> {
        symbolic_membership(&self.ideal, self.n, f)
    }

    pub fn diff_witness(&self, f: &Polynomial) -> Result<Option<ExponentVector>> {
        crate::diffops::diff_power_witness(&self.ideal, self.n, f, &self.diff_vars)
    }

    pub fn pder_witness(&self, f: &Polynomial) -> Result<Option<(u32, Polynomial)>> {
        crate::pderiv::pder_power_witness(&self.ideal, self.n, self.need_derivation()?, f)
    }

    pub fn mixed_witness(&self, f: &Polynomial) -> Result<Option<MixedWitness>> {
        mixed_power_witness(&self.ideal, self.n, self.need_derivation()?, f, &self.diff_vars)
    }
}

/// Whether `f` lies in the mixed differential power `Q⟨n⟩_mix`.
pub fn mixed_power_membership(query: &PowerQuery, f: &Polynomial) -> Result<bool> {
    Ok(query.mixed_witness(f)?.is_none())
}

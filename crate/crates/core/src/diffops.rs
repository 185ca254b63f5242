//! Divided-power differential operators `D_α`, acting by
//! `D_α(z^β) = binom(β, α) z^(β-α)`, and the differential powers of ideals
//! they define.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::lattice::{preimage_lattice, truncated_ideal_lattice, LinearMap, TruncatedLattice};
use crate::poly::{binomial, same_ring, ExponentVector, Polynomial, Ring, Scalar};

/// `D_α(f)`, computed termwise; integral because the binomials are.
pub fn apply_d(alpha: &ExponentVector, f: &Polynomial) -> Polynomial {
    let ring = f.ring();
    let domain = ring.domain();
    assert_eq!(alpha.len(), ring.nvars(), "multi-index length must match the ring");
    let terms = f.terms().iter().filter_map(|t| {
        let rest = t.exp.checked_div(alpha)?;
        let mut b = BigInt::one();
        for (&bi, &ai) in t.exp.as_slice().iter().zip(alpha.as_slice()) {
            if ai > 0 {
                b *= binomial(bi, ai);
            }
        }
        Some((domain.mul(&t.coeff, &domain.from_bigint(b)), rest))
    });
    Polynomial::from_terms(ring, terms).expect("coefficients stay in the domain")
}

/// A finite sum `Σ c_γ · D_(α_γ)` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperator {
    ring: Ring,
    terms: Vec<(Polynomial, ExponentVector)>,
}

impl DiffOperator {
    pub fn zero(ring: &Ring) -> Self {
        DiffOperator {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    /// The single operator `c · D_α`.
    pub fn term(c: Polynomial, alpha: ExponentVector) -> Self {
        let ring = c.ring().clone();
        DiffOperator::zero(&ring).plus(c, alpha)
    }

    /// Adds `c · D_α`, merging with an existing `D_α` term.
    pub fn plus(mut self, c: Polynomial, alpha: ExponentVector) -> Self {
        assert!(same_ring(c.ring(), &self.ring), "coefficient from another ring");
        match self.terms.iter().position(|(_, a)| *a == alpha) {
            Some(i) => {
                let sum = &self.terms[i].0 + &c;
                if sum.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].0 = sum;
                }
            }
            None if !c.is_zero() => self.terms.push((c, alpha)),
            None => {}
        }
        self
    }

    pub fn terms(&self) -> &[(Polynomial, ExponentVector)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `|α|` among the terms; `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|(_, a)| a.total_degree()).max()
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut acc = Polynomial::zero(&self.ring);
        for (c, alpha) in &self.terms {
            acc = &acc + &(c * &apply_d(alpha, f));
        }
        Ok(acc)
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, a)| format!("({c})*D{:?}", a.as_slice()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// All multi-indices `λ ≤ α` componentwise.
fn sub_indices(alpha: &ExponentVector) -> Vec<ExponentVector> {
    let mut out = vec![Vec::new()];
    for &a in alpha.as_slice() {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=a).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(ExponentVector::new).collect()
}

/// `Σ_{λ+μ=α} D_λ(f)·D_μ(g)`, checked against `D_α(f·g)`.
pub fn leibniz_expand(alpha: &ExponentVector, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let mut acc = Polynomial::zero(f.ring());
    for lambda in sub_indices(alpha) {
        let mu = alpha.checked_div(&lambda).expect("λ ≤ α");
        acc = &acc + &(&apply_d(&lambda, f) * &apply_d(&mu, g));
    }
    assert_eq!(acc, apply_d(alpha, &(f * g)), "divided-power Leibniz rule failed");
    acc
}

/// The operator `[D_α, g] = Σ_{0<λ≤α} D_λ(g)·D_(α-λ)`.
pub fn commutator(alpha: &ExponentVector, g: &Polynomial) -> DiffOperator {
    let mut op = DiffOperator::zero(g.ring());
    for lambda in sub_indices(alpha) {
        if lambda.is_constant() {
            continue;
        }
        let rest = alpha.checked_div(&lambda).expect("λ ≤ α");
        op = op.plus(apply_d(&lambda, g), rest);
    }
    op
}

/// Multi-indices supported on `scope` with `|α| ≤ max_order`, in order of
/// increasing `|α|`.
pub fn multi_indices(nvars: usize, scope: &[usize], max_order: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    for local in ExponentVector::all_up_to_degree(scope.len(), max_order) {
        let mut e = vec![0u32; nvars];
        for (k, &v) in scope.iter().enumerate() {
            e[v] = local.get(k);
        }
        out.push(ExponentVector::new(e));
    }
    out.sort_by_key(|a| a.total_degree());
    out
}

/// Indices of all variables of `ring`.
pub fn all_vars(ring: &Ring) -> Vec<usize> {
    (0..ring.nvars()).collect()
}

fn check_scope(ring: &Ring, scope: &[usize]) -> Result<()> {
    for (k, &v) in scope.iter().enumerate() {
        if v >= ring.nvars() || scope[..k].contains(&v) {
            return Err(Error::InvalidVariables(format!("bad differential variable index {v}")));
        }
    }
    Ok(())
}

/// First `α` (by increasing order) with `|α| ≤ n - 1`, supported on
/// `scope`, and `D_α(f) ∉ I`; `None` when `f` lies in the differential
/// power `I⟨n⟩` taken relative to the variables outside `scope`.
pub fn diff_power_witness(ideal: &Ideal, n: u32, f: &Polynomial, scope: &[usize]) -> Result<Option<ExponentVector>> {
    if n == 0 {
        return Err(Error::Precondition("differential powers start at n = 1".into()));
    }
    check_scope(ideal.ring(), scope)?;
    for alpha in multi_indices(ideal.ring().nvars(), scope, n - 1) {
        if !ideal.contains(&apply_d(&alpha, f))? {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}

/// Whether `f ∈ I⟨n⟩`, differentiating in every variable.
pub fn diff_power_membership(ideal: &Ideal, n: u32, f: &Polynomial) -> Result<bool> {
    Ok(diff_power_witness(ideal, n, f, &all_vars(ideal.ring()))?.is_none())
}

/// [`diff_power_membership`] with differentiation restricted to `scope`.
pub fn diff_power_membership_in(ideal: &Ideal, n: u32, f: &Polynomial, scope: &[usize]) -> Result<bool> {
    Ok(diff_power_witness(ideal, n, f, scope)?.is_none())
}

/// `{f : deg f ≤ D, D_α(f) ∈ I for all |α| ≤ n - 1}` as a lattice.
pub fn diff_power_truncated(ideal: &Ideal, n: u32, degree_bound: u32, scope: &[usize]) -> Result<TruncatedLattice> {
    if n == 0 {
        return Err(Error::Precondition("differential powers start at n = 1".into()));
    }
    let ring = ideal.ring();
    check_scope(ring, scope)?;
    let target = truncated_ideal_lattice(ideal, degree_bound)?;
    let mut maps = Vec::new();
    let mut targets = Vec::new();
    for alpha in multi_indices(ring.nvars(), scope, n - 1) {
        maps.push(LinearMap::from_fn(ring, degree_bound, &target, |f| Ok(apply_d(&alpha, f)))?);
        targets.push(target.clone());
    }
    preimage_lattice(ring, degree_bound, &maps, &targets)
}

/// `Scalar` multiple of `D_α`, handy for building operators.
pub fn scaled_d(ring: &Ring, c: i64, alpha: ExponentVector) -> DiffOperator {
    DiffOperator::term(Polynomial::constant(ring, Scalar::from_i64(c)), alpha)
}

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::groebner::engine::{Engine, Terms};
use crate::poly::{same_ring, MonomialOrder, Polynomial, Ring, CANONICAL_ORDER};

/// Default cap on reduction steps per Gröbner computation.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A Gröbner basis of an ideal for one monomial order.
///
/// Over ℤ the basis is strong: every nonzero ideal element has a leading
/// term divisible, coefficient included, by the leading term of some element.
#[derive(Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    elements: Vec<Polynomial>,
    sorted: Vec<Terms>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_strong(&self) -> bool {
        !self.ring.domain().is_field()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Remainder of `f` after full reduction; zero exactly when `f` lies in
    /// the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut engine = Engine::new(self.ring.domain(), self.order, u64::MAX);
        let r = engine.reduce(engine.sorted(f), &self.sorted)?;
        Ok(engine.to_poly(&self.ring, &r))
    }
}

/// An ideal given by generators, with a write-once cache of Gröbner bases.
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    budget: u64,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            budget: self.budget,
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal")
            .field("ring", &self.ring.to_string())
            .field("generators", &self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        if gens.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", gens.join(", "))
        }
    }
}

impl Ideal {
    /// The ideal generated by `generators`; zero generators are dropped.
    pub fn new(ring: &Ring, generators: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = Vec::new();
        for g in generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: gens,
            budget: DEFAULT_BUDGET,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Parses each string as a generator.
    pub fn parse(ring: &Ring, generators: &[&str]) -> Result<Ideal> {
        let gens = generators
            .iter()
            .map(|s| Polynomial::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, []).expect("no generators")
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, [Polynomial::one(ring)]).expect("same ring")
    }

    pub fn principal(f: &Polynomial) -> Ideal {
        Ideal::new(f.ring(), [f.clone()]).expect("same ring")
    }

    /// Replaces the reduction-step budget used by every Gröbner computation
    /// on this ideal and on ideals derived from it.
    pub fn with_budget(mut self, budget: u64) -> Ideal {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    fn derived(&self, generators: Vec<Polynomial>) -> Ideal {
        Ideal::new(&self.ring, generators).expect("same ring").with_budget(self.budget)
    }

    fn check_ring(&self, other: &Ring) -> Result<()> {
        if same_ring(&self.ring, other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// The (strong, over ℤ) Gröbner basis for `order`, computed once.
    pub fn strong_groebner(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.lock().unwrap().get(&order) {
            return Ok(gb.clone());
        }
        let mut engine = Engine::new(self.ring.domain(), order, self.budget);
        let gens: Vec<Terms> = self.generators.iter().map(|g| engine.sorted(g)).collect();
        let sorted = engine.groebner(gens)?;
        let elements = sorted.iter().map(|t| engine.to_poly(&self.ring, t)).collect();
        let gb = Arc::new(GroebnerBasis {
            ring: self.ring.clone(),
            elements,
            sorted,
            order,
        });
        let mut cache = self.cache.lock().unwrap();
        Ok(cache.entry(order).or_insert(gb).clone())
    }

    /// Gröbner basis in the canonical (graded reverse lexicographic) order.
    pub fn basis(&self) -> Result<Arc<GroebnerBasis>> {
        self.strong_groebner(CANONICAL_ORDER)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.basis()?.normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.check_ring(f.ring())?;
        if f.is_zero() {
            return Ok(true);
        }
        if self.is_zero() {
            return Ok(false);
        }
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        self.contains(&Polynomial::one(&self.ring))
    }

    /// Whether `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(&other.ring)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn ideal_eq(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        Ok(self.derived(self.generators.iter().chain(&other.generators).cloned().collect()))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a * b);
            }
        }
        Ok(self.derived(gens))
    }

    /// `self^n`, with `self^0` the unit ideal.
    pub fn pow(&self, n: u32) -> Ideal {
        let mut acc = self.derived(vec![Polynomial::one(&self.ring)]);
        for _ in 0..n {
            acc = acc.product(self).expect("same ring");
            if let Ok(gb) = acc.basis() {
                if gb.elements().len() < acc.generators.len() {
                    acc = self.derived(gb.elements().to_vec());
                }
            }
        }
        acc
    }

    /// `self ∩ other`, eliminating `t` from `t·self + (1 − t)·other`.
    /// The generators or the reduced basis, whichever has fewer terms.
    fn compact_generators(&self) -> Result<Vec<Polynomial>> {
        let basis = self.basis()?;
        let size = |gs: &[Polynomial]| gs.iter().map(Polynomial::num_terms).sum::<usize>();
        if size(basis.elements()) < size(&self.generators) {
            Ok(basis.elements().to_vec())
        } else {
            Ok(self.generators.clone())
        }
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.derived(Vec::new()));
        }
        let big = self.ring.with_leading_aux_var();
        let n = self.ring.nvars();
        let shift: Vec<usize> = (1..=n).collect();
        let t = Polynomial::var(&big, 0);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut gens = Vec::new();
        for g in &self.compact_generators()? {
            gens.push(&t * &g.embed(&big, &shift)?);
        }
        for g in &other.compact_generators()? {
            gens.push(&one_minus_t * &g.embed(&big, &shift)?);
        }
        let lifted = Ideal::new(&big, gens)?.with_budget(self.budget);
        let gb = lifted.strong_groebner(MonomialOrder::Elimination { block: 1 })?;
        let mut out = Vec::new();
        for g in gb.elements() {
            if g.degree_in(0) == 0 {
                out.push(Polynomial::from_terms(
                    &self.ring,
                    g.terms().iter().map(|t| (t.coeff.clone(), t.exp.drop_prefix(1))),
                )?);
            }
        }
        Ok(self.derived(out))
    }

    /// The colon ideal `(self : f) = {g : g·f ∈ self}`.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_ring(f.ring())?;
        if f.is_zero() {
            return Err(Error::Precondition("colon by the zero polynomial".into()));
        }
        if self.contains(f)? {
            return Ok(self.derived(vec![Polynomial::one(&self.ring)]));
        }
        let meet = self.intersect(&Ideal::principal(f))?;
        let gens = meet
            .generators
            .iter()
            .map(|g| g.div_exact(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.derived(gens))
    }

    /// `(self : f^∞)` together with the least `k` such that
    /// `(self : f^k) = (self : f^(k+1))`.
    pub fn saturation(&self, f: &Polynomial) -> Result<(Ideal, u32)> {
        let mut current = self.clone();
        let mut k = 0;
        loop {
            let next = current.colon(f)?;
            if current.contains_ideal(&next)? {
                return Ok((current, k));
            }
            current = next;
            k += 1;
        }
    }
}

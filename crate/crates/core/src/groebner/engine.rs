//! Buchberger's algorithm over a field, and its strong variant over ℤ that
//! adds GCD-polynomials next to S-polynomials.
//!
//! Polynomials are handled here as term vectors sorted in decreasing order
//! for the monomial order at hand, which need not be the storage order of
//! [`Polynomial`].

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{CoefficientDomain, ExponentVector, MonomialOrder, Polynomial, Ring, Scalar};

pub(crate) type Terms = Vec<(ExponentVector, Scalar)>;

/// Machine words taken by a coefficient.
fn words(c: &Scalar) -> u64 {
    match c {
        Scalar::Int(v) => v.bits() / 64 + 1,
        Scalar::Frac(q) => (q.numer().bits() + q.denom().bits()) / 64 + 1,
    }
}

pub(crate) struct Engine {
    domain: CoefficientDomain,
    order: MonomialOrder,
    budget: u64,
    steps: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum PairKind {
    Gcd,
    Spoly,
}

/// Pairs are taken by sugar degree, then by the size of the lead
/// coefficient they produce.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    degree: u32,
    weight: u64,
    seq: u64,
    kind: PairKind,
    i: usize,
    j: usize,
}

#[derive(Default)]
struct PairState {
    heap: BinaryHeap<Reverse<Pair>>,
    seq: u64,
    active: Vec<bool>,
    sugar: Vec<u32>,
    considered: HashSet<(usize, usize)>,
    pending: HashSet<(usize, usize)>,
}

impl PairState {
    fn push(&mut self, degree: u32, weight: u64, kind: PairKind, i: usize, j: usize) {
        self.seq += 1;
        if kind == PairKind::Spoly {
            self.pending.insert((i, j));
        }
        self.heap.push(Reverse(Pair { degree, weight, seq: self.seq, kind, i, j }));
    }

    /// Whether the S-pair of `i` and `k` was formed or skipped, and is no
    /// longer waiting.
    fn settled(&self, i: usize, k: usize) -> bool {
        let key = (i.min(k), i.max(k));
        self.considered.contains(&key) && !self.pending.contains(&key)
    }
}

impl Engine {
    pub(crate) fn new(domain: CoefficientDomain, order: MonomialOrder, budget: u64) -> Self {
        Engine {
            domain,
            order,
            budget,
            steps: 0,
        }
    }

    pub(crate) fn sorted(&self, p: &Polynomial) -> Terms {
        let mut t: Terms = p.terms().iter().map(|t| (t.exp.clone(), t.coeff.clone())).collect();
        if self.order != crate::poly::CANONICAL_ORDER {
            t.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        }
        t
    }

    pub(crate) fn to_poly(&self, ring: &Ring, t: &Terms) -> Polynomial {
        Polynomial::from_terms(ring, t.iter().map(|(e, c)| (c.clone(), e.clone()))).expect("canonical coefficients")
    }

    /// Charges `cost` steps.
    fn charge(&mut self, cost: u64) -> Result<()> {
        self.steps += cost;
        if self.steps > self.budget {
            Err(Error::BudgetExceeded { budget: self.budget })
        } else {
            Ok(())
        }
    }

    /// Charges one reduction by `g` with quotient `q`. Reductions whose
    /// arithmetic runs over many machine words count as several steps.
    fn tick(&mut self, q: &Scalar, g: &Terms) -> Result<()> {
        let widest = g.iter().map(|(_, c)| words(c)).max().unwrap_or(1);
        self.charge(1 + g.len() as u64 * words(q) * widest / 64)
    }

    /// `f - c * x^m * g`, all sorted by the engine order.
    fn sub_scaled(&self, f: &[(ExponentVector, Scalar)], c: &Scalar, m: &ExponentVector, g: &Terms) -> Terms {
        let d = &self.domain;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut i = 0;
        let mut gi = g.iter().map(|(e, k)| (e.mul(m), d.mul(k, c))).peekable();
        while i < f.len() {
            match gi.peek() {
                None => break,
                Some((e, k)) => match self.order.cmp(&f[i].0, e) {
                    Ordering::Greater => {
                        out.push(f[i].clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((e.clone(), d.neg(k)));
                        gi.next();
                    }
                    Ordering::Equal => {
                        let v = d.sub(&f[i].1, k);
                        if !v.is_zero() {
                            out.push((e.clone(), v));
                        }
                        i += 1;
                        gi.next();
                    }
                },
            }
        }
        out.extend(f[i..].iter().cloned());
        for (e, k) in gi {
            out.push((e, d.neg(&k)));
        }
        out
    }

    fn add_scaled2(
        &self,
        a: &Scalar,
        ma: &ExponentVector,
        f: &Terms,
        b: &Scalar,
        mb: &ExponentVector,
        g: &Terms,
    ) -> Terms {
        // a*ma*f + b*mb*g  ==  (a*ma*f) - (-b)*mb*g
        let left: Terms = f.iter().map(|(e, k)| (e.mul(ma), self.domain.mul(k, a))).filter(|(_, k)| !k.is_zero()).collect();
        self.sub_scaled(&left, &self.domain.neg(b), mb, g)
    }

    /// Chooses a reducer for the term `c * x^m`, returning the basis index
    /// and the quotient coefficient.
    fn pick_reducer(&mut self, m: &ExponentVector, c: &Scalar, basis: &[Terms], symmetric: bool) -> Result<Option<(usize, Scalar)>> {
        self.charge(basis.len() as u64 / 256)?;
        if self.domain.is_field() {
            let Some(k) = basis.iter().position(|g| g[0].0.divides(m)) else {
                return Ok(None);
            };
            let q = self.domain.div_exact(c, &basis[k][0].1).expect("field division");
            return Ok(Some((k, q)));
        }
        let cv = c.as_int().expect("integer coefficient");
        let mut best: Option<(usize, &BigInt)> = None;
        for (k, g) in basis.iter().enumerate() {
            if !g[0].0.divides(m) {
                continue;
            }
            self.charge(words(c) * words(&g[0].1) / 64)?;
            let a = g[0].1.as_int().expect("integer coefficient");
            if (cv % a).is_zero() {
                return Ok(Some((k, Scalar::Int(cv / a))));
            }
            if best.map(|(_, b)| a.abs() < b.abs()).unwrap_or(true) {
                best = Some((k, a));
            }
        }
        let Some((k, a)) = best else {
            return Ok(None);
        };
        let mut r = cv.mod_floor(&a.abs());
        if symmetric && BigInt::from(2) * &r > a.abs() {
            r -= a.abs();
        }
        let q = (cv - &r) / a;
        if q.is_zero() {
            Ok(None)
        } else {
            Ok(Some((k, Scalar::Int(q))))
        }
    }

    /// Full reduction of `f` modulo `basis`; the result has no reducible term.
    pub(crate) fn reduce(&mut self, f: Terms, basis: &[Terms]) -> Result<Terms> {
        self.reduce_by(f, basis, false)
    }

    /// As [`Engine::reduce`]; with `symmetric`, integer remainders are taken
    /// in `(-a/2, a/2]`.
    fn reduce_by(&mut self, f: Terms, basis: &[Terms], symmetric: bool) -> Result<Terms> {
        let mut rem: Terms = Vec::new();
        let mut cur = f;
        let mut start = 0;
        while start < cur.len() {
            let (m, c) = cur[start].clone();
            match self.pick_reducer(&m, &c, basis, symmetric)? {
                Some((k, q)) => {
                    self.tick(&q, &basis[k])?;
                    let shift = m.checked_div(&basis[k][0].0).expect("divisible");
                    cur = self.sub_scaled(&cur[start..], &q, &shift, &basis[k]);
                    start = 0;
                }
                None => {
                    rem.push((m, c));
                    start += 1;
                }
            }
        }
        Ok(rem)
    }

    fn tail_reduce(&mut self, g: &Terms, basis: &[Terms]) -> Result<Terms> {
        let mut out = vec![g[0].clone()];
        out.extend(self.reduce(g[1..].to_vec(), basis)?);
        Ok(out)
    }

    /// Whether the leading term of `g` divides `c * x^m`.
    fn lead_divides(&self, g: &Terms, m: &ExponentVector, c: &Scalar) -> bool {
        g[0].0.divides(m) && self.domain.divides(&g[0].1, c)
    }

    /// The least common multiple of two leading terms; over a field the
    /// coefficient is one.
    fn lead_lcm(&self, f: &Terms, g: &Terms) -> (ExponentVector, Scalar) {
        let m = f[0].0.lcm(&g[0].0);
        match (f[0].1.as_int(), g[0].1.as_int()) {
            (Some(a), Some(b)) if !self.domain.is_field() => (m, Scalar::Int(a.lcm(b))),
            _ => (m, Scalar::one()),
        }
    }

    fn make_pairs(&mut self, state: &mut PairState, basis: &[Terms], new: usize) -> Result<()> {
        let (mh, ch) = (&basis[new][0].0, &basis[new][0].1);
        for (i, bi) in basis.iter().enumerate().take(new) {
            if !state.active[i] {
                continue;
            }
            state.considered.insert((i, new));
            let (mi, ci) = (&bi[0].0, &bi[0].1);
            let lcm = mi.lcm(mh);
            let degree = (state.sugar[i] + lcm.total_degree() - mi.total_degree())
                .max(state.sugar[new] + lcm.total_degree() - mh.total_degree());
            let coprime_monomials = mi.is_coprime(mh);
            if self.domain.is_field() {
                if !coprime_monomials {
                    state.push(degree, 0, PairKind::Spoly, i, new);
                }
                continue;
            }
            let (a, b) = (ci.as_int().unwrap(), ch.as_int().unwrap());
            self.charge(words(ci) * words(ch) / 2)?;
            let g = a.gcd(b);
            if !(coprime_monomials && g.is_one()) {
                state.push(degree, a.bits() + b.bits() - g.bits(), PairKind::Spoly, i, new);
            }
            if g != a.abs() && g != b.abs() {
                state.push(degree, g.bits(), PairKind::Gcd, i, new);
            }
        }
        for i in 0..new {
            if state.active[i] && self.lead_divides(&basis[new], &basis[i][0].0, &basis[i][0].1) {
                state.active[i] = false;
            }
        }
        state.active.push(true);
        Ok(())
    }

    /// The largest total degree among the terms.
    fn top_degree(t: &Terms) -> u32 {
        t.iter().map(|(e, _)| e.total_degree()).max().unwrap_or(0)
    }

    /// An S-pair whose lead-term lcm is divisible by the lead term of a third
    /// element, both of whose pairs with the first two are already settled,
    /// reduces to zero.
    fn chain_criterion(&self, state: &PairState, basis: &[Terms], pair: &Pair) -> bool {
        let m = basis[pair.i][0].0.lcm(&basis[pair.j][0].0);
        let mut c = None;
        (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k][0].0.divides(&m)
                && state.settled(pair.i, k)
                && state.settled(pair.j, k)
                && {
                    let c = c.get_or_insert_with(|| self.lead_lcm(&basis[pair.i], &basis[pair.j]).1);
                    self.domain.divides(&basis[k][0].1, c)
                }
        })
    }

    fn pair_poly(&self, basis: &[Terms], pair: &Pair) -> Terms {
        let (f, g) = (&basis[pair.i], &basis[pair.j]);
        let (mf, cf) = (&f[0].0, &f[0].1);
        let (mg, cg) = (&g[0].0, &g[0].1);
        let lcm = mf.lcm(mg);
        let sf = lcm.checked_div(mf).unwrap();
        let sg = lcm.checked_div(mg).unwrap();
        if self.domain.is_field() {
            let a = self.domain.inverse(cf).unwrap();
            let b = self.domain.neg(&self.domain.inverse(cg).unwrap());
            return self.add_scaled2(&a, &sf, f, &b, &sg, g);
        }
        let (a, b) = (cf.as_int().unwrap(), cg.as_int().unwrap());
        match pair.kind {
            PairKind::Spoly => {
                let l = a.lcm(b);
                let u = Scalar::Int(&l / a);
                let v = Scalar::Int(-(&l / b));
                self.add_scaled2(&u, &sf, f, &v, &sg, g)
            }
            PairKind::Gcd => {
                let e = a.extended_gcd(b);
                self.add_scaled2(&Scalar::Int(e.x), &sf, f, &Scalar::Int(e.y), &sg, g)
            }
        }
    }

    /// A reduced Gröbner basis over a field, or a minimal interreduced strong
    /// Gröbner basis over ℤ, sorted by increasing leading monomial.
    pub(crate) fn groebner(&mut self, gens: Vec<Terms>) -> Result<Vec<Terms>> {
        let mut basis: Vec<Terms> = Vec::new();
        let mut state = PairState::default();
        for g in gens {
            let h = self.reduce(g, &basis)?;
            if !h.is_empty() {
                state.sugar.push(Self::top_degree(&h));
                basis.push(h);
                self.make_pairs(&mut state, &basis, basis.len() - 1)?;
            }
        }
        while let Some(Reverse(pair)) = state.heap.pop() {
            self.charge(basis.len() as u64 / 64)?;
            if pair.kind == PairKind::Spoly {
                state.pending.remove(&(pair.i, pair.j));
                if self.chain_criterion(&state, &basis, &pair) {
                    continue;
                }
            }
            let s = self.pair_poly(&basis, &pair);
            self.tick(&Scalar::one(), &s)?;
            let h = self.reduce_by(s, &basis, true)?;
            if !h.is_empty() {
                self.charge(basis.len() as u64 * words(&h[0].1) / 16)?;
                state.sugar.push(Self::top_degree(&h));
                basis.push(h);
                self.make_pairs(&mut state, &basis, basis.len() - 1)?;
            }
        }
        self.minimize(basis)
    }

    fn minimize(&mut self, mut basis: Vec<Terms>) -> Result<Vec<Terms>> {
        let abs_lc = |t: &Terms| -> BigInt {
            match &t[0].1 {
                Scalar::Int(v) => v.abs(),
                Scalar::Frac(_) => BigInt::one(),
            }
        };
        basis.sort_by(|a, b| self.order.cmp(&a[0].0, &b[0].0).then_with(|| abs_lc(a).cmp(&abs_lc(b))));
        let mut kept: Vec<Terms> = Vec::new();
        for g in basis {
            let redundant = kept.iter().any(|k| {
                k[0].0.divides(&g[0].0) && self.domain.divides(&k[0].1, &g[0].1)
            });
            if !redundant {
                kept.push(g);
            }
        }
        let mut out = Vec::with_capacity(kept.len());
        for i in 0..kept.len() {
            let mut g = self.tail_reduce(&kept[i], &kept)?;
            self.normalize_lead(&mut g);
            out.push(g);
        }
        Ok(out)
    }

    fn normalize_lead(&self, g: &mut Terms) {
        let lc = g[0].1.clone();
        if self.domain.is_field() {
            let inv = self.domain.inverse(&lc).unwrap();
            for t in g.iter_mut() {
                t.1 = self.domain.mul(&t.1, &inv);
            }
        } else if lc.is_negative() {
            for t in g.iter_mut() {
                t.1 = t.1.neg();
            }
        }
    }
}

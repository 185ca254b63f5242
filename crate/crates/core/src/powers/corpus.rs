use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{ExponentVector, Polynomial, Ring, Scalar};

/// Default number of random polynomials in a corpus.
pub const DEFAULT_RANDOM: usize = 100;

/// Default degree bound for corpus monomials.
pub const DEFAULT_DEGREE_BOUND: u32 = 4;

/// A deterministic, duplicate-free list of test polynomials.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub description: String,
    pub polys: Vec<Polynomial>,
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusSpec {
    pub degree_bound: u32,
    pub max_product: u32,
    pub random: usize,
    pub seed: u64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            degree_bound: DEFAULT_DEGREE_BOUND,
            max_product: 3,
            random: DEFAULT_RANDOM,
            seed: 0,
        }
    }
}

impl Corpus {
    /// In order: every monomial of degree at most `D` (times `p^a` with
    /// `a + deg ≤ D` when `p` is given), every product of at most
    /// `max_product` generators, each such product times each variable and
    /// times `p`, and `random` seeded sparse polynomials with coefficients in
    /// `[-9, 9]`, at most five terms and degree at most three.
    pub fn standard(ring: &Ring, generators: &[Polynomial], p: Option<u64>, spec: CorpusSpec) -> Corpus {
        let mut c = Builder::default();
        let monomials = ExponentVector::all_up_to_degree(ring.nvars(), spec.degree_bound);
        for m in &monomials {
            c.push(Polynomial::monomial(ring, Scalar::one(), m.clone()));
        }
        if let Some(p) = p {
            for a in 1..=spec.degree_bound {
                let pa = Scalar::from(num_bigint::BigInt::from(p).pow(a));
                for m in monomials.iter().filter(|m| m.total_degree() + a <= spec.degree_bound) {
                    c.push(Polynomial::monomial(ring, pa.clone(), m.clone()));
                }
            }
        }
        let products = generator_products(ring, generators, spec.max_product);
        for g in &products {
            c.push(g.clone());
        }
        for g in &products {
            for i in 0..ring.nvars() {
                c.push(g * &Polynomial::var(ring, i));
            }
            if let Some(p) = p {
                c.push(g.scale_i64(p as i64));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        for _ in 0..spec.random {
            c.push(random_sparse(ring, &mut rng));
        }
        Corpus {
            description: format!(
                "monomials of degree <= {}{}, products of <= {} generators, {} random (seed {})",
                spec.degree_bound,
                p.map(|p| format!(" with powers of {p}")).unwrap_or_default(),
                spec.max_product,
                spec.random,
                spec.seed
            ),
            polys: c.polys,
        }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

#[derive(Default)]
struct Builder {
    seen: HashSet<Polynomial>,
    polys: Vec<Polynomial>,
}

impl Builder {
    fn push(&mut self, f: Polynomial) {
        if !f.is_zero() && self.seen.insert(f.clone()) {
            self.polys.push(f);
        }
    }
}

/// Products of `1..=k` generators, as multisets.
pub fn generator_products(ring: &Ring, generators: &[Polynomial], k: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let mut layer: Vec<(usize, Polynomial)> = vec![(0, Polynomial::one(ring))];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, acc) in &layer {
            for (i, g) in generators.iter().enumerate().skip(*start) {
                let prod = acc * g;
                out.push(prod.clone());
                next.push((i, prod));
            }
        }
        layer = next;
    }
    out
}

/// A random polynomial with one to five terms of degree at most three and
/// nonzero coefficients in `[-9, 9]`.
pub fn random_sparse(ring: &Ring, rng: &mut impl Rng) -> Polynomial {
    let nterms = rng.gen_range(1..=5);
    let terms: Vec<(Scalar, ExponentVector)> = (0..nterms)
        .map(|_| {
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-9i64..=9);
            }
            let deg = rng.gen_range(0..=3u32);
            let mut e = vec![0u32; ring.nvars()];
            if !e.is_empty() {
                for _ in 0..deg {
                    e[rng.gen_range(0..ring.nvars())] += 1;
                }
            }
            (Scalar::from_i64(c), ExponentVector::new(e))
        })
        .collect();
    Polynomial::from_terms(ring, terms).expect("integer coefficients")
}

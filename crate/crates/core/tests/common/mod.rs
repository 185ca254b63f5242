#![allow(dead_code)]

use diffpow_core::groebner::Ideal;
use diffpow_core::poly::{CoefficientDomain, ExponentVector, PolyRing, Polynomial, Ring, Scalar};
use rand::Rng;

pub fn zring(vars: &[&str]) -> Ring {
    PolyRing::new(CoefficientDomain::Integers, vars.iter().copied()).unwrap()
}

pub fn qring(vars: &[&str]) -> Ring {
    PolyRing::new(CoefficientDomain::Rationals, vars.iter().copied()).unwrap()
}

pub fn poly(r: &Ring, s: &str) -> Polynomial {
    Polynomial::parse(r, s).unwrap()
}

pub fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

/// Up to `max_terms` terms of degree at most `max_deg` with coefficients in
/// `[-c, c]`; may be zero.
pub fn random_poly(r: &Ring, rng: &mut impl Rng, max_deg: u32, c: i64, max_terms: usize) -> Polynomial {
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<(Scalar, ExponentVector)> = (0..n)
        .map(|_| {
            let deg = rng.gen_range(0..=max_deg);
            let mut e = vec![0u32; r.nvars()];
            if !e.is_empty() {
                for _ in 0..deg {
                    e[rng.gen_range(0..r.nvars())] += 1;
                }
            }
            (Scalar::from_i64(rng.gen_range(-c..=c)), ExponentVector::new(e))
        })
        .collect();
    Polynomial::from_terms(r, terms).unwrap()
}

/// One to three random generators of degree at most three, coefficients in
/// `[-5, 5]`.
pub fn random_ideal(r: &Ring, rng: &mut impl Rng) -> Ideal {
    let k = rng.gen_range(1..=3);
    let gens: Vec<Polynomial> = (0..k).map(|_| random_poly(r, rng, 3, 5, 3)).collect();
    Ideal::new(r, gens).unwrap()
}

/// A random combination `Σ h_i g_i` with every summand of degree at most `d`.
pub fn random_member(i: &Ideal, rng: &mut impl Rng, d: u32) -> Polynomial {
    let r = i.ring();
    let mut f = Polynomial::zero(r);
    for g in i.generators() {
        let dg = g.degree().unwrap_or(0);
        if dg > d {
            continue;
        }
        let h = random_poly(r, rng, d - dg, 4, 3);
        f = &f + &(&h * g);
    }
    f
}

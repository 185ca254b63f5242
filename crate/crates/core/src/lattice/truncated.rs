use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::lattice::echelon::{self, Rows};
use crate::poly::{same_ring, CoefficientDomain, ExponentVector, Polynomial, Ring, Scalar, CANONICAL_ORDER};

/// The elements of degree at most `degree_bound` of some ideal-like set,
/// as a ℤ-lattice (or vector space over a field) in the coefficient space
/// of all monomials up to that degree.
#[derive(Clone, Debug)]
pub struct TruncatedLattice {
    ring: Ring,
    degree_bound: u32,
    monomials: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
    basis: Rows,
}

/// All monomials of degree at most `bound`, largest first in the canonical
/// order.
pub fn monomial_index(nvars: usize, bound: u32) -> Vec<ExponentVector> {
    let mut ms = ExponentVector::all_up_to_degree(nvars, bound);
    ms.sort_by(|a, b| CANONICAL_ORDER.cmp(b, a));
    ms
}

impl TruncatedLattice {
    fn with_rows(ring: &Ring, degree_bound: u32, rows: Rows) -> Self {
        let monomials = monomial_index(ring.nvars(), degree_bound);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        TruncatedLattice {
            ring: ring.clone(),
            degree_bound,
            monomials,
            index,
            basis: echelon::canonical_basis(ring.domain(), rows),
        }
    }

    /// The span of `polys`, each of degree at most `degree_bound`.
    pub fn span(ring: &Ring, degree_bound: u32, polys: &[Polynomial]) -> Result<Self> {
        let empty = TruncatedLattice::with_rows(ring, degree_bound, Vec::new());
        let rows = polys
            .iter()
            .map(|f| {
                if !same_ring(f.ring(), ring) {
                    return Err(Error::RingMismatch);
                }
                empty
                    .coordinates(f)
                    .ok_or_else(|| Error::Dimension(format!("{f} exceeds degree {degree_bound}")))
            })
            .collect::<Result<Rows>>()?;
        Ok(TruncatedLattice::with_rows(ring, degree_bound, rows))
    }

    /// Every polynomial of degree at most `degree_bound`.
    pub fn full(ring: &Ring, degree_bound: u32) -> Self {
        let n = monomial_index(ring.nvars(), degree_bound).len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        TruncatedLattice::with_rows(ring, degree_bound, rows)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn monomials(&self) -> &[ExponentVector] {
        &self.monomials
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis elements as polynomials, in echelon order.
    pub fn basis_polynomials(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|row| self.polynomial(row)).collect()
    }

    fn polynomial(&self, row: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(
            &self.ring,
            row.iter().zip(&self.monomials).map(|(c, m)| (c.clone(), m.clone())),
        )
        .expect("canonical entries")
    }

    /// Coefficient vector of `f`, or `None` when `f` has a monomial outside
    /// the index.
    pub fn coordinates(&self, f: &Polynomial) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.monomials.len()];
        for t in f.terms() {
            v[*self.index.get(&t.exp)?] = t.coeff.clone();
        }
        Some(v)
    }

    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(match self.coordinates(f) {
            Some(v) => echelon::in_span(self.ring.domain(), &self.basis, &v),
            None => false,
        })
    }

    fn check_compatible(&self, other: &TruncatedLattice) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.degree_bound != other.degree_bound {
            return Err(Error::Dimension("lattices with different degree bounds".into()));
        }
        Ok(())
    }

    /// Equality of canonical bases.
    pub fn lattice_eq(&self, other: &TruncatedLattice) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.basis == other.basis)
    }

    /// Whether every basis element of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &TruncatedLattice) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.basis.iter().all(|v| echelon::in_span(self.ring.domain(), &self.basis, v)))
    }
}

/// `{f ∈ I : deg f ≤ D}`, spanned by the monomial multiples of degree at
/// most `D` of a graded reverse lexicographic Gröbner basis of `I`.
pub fn truncated_ideal_lattice(ideal: &Ideal, degree_bound: u32) -> Result<TruncatedLattice> {
    let ring = ideal.ring();
    let gb = ideal.basis()?;
    let mut polys = Vec::new();
    for g in gb.elements() {
        let d = g.degree().unwrap_or(0);
        if d > degree_bound {
            continue;
        }
        for m in ExponentVector::all_up_to_degree(ring.nvars(), degree_bound - d) {
            polys.push(g.mul_term(&Scalar::one(), &m));
        }
    }
    TruncatedLattice::span(ring, degree_bound, &polys)
}

/// A linear map from polynomials of degree at most `D` to the coefficient
/// space of some target lattice, one row per source monomial.
#[derive(Clone, Debug)]
pub struct LinearMap {
    rows: Rows,
    target_dim: usize,
}

impl LinearMap {
    /// Tabulates `map` on the monomials of degree at most `degree_bound`,
    /// expressing images in the coordinates of `target`.
    pub fn from_fn(
        ring: &Ring,
        degree_bound: u32,
        target: &TruncatedLattice,
        map: impl Fn(&Polynomial) -> Result<Polynomial>,
    ) -> Result<LinearMap> {
        let mut rows = Vec::new();
        for m in monomial_index(ring.nvars(), degree_bound) {
            let image = map(&Polynomial::monomial(ring, Scalar::one(), m))?;
            let row = target
                .coordinates(&image)
                .ok_or_else(|| Error::Dimension(format!("image {image} outside the target index")))?;
            rows.push(row);
        }
        Ok(LinearMap {
            rows,
            target_dim: target.monomials.len(),
        })
    }

    /// A map given directly by its matrix.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, target_dim: usize) -> Result<LinearMap> {
        if rows.iter().any(|r| r.len() != target_dim) {
            return Err(Error::Dimension("rows of unequal length".into()));
        }
        Ok(LinearMap { rows, target_dim })
    }
}

fn mat_mul(domain: CoefficientDomain, a: &Rows, b: &Rows, cols: usize) -> Rows {
    a.iter()
        .map(|row| {
            let mut out = vec![Scalar::zero(); cols];
            for (x, brow) in row.iter().zip(b) {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(brow) {
                    if !y.is_zero() {
                        *o = domain.add(o, &domain.mul(x, y));
                    }
                }
            }
            out
        })
        .collect()
}

/// `{f : deg f ≤ D, maps[i](f) ∈ targets[i] for all i}`.
///
/// Conditions are imposed one at a time: with the current basis `C`, the
/// integer solutions `(z, y)` of `z·C·M = y·B` give the new basis `z·C`.
pub fn preimage_lattice(
    ring: &Ring,
    degree_bound: u32,
    maps: &[LinearMap],
    targets: &[TruncatedLattice],
) -> Result<TruncatedLattice> {
    if maps.len() != targets.len() {
        return Err(Error::Dimension("one target per map is required".into()));
    }
    let domain = ring.domain();
    let n = monomial_index(ring.nvars(), degree_bound).len();
    let mut current = TruncatedLattice::full(ring, degree_bound).basis;
    for (map, target) in maps.iter().zip(targets) {
        if !same_ring(&target.ring, ring) {
            return Err(Error::RingMismatch);
        }
        if map.rows.len() != n || map.target_dim != target.monomials.len() {
            return Err(Error::Dimension("map does not match source or target index".into()));
        }
        if current.is_empty() {
            break;
        }
        let images = mat_mul(domain, &current, &map.rows, map.target_dim);
        let mut stacked = images;
        for row in &target.basis {
            stacked.push(row.iter().map(|x| domain.neg(x)).collect());
        }
        let k = current.len();
        let kernel = echelon::left_kernel(domain, &stacked, map.target_dim);
        let z: Rows = kernel.into_iter().map(|mut v| {
            v.truncate(k);
            v
        }).collect();
        current = echelon::canonical_basis(domain, mat_mul(domain, &z, &current, n));
    }
    Ok(TruncatedLattice::with_rows(ring, degree_bound, current))
}

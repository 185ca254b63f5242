use std::cmp::Ordering;

use smallvec::SmallVec;

/// Exponent vector of a monomial, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    exps: SmallVec<[u32; 6]>,
    degree: u32,
}

impl ExponentVector {
    pub fn zero(nvars: usize) -> Self {
        ExponentVector {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn new(exps: impl IntoIterator<Item = u32>) -> Self {
        let exps: SmallVec<[u32; 6]> = exps.into_iter().collect();
        let degree = exps.iter().sum();
        ExponentVector { exps, degree }
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = Self::zero(nvars);
        e.exps[var] = 1;
        e.degree = 1;
        e
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.degree
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.exps
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `self - other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &ExponentVector) -> Option<ExponentVector> {
        if !other.divides(self) {
            return None;
        }
        Some(ExponentVector {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn is_coprime(&self, other: &ExponentVector) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn scale(&self, k: u32) -> ExponentVector {
        ExponentVector {
            exps: self.exps.iter().map(|a| a * k).collect(),
            degree: self.degree * k,
        }
    }

    /// Drops the first `k` entries.
    pub(crate) fn drop_prefix(&self, k: usize) -> ExponentVector {
        ExponentVector::new(self.exps[k..].iter().copied())
    }

    /// Enumerates all exponent vectors of total degree at most `bound`.
    pub fn all_up_to_degree(nvars: usize, bound: u32) -> Vec<ExponentVector> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            if i == cur.len() {
                out.push(ExponentVector::new(cur.iter().copied()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, bound, &mut cur, &mut out);
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GradedLex,
    #[default]
    GradedRevLex,
    /// Block order eliminating the first `block` variables: compares the
    /// first block by grevlex, then the remaining variables by grevlex.
    Elimination { block: usize },
}

impl MonomialOrder {
    pub fn degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::GradedLex | MonomialOrder::GradedRevLex)
    }

    pub fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GradedLex => a.degree.cmp(&b.degree).then_with(|| a.exps.cmp(&b.exps)),
            MonomialOrder::GradedRevLex => a.degree.cmp(&b.degree).then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::Elimination { block } => {
                let k = (*block).min(a.exps.len());
                let da: u32 = a.exps[..k].iter().sum();
                let db: u32 = b.exps[..k].iter().sum();
                da.cmp(&db)
                    .then_with(|| revlex(&a.exps[..k], &b.exps[..k]))
                    .then_with(|| (a.degree - da).cmp(&(b.degree - db)))
                    .then_with(|| revlex(&a.exps[k..], &b.exps[k..]))
            }
        }
    }
}

// Reverse lexicographic tie-break for equal degrees: the monomial with the
// smaller exponent in the last differing variable is the larger one.
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.iter().copied())
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GradedRevLex;
        // x^2 > xy > y^2 > xz in three variables
        assert_eq!(o.cmp(&ev(&[2, 0, 0]), &ev(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&ev(&[1, 1, 0]), &ev(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&ev(&[0, 2, 0]), &ev(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&ev(&[0, 0, 0]), &ev(&[0, 0, 1])), Ordering::Less);
    }

    #[test]
    fn lex_and_glex_differ() {
        let a = ev(&[1, 0]);
        let b = ev(&[0, 3]);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::GradedLex.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn elimination_prefers_block_variables() {
        let o = MonomialOrder::Elimination { block: 1 };
        assert_eq!(o.cmp(&ev(&[1, 0, 0]), &ev(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&ev(&[0, 2, 0]), &ev(&[0, 1, 0])), Ordering::Greater);
        assert!(!o.degree_compatible());
    }

    #[test]
    fn enumeration_counts() {
        // C(n + D, D) monomials
        assert_eq!(ExponentVector::all_up_to_degree(2, 4).len(), 15);
        assert_eq!(ExponentVector::all_up_to_degree(3, 2).len(), 10);
        assert_eq!(ExponentVector::all_up_to_degree(0, 3).len(), 1);
    }

    #[test]
    fn divisibility_and_lcm() {
        assert!(ev(&[1, 0]).divides(&ev(&[2, 1])));
        assert!(!ev(&[0, 2]).divides(&ev(&[2, 1])));
        assert_eq!(ev(&[2, 1]).checked_div(&ev(&[1, 1])), Some(ev(&[1, 0])));
        assert_eq!(ev(&[2, 0]).lcm(&ev(&[1, 3])), ev(&[2, 3]));
        assert!(ev(&[2, 0]).is_coprime(&ev(&[0, 3])));
    }
}

//! Row echelon forms over ℤ (Hermite) and over fields (reduced), sharing one
//! elimination loop.

use num_integer::Integer;
use num_traits::Signed;

use crate::poly::{CoefficientDomain, Scalar};

pub(crate) type Rows = Vec<Vec<Scalar>>;

fn smaller(domain: CoefficientDomain, a: &Scalar, b: &Scalar) -> bool {
    match domain {
        CoefficientDomain::Integers => a.as_int().unwrap().abs() < b.as_int().unwrap().abs(),
        _ => false,
    }
}

/// Quotient `q` making `a - q*b` canonical modulo `b`: the floor quotient
/// over ℤ, exact division over a field.
fn quotient(domain: CoefficientDomain, a: &Scalar, b: &Scalar) -> Scalar {
    match domain {
        CoefficientDomain::Integers => {
            let (a, b) = (a.as_int().unwrap(), b.as_int().unwrap());
            Scalar::Int(a.div_floor(b))
        }
        _ => domain.div_exact(a, b).expect("field division"),
    }
}

fn axpy(domain: CoefficientDomain, row: &mut [Scalar], q: &Scalar, pivot_row: &[Scalar]) {
    for (x, y) in row.iter_mut().zip(pivot_row) {
        if !y.is_zero() {
            *x = domain.sub(x, &domain.mul(q, y));
        }
    }
}

fn scale(domain: CoefficientDomain, row: &mut [Scalar], c: &Scalar) {
    for x in row.iter_mut() {
        *x = domain.mul(x, c);
    }
}

/// Brings `rows` into canonical echelon form in place, applying the same
/// row operations to `transform` when given. Zero rows end up at the bottom.
/// Returns the rank.
///
/// Over ℤ the result is the row Hermite normal form: positive pivots with
/// the entries above each pivot in `[0, pivot)`. Over a field it is the
/// reduced row echelon form.
pub(crate) fn echelon(domain: CoefficientDomain, rows: &mut Rows, mut transform: Option<&mut Rows>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let nrows = rows.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..nrows {
                if !rows[i][c].is_zero() && best.map(|b| smaller(domain, &rows[i][c], &rows[b][c])).unwrap_or(true) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            if let Some(t) = transform.as_deref_mut() {
                t.swap(r, b);
            }
            let mut done = true;
            for i in r + 1..nrows {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = quotient(domain, &rows[i][c], &rows[r][c]);
                let pivot_row = rows[r].clone();
                axpy(domain, &mut rows[i], &q, &pivot_row);
                if let Some(t) = transform.as_deref_mut() {
                    let prow = t[r].clone();
                    axpy(domain, &mut t[i], &q, &prow);
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        let unit = match domain {
            CoefficientDomain::Integers if rows[r][c].is_negative() => Some(Scalar::from_i64(-1)),
            CoefficientDomain::Integers => None,
            _ => Some(domain.inverse(&rows[r][c]).unwrap()),
        };
        if let Some(u) = unit {
            scale(domain, &mut rows[r], &u);
            if let Some(t) = transform.as_deref_mut() {
                scale(domain, &mut t[r], &u);
            }
        }
        for i in 0..r {
            if rows[i][c].is_zero() {
                continue;
            }
            let q = quotient(domain, &rows[i][c], &rows[r][c]);
            let pivot_row = rows[r].clone();
            axpy(domain, &mut rows[i], &q, &pivot_row);
            if let Some(t) = transform.as_deref_mut() {
                let prow = t[r].clone();
                axpy(domain, &mut t[i], &q, &prow);
            }
        }
        r += 1;
    }
    r
}

/// Canonical basis of the row span: echelon form with zero rows removed.
pub(crate) fn canonical_basis(domain: CoefficientDomain, mut rows: Rows) -> Rows {
    let rank = echelon(domain, &mut rows, None);
    rows.truncate(rank);
    rows
}

/// Basis of `{v : v·A = 0}`, in canonical form. Over ℤ it is saturated.
pub(crate) fn left_kernel(domain: CoefficientDomain, a: &Rows, ncols: usize) -> Rows {
    let n = a.len();
    let mut rows = a.clone();
    for r in rows.iter_mut() {
        debug_assert_eq!(r.len(), ncols);
    }
    let mut t: Rows = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect();
    let rank = if ncols == 0 { 0 } else { echelon(domain, &mut rows, Some(&mut t)) };
    canonical_basis(domain, t.split_off(rank))
}

/// Pivot column of a nonzero echelon row.
pub(crate) fn pivot(row: &[Scalar]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Whether `v` lies in the span of `basis` (canonical echelon rows), over
/// ℤ by back-substitution with exact divisibility.
pub(crate) fn in_span(domain: CoefficientDomain, basis: &Rows, v: &[Scalar]) -> bool {
    let mut v = v.to_vec();
    for row in basis {
        let c = pivot(row).expect("nonzero basis row");
        if v[c].is_zero() {
            continue;
        }
        if !domain.divides(&row[c], &v[c]) {
            return false;
        }
        let q = domain.div_exact(&v[c], &row[c]).expect("checked divisibility");
        axpy(domain, &mut v, &q, row);
    }
    v.iter().all(|x| x.is_zero())
}

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::pderiv::PDerivation;
use crate::poly::Polynomial;
use crate::powers::corpus::Corpus;
use crate::powers::membership::{mixed_power_witness, Composition, PowerQuery, SymbolicPower};

/// One sample on which the two membership tests differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub poly: String,
    pub symbolic: bool,
    pub other: bool,
    pub witness_composition: Option<Composition>,
    pub witness_value: Option<String>,
}

/// Per-sample verdicts of symbolic membership against a differential-type
/// membership over a corpus.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub ring: String,
    pub ideal: String,
    pub certificate: String,
    pub trusted: bool,
    pub n: u32,
    pub p: Option<u64>,
    pub lift: Option<String>,
    pub corpus: String,
    pub corpus_size: usize,
    pub agreements: usize,
    pub symbolic_members: usize,
    pub other_members: usize,
    pub disagreements: Vec<Disagreement>,
    #[serde(skip)]
    pub verdicts: Vec<(bool, bool)>,
}

impl EquivalenceReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }

    /// The first disagreement, if any.
    pub fn first_witness(&self) -> Option<&Disagreement> {
        self.disagreements.first()
    }
}

struct Verdict {
    symbolic: bool,
    other: bool,
    composition: Option<Composition>,
    value: Option<Polynomial>,
}

fn build_report(query: &PowerQuery, corpus: &Corpus, verdicts: Vec<Verdict>) -> EquivalenceReport {
    let mut report = EquivalenceReport {
        ring: query.ideal().ring().to_string(),
        ideal: query.ideal().to_string(),
        certificate: query.certificate().kind().to_string(),
        trusted: query.certificate().is_trusted(),
        n: query.n(),
        p: query.p(),
        lift: query.derivation().map(|d| d.lift().to_string()),
        corpus: corpus.description.clone(),
        corpus_size: corpus.len(),
        agreements: 0,
        symbolic_members: 0,
        other_members: 0,
        disagreements: Vec::new(),
        verdicts: Vec::new(),
    };
    for (f, v) in corpus.polys.iter().zip(verdicts) {
        report.symbolic_members += v.symbolic as usize;
        report.other_members += v.other as usize;
        report.verdicts.push((v.symbolic, v.other));
        if v.symbolic == v.other {
            report.agreements += 1;
        } else {
            report.disagreements.push(Disagreement {
                poly: f.to_string(),
                symbolic: v.symbolic,
                other: v.other,
                witness_composition: v.composition,
                witness_value: v.value.map(|g| g.to_string()),
            });
        }
    }
    report
}

/// Whether the ideal contains a nonzero integer; a strong basis over ℤ
/// then has a constant element.
pub fn meets_integers(ideal: &Ideal) -> Result<bool> {
    if ideal.ring().domain().is_field() {
        return ideal.is_unit();
    }
    Ok(ideal.basis()?.elements().iter().any(|g| g.is_constant()))
}

/// Symbolic against differential membership at `query.n()` on every corpus
/// sample. Requires `Q ∩ ℤ = 0`.
pub fn diff_symbolic_equivalence(query: &PowerQuery, corpus: &Corpus) -> Result<EquivalenceReport> {
    if meets_integers(query.ideal())? {
        return Err(Error::Precondition(format!("{} contains a nonzero integer", query.ideal())));
    }
    let sym = SymbolicPower::new(query.ideal(), query.n())?;
    let verdicts = corpus
        .polys
        .par_iter()
        .map(|f| {
            let symbolic = sym.contains(f)?;
            let witness = query.diff_witness(f)?;
            Ok(Verdict {
                symbolic,
                other: witness.is_none(),
                value: witness.as_ref().map(|a| crate::diffops::apply_d(a, f)),
                composition: witness.map(|a| Composition {
                    s: 0,
                    alpha: a.as_slice().to_vec(),
                }),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(build_report(query, corpus, verdicts))
}

/// Symbolic against mixed membership at `query.n()`. Requires a lift and
/// `p ∈ Q`.
pub fn mixed_symbolic_equivalence(query: &PowerQuery, corpus: &Corpus) -> Result<EquivalenceReport> {
    let d = query
        .derivation()
        .ok_or_else(|| Error::Precondition("a Frobenius lift is required".into()))?;
    let sym = SymbolicPower::new(query.ideal(), query.n())?;
    let verdicts = corpus
        .polys
        .par_iter()
        .map(|f| {
            let symbolic = sym.contains(f)?;
            let witness = mixed_power_witness(query.ideal(), query.n(), d, f, query.diff_vars())?;
            Ok(Verdict {
                symbolic,
                other: witness.is_none(),
                composition: witness.as_ref().map(|w| w.composition()),
                value: witness.map(|w| w.value),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(build_report(query, corpus, verdicts))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftDisagreement {
    pub poly: String,
    pub verdicts: Vec<bool>,
}

/// Mixed membership verdicts under several lifts of Frobenius.
#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub ring: String,
    pub ideal: String,
    pub n: u32,
    pub p: u64,
    pub lifts: Vec<String>,
    pub corpus: String,
    pub corpus_size: usize,
    pub agreements: usize,
    pub members: usize,
    pub disagreements: Vec<LiftDisagreement>,
    #[serde(skip)]
    pub verdicts: Vec<Vec<bool>>,
}

impl IndependenceReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs mixed membership for each derivation on every corpus sample and
/// compares the verdict vectors.
pub fn delta_independence(
    q: &Ideal,
    n: u32,
    derivations: &[PDerivation],
    corpus: &Corpus,
    scope: &[usize],
) -> Result<IndependenceReport> {
    let first = derivations
        .first()
        .ok_or_else(|| Error::Precondition("at least one lift is required".into()))?;
    let p = first.p();
    if derivations.iter().any(|d| d.p() != p) {
        return Err(Error::Precondition("lifts for different primes".into()));
    }
    let verdicts = corpus
        .polys
        .par_iter()
        .map(|f| {
            derivations
                .iter()
                .map(|d| Ok(mixed_power_witness(q, n, d, f, scope)?.is_none()))
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = IndependenceReport {
        ring: q.ring().to_string(),
        ideal: q.to_string(),
        n,
        p,
        lifts: derivations.iter().map(|d| d.lift().to_string()).collect(),
        corpus: corpus.description.clone(),
        corpus_size: corpus.len(),
        agreements: 0,
        members: 0,
        disagreements: Vec::new(),
        verdicts: Vec::new(),
    };
    for (f, v) in corpus.polys.iter().zip(verdicts) {
        if v.iter().all(|&b| b == v[0]) {
            report.agreements += 1;
            report.members += v[0] as usize;
        } else {
            report.disagreements.push(LiftDisagreement {
                poly: f.to_string(),
                verdicts: v.clone(),
            });
        }
        report.verdicts.push(v);
    }
    Ok(report)
}

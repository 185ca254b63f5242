use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use diffpow_core::groebner::{Ideal, PrimeCertificate};
use diffpow_core::pderiv::{pder_power_witness, PDerivation};
use diffpow_core::poly::{MonomialOrder, Polynomial};
use diffpow_core::powers::{
    delta_independence, diff_symbolic_equivalence, mixed_symbolic_equivalence, Composition, Corpus, CorpusSpec,
    EquivalenceReport, PowerQuery, SymbolicPower, DEFAULT_RANDOM,
};
use diffpow_core::powers::suites::{run_all, run_suite, Expectations, SuiteOptions, SuiteReport};
use diffpow_core::Error;

use crate::session::{detect_certificate, Session};

/// Why a command could not produce a verdict.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Budget(u64),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { budget } => Failure::Budget(budget),
            other => Failure::Input(other.to_string()),
        }
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

fn input<T>(message: impl Into<String>) -> Outcome<T> {
    Err(Failure::Input(message.into()))
}

/// A finished command: whether its checks passed, plus both renderings.
pub struct Report {
    pub passed: bool,
    pub json: Value,
    pub text: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MemberKind {
    Symbolic,
    Diff,
    Pder,
    Mixed,
}

impl MemberKind {
    fn name(self) -> &'static str {
        match self {
            MemberKind::Symbolic => "symbolic",
            MemberKind::Diff => "diff",
            MemberKind::Pder => "pder",
            MemberKind::Mixed => "mixed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivKind {
    Diff,
    Mixed,
    DeltaIndependence,
}

impl EquivKind {
    fn name(self) -> &'static str {
        match self {
            EquivKind::Diff => "diff",
            EquivKind::Mixed => "mixed",
            EquivKind::DeltaIndependence => "delta-independence",
        }
    }
}

/// Names picked on the command line; `None` means "the only one declared".
#[derive(Clone, Debug, Default)]
pub struct Selection {
    pub ideal: Option<String>,
    pub lifts: Vec<String>,
    pub relations: Option<String>,
}

struct Context<'a> {
    session: &'a Session,
    budget: u64,
}

impl Context<'_> {
    fn ideal(&self, sel: &Selection) -> Outcome<(Ideal, Option<PrimeCertificate>)> {
        let entry = match &sel.ideal {
            Some(name) => match self.session.ideal(name) {
                Some(e) => e,
                None => return input(format!("no ideal named `{name}` in the session")),
            },
            None => match self.session.ideals.as_slice() {
                [only] => only,
                [] => return input("the session declares no ideal"),
                _ => return input("several ideals declared; pass --ideal NAME"),
            },
        };
        Ok((entry.ideal.clone().with_budget(self.budget), entry.certificate.clone()))
    }

    fn lift(&self, sel: &Selection) -> Outcome<PDerivation> {
        match sel.lifts.as_slice() {
            [name] => match self.session.lift(name) {
                Some(d) => Ok(d.clone()),
                None => input(format!("no lift named `{name}` in the session")),
            },
            [] => match self.session.lifts.as_slice() {
                [(_, d)] => Ok(d.clone()),
                [] => match self.session.prime {
                    Some(p) => Ok(PDerivation::standard(&self.session.ring, p)?),
                    None => input("a prime or a lift must be declared"),
                },
                _ => input("several lifts declared; pass --lift NAME"),
            },
            _ => input("pass a single --lift for this command"),
        }
    }

    fn query(&self, sel: &Selection, n: u32, lift: Option<PDerivation>) -> Outcome<PowerQuery> {
        let (ideal, cert) = self.ideal(sel)?;
        let cert = match cert {
            Some(c) => c,
            None => detect_certificate(&ideal)?.unwrap_or(PrimeCertificate::Trusted),
        };
        let mut q = PowerQuery::new(ideal, cert, n)?;
        if let Some(vars) = &self.session.diff_vars {
            q = q.with_diff_vars(vars.clone())?;
        }
        if let Some(d) = lift {
            q = q.with_derivation(d)?;
        } else if let Some(p) = self.session.prime {
            if q.ideal().contains(&Polynomial::from_i64(q.ideal().ring(), p as i64))? {
                q = q.with_prime(p)?;
            }
        }
        Ok(q)
    }

    fn poly(&self, text: &str) -> Outcome<Polynomial> {
        Polynomial::parse(&self.session.ring, text).map_err(|e| Failure::Input(format!("--f: {e}")))
    }
}

fn header(q: &PowerQuery) -> Value {
    json!({
        "ring": q.ideal().ring().to_string(),
        "ideal": q.ideal().to_string(),
        "certificate": q.certificate().kind().to_string(),
        "trusted": q.certificate().is_trusted(),
        "n": q.n(),
        "p": q.p(),
        "lift": q.derivation().map(|d| d.lift().to_string()),
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn alpha_text(alpha: &[u32]) -> String {
    let parts: Vec<String> = alpha.iter().map(u32::to_string).collect();
    format!("({})", parts.join(", "))
}

fn trust_note(q: &PowerQuery) -> &'static str {
    if q.certificate().is_trusted() {
        " [primality trusted, not certified]"
    } else {
        ""
    }
}

#[allow(clippy::too_many_arguments)]
pub fn member(
    session: &Session,
    kind: MemberKind,
    sel: &Selection,
    n: u32,
    f: &str,
    expect: Option<bool>,
    budget: u64,
) -> Outcome<Report> {
    if sel.relations.is_some() && kind != MemberKind::Symbolic {
        return input("--relations applies to `member symbolic` only");
    }
    let ctx = Context { session, budget };
    let f = ctx.poly(f)?;
    let lift = match kind {
        MemberKind::Pder | MemberKind::Mixed => Some(ctx.lift(sel)?),
        _ => None,
    };
    let q = ctx.query(sel, n, lift.clone().filter(|_| kind == MemberKind::Mixed))?;
    let (member, witness): (bool, Option<(Composition, Polynomial)>) = match kind {
        MemberKind::Symbolic => {
            let member = match &sel.relations {
                Some(name) => {
                    let Some(rel) = session.relation(name) else {
                        return input(format!("no relations named `{name}` in the session"));
                    };
                    SymbolicPower::modulo(q.ideal(), &rel.clone().with_budget(budget), n)?.contains(&f)?
                }
                None => q.symbolic(&f)?,
            };
            (member, None)
        }
        MemberKind::Diff => {
            let w = q.diff_witness(&f)?;
            let w = w.map(|a| {
                let value = diffpow_core::diffops::apply_d(&a, &f);
                (Composition { s: 0, alpha: a.as_slice().to_vec() }, value)
            });
            (w.is_none(), w)
        }
        MemberKind::Pder => {
            let nvars = session.ring.nvars();
            let d = lift.as_ref().expect("pder has a lift");
            let w = pder_power_witness(q.ideal(), n, d, &f)?.map(|(s, v)| (Composition { s, alpha: vec![0; nvars] }, v));
            (w.is_none(), w)
        }
        MemberKind::Mixed => {
            let w = q.mixed_witness(&f)?.map(|w| (w.composition(), w.value));
            (w.is_none(), w)
        }
    };
    let passed = expect.is_none_or(|e| e == member);
    let mut head = header(&q);
    if let Some(d) = &lift {
        head["lift"] = json!(d.lift().to_string());
        head["p"] = json!(d.p());
    }
    let json = merge(
        json!({ "command": format!("member {}", kind.name()) }),
        merge(
            head,
            json!({
                "f": f.to_string(),
                "relations": sel.relations,
                "member": member,
                "expected": expect,
                "witness_composition": witness.as_ref().map(|(c, _)| c),
                "witness_value": witness.as_ref().map(|(_, v)| v.to_string()),
            }),
        ),
    );
    let mut text = String::new();
    let note = match kind {
        MemberKind::Symbolic | MemberKind::Mixed => trust_note(&q),
        _ => "",
    };
    let _ = writeln!(text, "ideal {} in {}{}", q.ideal(), q.ideal().ring(), note);
    if let Some(d) = &lift {
        let _ = writeln!(text, "lift {}", d.lift());
    }
    let verdict = if member { "a member" } else { "not a member" };
    let _ = writeln!(text, "{} power, n = {}: {} is {}", kind.name(), n, f, verdict);
    if let Some((c, v)) = &witness {
        let _ = writeln!(text, "witness: s = {}, alpha = {} gives {}", c.s, alpha_text(&c.alpha), v);
    }
    if let Some(e) = expect {
        let _ = writeln!(text, "expected {}: {}", e, if passed { "ok" } else { "FAILED" });
    }
    Ok(Report { passed, json, text })
}

pub fn parse_order(s: &str) -> Option<MonomialOrder> {
    match s {
        "grevlex" => Some(MonomialOrder::GradedRevLex),
        "grlex" => Some(MonomialOrder::GradedLex),
        "lex" => Some(MonomialOrder::Lex),
        _ => None,
    }
}

pub fn gb(session: &Session, sel: &Selection, order: &str, budget: u64) -> Outcome<Report> {
    let ctx = Context { session, budget };
    let Some(mo) = parse_order(order) else {
        return input(format!("unknown order `{order}`; use grevlex, grlex or lex"));
    };
    let (ideal, _) = ctx.ideal(sel)?;
    let basis = ideal.strong_groebner(mo)?;
    let elements: Vec<String> = basis.elements().iter().map(|g| g.to_string()).collect();
    let json = json!({
        "command": "gb",
        "ring": ideal.ring().to_string(),
        "ideal": ideal.to_string(),
        "order": order,
        "strong": basis.is_strong(),
        "basis": elements,
    });
    let mut text = format!(
        "{} basis of {} in {} ({}):\n",
        if basis.is_strong() { "strong Groebner" } else { "Groebner" },
        ideal,
        ideal.ring(),
        order
    );
    for g in &elements {
        let _ = writeln!(text, "  {g}");
    }
    Ok(Report { passed: true, json, text })
}

pub fn colon(session: &Session, sel: &Selection, f: &str, budget: u64) -> Outcome<Report> {
    let ctx = Context { session, budget };
    let (ideal, _) = ctx.ideal(sel)?;
    let f = ctx.poly(f)?;
    let c = ideal.colon(&f)?;
    let elements: Vec<String> = c.basis()?.elements().iter().map(|g| g.to_string()).collect();
    let json = json!({
        "command": "colon",
        "ring": ideal.ring().to_string(),
        "ideal": ideal.to_string(),
        "f": f.to_string(),
        "basis": elements,
    });
    let text = format!("({} : {}) = ({})\n", ideal, f, elements.join(", "));
    Ok(Report { passed: true, json, text })
}

fn corpus_for(q: &Ideal, p: Option<u64>, n: u32, degree_bound: u32, seed: u64) -> Corpus {
    let spec = CorpusSpec {
        degree_bound,
        max_product: n,
        random: DEFAULT_RANDOM,
        seed,
    };
    Corpus::standard(q.ring(), q.generators(), p, spec)
}

fn equivalence_text(r: &EquivalenceReport, other: &str) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "ideal {} in {} ({} certificate{})", r.ideal, r.ring, r.certificate, if r.trusted { ", trusted" } else { "" });
    if let Some(l) = &r.lift {
        let _ = writeln!(text, "lift {l}");
    }
    let _ = writeln!(text, "corpus: {} samples ({})", r.corpus_size, r.corpus);
    let _ = writeln!(
        text,
        "n = {}: {}/{} agree; {} symbolic members, {} {other} members",
        r.n, r.agreements, r.corpus_size, r.symbolic_members, r.other_members
    );
    for d in &r.disagreements {
        let _ = write!(text, "  disagree on {}: symbolic {}, {other} {}", d.poly, d.symbolic, d.other);
        if let (Some(c), Some(v)) = (&d.witness_composition, &d.witness_value) {
            let _ = write!(text, " (witness s = {}, alpha = {} gives {})", c.s, alpha_text(&c.alpha), v);
        }
        text.push('\n');
    }
    text
}

pub fn equiv(
    session: &Session,
    kind: EquivKind,
    sel: &Selection,
    n: u32,
    degree_bound: u32,
    seed: u64,
    budget: u64,
) -> Outcome<Report> {
    let ctx = Context { session, budget };
    let command = format!("equiv {}", kind.name());
    match kind {
        EquivKind::Diff => {
            let q = ctx.query(sel, n, None)?;
            let report = diff_symbolic_equivalence(&q, &corpus_for(q.ideal(), None, n, degree_bound, seed))?;
            Ok(equivalence_report(command, &report, "differential"))
        }
        EquivKind::Mixed => {
            let q = ctx.query(sel, n, Some(ctx.lift(sel)?))?;
            let report = mixed_symbolic_equivalence(&q, &corpus_for(q.ideal(), q.p(), n, degree_bound, seed))?;
            Ok(equivalence_report(command, &report, "mixed"))
        }
        EquivKind::DeltaIndependence => {
            let lifts: Vec<PDerivation> = if sel.lifts.is_empty() {
                session.lifts.iter().map(|(_, d)| d.clone()).collect()
            } else {
                sel.lifts
                    .iter()
                    .map(|name| session.lift(name).cloned().ok_or_else(|| Failure::Input(format!("no lift named `{name}` in the session"))))
                    .collect::<Outcome<_>>()?
            };
            if lifts.len() < 2 {
                return input("delta-independence compares at least two lifts");
            }
            let (ideal, _) = ctx.ideal(sel)?;
            let scope = session.diff_vars.clone().unwrap_or_else(|| (0..session.ring.nvars()).collect());
            let corpus = corpus_for(&ideal, Some(lifts[0].p()), n, degree_bound, seed);
            let report = delta_independence(&ideal, n, &lifts, &corpus, &scope)?;
            let mut text = String::new();
            let _ = writeln!(text, "ideal {} in {}", report.ideal, report.ring);
            for l in &report.lifts {
                let _ = writeln!(text, "lift {l}");
            }
            let _ = writeln!(text, "corpus: {} samples ({})", report.corpus_size, report.corpus);
            let _ = writeln!(
                text,
                "n = {}: {}/{} samples get the same verdict under every lift ({} members)",
                report.n, report.agreements, report.corpus_size, report.members
            );
            for d in &report.disagreements {
                let _ = writeln!(text, "  verdicts differ on {}: {:?}", d.poly, d.verdicts);
            }
            let passed = report.all_agree();
            let json = merge(json!({ "command": command }), to_value(&report));
            Ok(Report { passed, json, text })
        }
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn equivalence_report(command: String, report: &EquivalenceReport, other: &str) -> Report {
    Report {
        passed: report.all_agree(),
        json: merge(json!({ "command": command }), to_value(report)),
        text: equivalence_text(report, other),
    }
}

pub fn verify_paper(expectations: &Expectations, suites: &[String], opts: SuiteOptions) -> Outcome<Report> {
    let reports: Vec<SuiteReport> = if suites.is_empty() {
        run_all(expectations, opts)?
    } else {
        suites.iter().map(|s| run_suite(s, expectations, opts)).collect::<Result<_, _>>()?
    };
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.suite.as_str()).collect();
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{} {} ({} checks)", if r.passed { "PASS" } else { "FAIL" }, r.suite, r.checks.len());
        for c in r.checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(text, "  {}: expected {}, got {}", c.name, c.expected, c.actual);
        }
    }
    let _ = writeln!(text, "{}/{} suites passed", reports.len() - failed.len(), reports.len());
    let json = json!({
        "command": "verify-paper",
        "suites_total": reports.len(),
        "suites_passed": reports.len() - failed.len(),
        "failed": failed,
        "suites": reports,
    });
    Ok(Report {
        passed: failed.is_empty(),
        json,
        text,
    })
}

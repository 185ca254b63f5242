//! Fixed regression suites over small named instances: worked examples,
//! counterexamples and equivalence runs with their expected outcomes.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diffops::{apply_d, diff_power_membership};
use crate::error::{Error, Result};
use crate::groebner::{CertificateKind, Ideal, PrimeCertificate, DEFAULT_BUDGET};
use crate::pderiv::{cp, fermat_quotient, pder_power_membership, prime_power, valuation, FrobeniusLift, PDerivation};
use crate::poly::{CoefficientDomain, ExponentVector, PolyRing, Polynomial, Ring};
use crate::powers::corpus::{random_sparse, Corpus, CorpusSpec};
use crate::powers::equivalence::{delta_independence, diff_symbolic_equivalence, mixed_symbolic_equivalence};
use crate::powers::membership::{mixed_power_witness, symbolic_membership, symbolic_membership_quotient, PowerQuery};

/// Overrides for expected values, keyed `suite/check`.
#[derive(Clone, Debug, Default)]
pub struct Expectations {
    overrides: BTreeMap<String, String>,
}

impl Expectations {
    /// Parses lines of the form `suite/check = value`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Expectations> {
        let mut overrides = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                column: 1,
                message: format!("line {}: expected `suite/check = value`", i + 1),
            })?;
            overrides.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Expectations { overrides })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.overrides.get(key).map(String::as_str)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub budget: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

struct Runner<'a> {
    suite: &'static str,
    expectations: &'a Expectations,
    opts: SuiteOptions,
    checks: Vec<Check>,
}

impl Runner<'_> {
    fn expect(&mut self, name: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        let name = name.into();
        let key = format!("{}/{}", self.suite, name);
        let expected = self
            .expectations
            .get(&key)
            .map(str::to_string)
            .unwrap_or_else(|| expected.to_string());
        let actual = actual.to_string();
        self.checks.push(Check {
            passed: expected == actual,
            name,
            expected,
            actual,
        });
    }

    fn ideal(&self, ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        Ok(Ideal::parse(ring, gens)?.with_budget(self.opts.budget))
    }

    fn corpus(&self, q: &Ideal, p: Option<u64>, n: u32) -> Corpus {
        let spec = CorpusSpec {
            max_product: n,
            seed: self.opts.seed,
            ..CorpusSpec::default()
        };
        Corpus::standard(q.ring(), q.generators(), p, spec)
    }
}

fn ring(domain: CoefficientDomain, vars: &[&str]) -> Ring {
    PolyRing::new(domain, vars.iter().copied()).expect("valid variable names")
}

fn zring(vars: &[&str]) -> Ring {
    ring(CoefficientDomain::Integers, vars)
}

fn poly(r: &Ring, s: &str) -> Result<Polynomial> {
    Polynomial::parse(r, s)
}

type SuiteFn = fn(&mut Runner) -> Result<()>;

/// Every suite, in reporting order.
const SUITES: &[(&str, SuiteFn)] = &[
    ("pderivation-example", pderivation_example),
    ("fermat-valuations", fermat_valuations),
    ("diff-stagnation", diff_stagnation),
    ("diff-symbolic-equivalence", diff_symbolic_suite),
    ("mixed-symbolic-equivalence", mixed_symbolic_suite),
    ("order-asymmetry", order_asymmetry),
    ("delta-independence", delta_independence_suite),
    ("separability-gap", separability_gap),
    ("quotient-symbolic-square", quotient_example),
    ("maximal-ideal-collapse", maximal_ideal_collapse),
    ("cp-divisibility", cp_divisibility),
    ("prime-certificates", prime_certificates),
    ("space-curve-symbolic-square", space_curve),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs one suite. A budget overrun is returned as an error; any other
/// error becomes a failed check.
pub fn run_suite(name: &str, expectations: &Expectations, opts: SuiteOptions) -> Result<SuiteReport> {
    let (suite, f) = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Precondition(format!("unknown suite `{name}`")))?;
    let mut runner = Runner {
        suite,
        expectations,
        opts,
        checks: Vec::new(),
    };
    match f(&mut runner) {
        Ok(()) => {}
        Err(e @ Error::BudgetExceeded { .. }) => return Err(e),
        Err(e) => runner.expect("completes", "ok", format!("error: {e}")),
    }
    Ok(SuiteReport {
        suite: suite.to_string(),
        passed: runner.checks.iter().all(|c| c.passed),
        checks: runner.checks,
    })
}

pub fn run_all(expectations: &Expectations, opts: SuiteOptions) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|(n, _)| run_suite(n, expectations, opts)).collect()
}

fn pderivation_example(r: &mut Runner) -> Result<()> {
    let zr = zring(&["x", "y"]);
    let d = PDerivation::standard(&zr, 2)?;
    for (f, expected) in [("x + 2", "-2*x - 1"), ("y + 2", "-2*y - 1"), ("2", "-1"), ("x", "0"), ("y", "0")] {
        r.expect(format!("delta({f})"), expected, d.apply(&poly(&zr, f)?)?);
    }
    let a = r.ideal(&zr, &["4", "x + 2", "y + 2"])?;
    let f = poly(&zr, "(x + 2)*(y + 2)")?;
    r.expect("f in a^2", true, a.pow(2).contains(&f)?);
    r.expect("f in a<2>_p", false, pder_power_membership(&a, 2, &d, &f)?);
    Ok(())
}

fn fermat_valuations(r: &mut Runner) -> Result<()> {
    for p in [2u64, 3, 5] {
        for n in 1..=6u32 {
            let q = fermat_quotient(&prime_power(p, n), p);
            let closed = prime_power(p, n - 1) - prime_power(p, p as u32 * n - 1);
            r.expect(format!("delta({p}^{n}) closed form"), closed, &q);
            r.expect(format!("v_{p}(delta({p}^{n}))"), n - 1, valuation(&q, p).unwrap_or(u32::MAX));
        }
    }
    Ok(())
}

fn diff_stagnation(r: &mut Runner) -> Result<()> {
    let z = zring(&[]);
    let two = r.ideal(&z, &["2"])?;
    let f = poly(&z, "2")?;
    for n in 1..=5 {
        r.expect(format!("Z: 2 in (2)<{n}>"), true, diff_power_membership(&two, n, &f)?);
        r.expect(format!("Z: 2 in (2)^({n})"), n == 1, symbolic_membership(&two, n, &f)?);
    }
    let zx = zring(&["x"]);
    for (p, gens) in [(2, ["2", "x"]), (3, ["3", "x"])] {
        let q = r.ideal(&zx, &gens)?;
        let f = Polynomial::from_i64(&zx, p);
        for n in 1..=5 {
            r.expect(format!("({p}, x): {p} in Q<{n}>"), true, diff_power_membership(&q, n, &f)?);
            r.expect(format!("({p}, x): {p} in Q^({n})"), n == 1, symbolic_membership(&q, n, &f)?);
        }
    }
    Ok(())
}

fn diff_symbolic_suite(r: &mut Runner) -> Result<()> {
    let zxy = zring(&["x", "y"]);
    let zx = zring(&["x"]);
    let cases = [
        (r.ideal(&zxy, &["x - 2", "y - 3"])?, CertificateKind::Linear),
        (r.ideal(&zx, &["x^2 + 1"])?, CertificateKind::PrincipalIrreducible),
    ];
    for (q, kind) in cases {
        let cert = PrimeCertificate::from_generators(kind, &q)?;
        for n in 1..=3 {
            let query = PowerQuery::new(q.clone(), cert.clone(), n)?;
            let report = diff_symbolic_equivalence(&query, &r.corpus(&q, None, n))?;
            r.expect(format!("{q} n={n} disagreements"), 0, report.disagreements.len());
        }
    }
    let q = r.ideal(&zx, &["x^2 + 1"])?;
    let f = poly(&zx, "(x^2 + 1)^2")?;
    r.expect("(x^2 + 1)^2 in Q^(2)", true, symbolic_membership(&q, 2, &f)?);
    r.expect("(x^2 + 1)^2 in Q^(3)", false, symbolic_membership(&q, 3, &f)?);
    r.expect("(x^2 + 1)^2 in Q<2>", true, diff_power_membership(&q, 2, &f)?);
    r.expect("(x^2 + 1)^2 in Q<3>", false, diff_power_membership(&q, 3, &f)?);
    Ok(())
}

fn mixed_symbolic_suite(r: &mut Runner) -> Result<()> {
    let zx = zring(&["x"]);
    let zxy = zring(&["x", "y"]);
    let cases = [
        (r.ideal(&zx, &["2", "x"])?, 2, CertificateKind::Linear),
        (r.ideal(&zx, &["2", "x^2 + x + 1"])?, 2, CertificateKind::PIrreducible),
        (r.ideal(&zxy, &["3", "x"])?, 3, CertificateKind::Linear),
    ];
    for (q, p, kind) in cases {
        let cert = PrimeCertificate::from_generators(kind, &q)?;
        let d = PDerivation::standard(q.ring(), p)?;
        for n in 1..=3 {
            let query = PowerQuery::new(q.clone(), cert.clone(), n)?.with_derivation(d.clone())?;
            let report = mixed_symbolic_equivalence(&query, &r.corpus(&q, Some(p), n))?;
            r.expect(format!("{q} n={n} disagreements"), 0, report.disagreements.len());
        }
    }
    Ok(())
}

fn order_asymmetry(r: &mut Runner) -> Result<()> {
    let zx = zring(&["x"]);
    let q = r.ideal(&zx, &["2", "x"])?;
    let d = PDerivation::standard(&zx, 2)?;
    let f = poly(&zx, "2*x")?;
    let dx = |g: &Polynomial| apply_d(&ExponentVector::new([1]), g);
    let second = apply_d(&ExponentVector::new([2]), &f).scale_i64(2);
    r.expect("d^2/dx^2(2x) in Q", true, q.contains(&second)?);
    let dx_delta = dx(&d.apply(&f)?);
    r.expect("(d/dx . delta)(2x)", "-2*x", &dx_delta);
    r.expect("(d/dx . delta)(2x) in Q", true, q.contains(&dx_delta)?);
    let delta2 = d.iterate(2, &f)?;
    r.expect("delta^2(2x)", "-x^4", &delta2);
    r.expect("delta^2(2x) in Q", true, q.contains(&delta2)?);
    let delta_dx = d.apply(&dx(&f))?;
    r.expect("(delta . d/dx)(2x)", "-1", &delta_dx);
    r.expect("(delta . d/dx)(2x) in Q", false, q.contains(&delta_dx)?);
    let w = mixed_power_witness(&q, 3, &d, &f, &[0])?;
    r.expect("2x in Q<3>_mix", false, w.is_none());
    r.expect(
        "witness (s, alpha)",
        "(1, [1])",
        w.map(|w| format!("({}, {:?})", w.s, w.alpha.as_slice())).unwrap_or_default(),
    );
    r.expect("2x in Q^(3)", false, symbolic_membership(&q, 3, &f)?);
    r.expect("2x in Q<2>_mix", true, mixed_power_witness(&q, 2, &d, &f, &[0])?.is_none());
    let four = poly(&zx, "4")?;
    let w4 = mixed_power_witness(&q, 3, &d, &four, &[0])?;
    r.expect("4 in Q<3>_mix", false, w4.is_none());
    r.expect("delta^2(4)", "-21", w4.map(|w| w.value.to_string()).unwrap_or_default());
    Ok(())
}

fn delta_independence_suite(r: &mut Runner) -> Result<()> {
    let zx = zring(&["x"]);
    let q = r.ideal(&zx, &["2", "x"])?;
    let lifts = [
        PDerivation::standard(&zx, 2)?,
        PDerivation::new(FrobeniusLift::parse(&zx, 2, "x -> x^2 + 2*x")?)?,
    ];
    for n in 1..=3 {
        let report = delta_independence(&q, n, &lifts, &r.corpus(&q, Some(2), n), &[0])?;
        r.expect(format!("n={n} disagreements"), 0, report.disagreements.len());
    }
    let other = PDerivation::new(FrobeniusLift::parse(&zx, 2, "x -> x^2 + 2")?)?;
    let f = poly(&zx, "2*x")?;
    for (name, d) in [("x -> x^2", &lifts[0]), ("x -> x^2 + 2", &other)] {
        r.expect(format!("2x in Q<3>_mix under {name}"), false, mixed_power_witness(&q, 3, d, &f, &[0])?.is_none());
    }
    Ok(())
}

/// `Z[t, x]`, `Q = (2, x^2 - t)`, with a lift fixing `w = x^2 - t` up to
/// `φ(w) = w^2`, so `δ(w) = 0`; differentiation only in `x`.
fn separability_gap(r: &mut Runner) -> Result<()> {
    let zr = zring(&["t", "x"]);
    let q = r.ideal(&zr, &["2", "x^2 - t"])?;
    r.expect("Q certified prime", true, PrimeCertificate::LinearKernel.check(&q)?);
    let lift = FrobeniusLift::parse(&zr, 2, "t -> x^4 - (x^2 - t)^2, x -> x^2")?;
    let d = PDerivation::new(lift)?;
    let w = poly(&zr, "x^2 - t")?;
    r.expect("delta(w)", "0", d.apply(&w)?);
    let dw = apply_d(&ExponentVector::new([0, 1]), &w);
    r.expect("d/dx(w)", "2*x", &dw);
    r.expect("d/dx(w) in Q", true, q.contains(&dw)?);
    r.expect("w in Q<2>_mix", true, mixed_power_witness(&q, 2, &d, &w, &[1])?.is_none());
    r.expect("w in Q^(2)", false, symbolic_membership(&q, 2, &w)?);
    Ok(())
}

fn quotient_example(r: &mut Runner) -> Result<()> {
    let zr = zring(&["x", "y", "z"]);
    let q = r.ideal(&zr, &["2", "x", "y"])?;
    let rel = r.ideal(&zr, &["y^2 - x*z"])?;
    let x = poly(&zr, "x")?;
    let z = poly(&zr, "z")?;
    let power = q.pow(2).sum(&rel)?;
    r.expect("z*x in Q^2 + (y^2 - x*z)", true, power.contains(&(&z * &x))?);
    r.expect("z in Q", false, q.contains(&z)?);
    r.expect("x in Q^(2) mod relations", true, symbolic_membership_quotient(&q, &rel, 2, &x)?);
    let m = r.ideal(&zr, &["2", "x", "y", "z"])?;
    r.expect("x in m^2 + (y^2 - x*z)", false, m.pow(2).sum(&rel)?.contains(&x)?);
    let f = poly(&zr, "x*y + 2*z")?;
    r.expect(
        "no relations agrees with plain symbolic",
        symbolic_membership(&q, 2, &f)?,
        symbolic_membership_quotient(&q, &Ideal::zero(&zr), 2, &f)?,
    );
    Ok(())
}

fn maximal_ideal_collapse(r: &mut Runner) -> Result<()> {
    let cases = [(zring(&["x"]), vec!["2", "x"], 2u64), (zring(&["x", "y"]), vec!["3", "x", "y"], 3)];
    for (zr, gens, p) in cases {
        let m = r.ideal(&zr, &gens)?;
        let d = PDerivation::standard(&zr, p)?;
        let scope: Vec<usize> = (0..zr.nvars()).collect();
        for n in 1..=3 {
            let power = m.pow(n);
            let corpus = r.corpus(&m, Some(p), n);
            let mut mismatches = 0;
            for f in &corpus.polys {
                let mixed = mixed_power_witness(&m, n, &d, f, &scope)?.is_none();
                if mixed != power.contains(f)? {
                    mismatches += 1;
                }
            }
            r.expect(format!("{m} n={n} mismatches"), 0, mismatches);
        }
    }
    Ok(())
}

fn cp_divisibility(r: &mut Runner) -> Result<()> {
    let zr = zring(&["x", "y"]);
    let mut rng = ChaCha8Rng::seed_from_u64(r.opts.seed);
    let mut failures = 0;
    for p in [2u64, 3, 5] {
        for _ in 0..10 {
            let a = random_sparse(&zr, &mut rng);
            let b = random_sparse(&zr, &mut rng);
            let c = cp(&a, &b, p);
            let meet = Ideal::principal(&a).intersect(&Ideal::principal(&b))?;
            if !meet.contains(&c)? {
                failures += 1;
            }
        }
    }
    r.expect("C_p(a, b) outside (a) ∩ (b)", 0, failures);
    r.expect("C_2(x, y)", "-x*y", cp(&poly(&zr, "x")?, &poly(&zr, "y")?, 2));
    Ok(())
}

fn prime_certificates(r: &mut Runner) -> Result<()> {
    let zx = zring(&["x"]);
    let good = r.ideal(&zx, &["2", "x^2 + x + 1"])?;
    let bad = r.ideal(&zx, &["2", "x^2 + 1"])?;
    for (name, q, expected) in [("(2, x^2 + x + 1)", &good, true), ("(2, x^2 + 1)", &bad, false)] {
        let cert = PrimeCertificate::from_generators(CertificateKind::PIrreducible, q)?;
        r.expect(format!("{name} p-irreducible"), expected, cert.check(q)?);
    }
    let zxy = zring(&["x", "y"]);
    let lin = r.ideal(&zxy, &["x - 2", "y - 3"])?;
    r.expect("(x - 2, y - 3) linear", true, PrimeCertificate::LinearKernel.check(&lin)?);
    Ok(())
}

/// `Q = (2, x^3 - yz, y^2 - xz, z^2 - x^2 y)`: an element of `(Q^2 : z^∞)`
/// outside `Q^2` is a symbolic-square element that is not in the square.
fn space_curve(r: &mut Runner) -> Result<()> {
    let zr = zring(&["x", "y", "z"]);
    let q = r.ideal(&zr, &["2", "x^3 - y*z", "y^2 - x*z", "z^2 - x^2*y"])?;
    let q2 = q.pow(2);
    let (sat, _) = q2.saturation(&poly(&zr, "z")?)?;
    let mut witness = None;
    for g in sat.generators() {
        if !q2.contains(g)? {
            witness = Some(g.clone());
            break;
        }
    }
    r.expect("witness found", true, witness.is_some());
    let Some(w) = witness else { return Ok(()) };
    r.expect("witness", "x^5 + x*y^3 + x^2*y*z + z^3", &w);
    r.expect("z * witness in Q^2", true, q2.contains(&(&poly(&zr, "z")? * &w))?);
    r.expect("witness in Q^2", false, q2.contains(&w)?);
    r.expect("witness in Q^(2)", true, symbolic_membership(&q, 2, &w)?);
    let d = PDerivation::standard(&zr, 2)?;
    r.expect("witness in Q<2>_mix", true, mixed_power_witness(&q, 2, &d, &w, &[0, 1, 2])?.is_none());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_replace_expected_values() {
        let exp = Expectations::parse("# comment\npderivation-example/delta(2) = 7\n").unwrap();
        let report = run_suite("pderivation-example", &exp, SuiteOptions::default()).unwrap();
        let check = report.checks.iter().find(|c| c.name == "delta(2)").unwrap();
        assert_eq!(check.expected, "7");
        assert!(!check.passed && !report.passed);
        assert!(Expectations::parse("no equals sign").is_err());
        assert!(run_suite("nope", &exp, SuiteOptions::default()).is_err());
    }
}

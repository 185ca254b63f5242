//! The line-oriented session format.
//!
//! ```text
//! # comment
//! ring Z [x, y]                  # or Q [..], GF(p) [..]
//! prime 2
//! ideal Q = 2, x
//! relations R = y^2 - x*z
//! lift F : x -> x^2, y -> y^2    # needs a prime
//! cert Q = p-irreducible         # linear | p-irreducible | principal-irreducible | trusted
//! diffvars x
//! ```
//!
//! `ring` comes first. Names share one namespace and must be declared before
//! they are referenced.

use std::fmt;

use diffpow_core::groebner::{CertificateKind, Ideal, PrimeCertificate};
use diffpow_core::pderiv::{FrobeniusLift, PDerivation};
use diffpow_core::poly::{is_prime, CoefficientDomain, PolyRing, Polynomial, Ring};
use diffpow_core::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SessionError {}

#[derive(Clone, Debug)]
pub struct NamedIdeal {
    pub name: String,
    pub ideal: Ideal,
    pub certificate: Option<PrimeCertificate>,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub ring: Ring,
    pub prime: Option<u64>,
    pub ideals: Vec<NamedIdeal>,
    pub relations: Vec<(String, Ideal)>,
    pub lifts: Vec<(String, PDerivation)>,
    pub diff_vars: Option<Vec<usize>>,
}

impl Session {
    pub fn ideal(&self, name: &str) -> Option<&NamedIdeal> {
        self.ideals.iter().find(|i| i.name == name)
    }

    pub fn relation(&self, name: &str) -> Option<&Ideal> {
        self.relations.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn lift(&self, name: &str) -> Option<&PDerivation> {
        self.lifts.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    fn has_name(&self, name: &str) -> bool {
        self.ideal(name).is_some() || self.relation(name).is_some() || self.lift(name).is_some()
    }
}

/// One line being parsed; columns are 1-based byte offsets into the line.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn err(&self, at: &str, message: impl Into<String>) -> SessionError {
        SessionError {
            line: self.number,
            column: self.column(at),
            message: message.into(),
        }
    }

    /// Column of `at`, which must be a subslice of the line.
    fn column(&self, at: &str) -> usize {
        at.as_ptr() as usize - self.text.as_ptr() as usize + 1
    }

    /// Rewrites a core error raised while parsing `at`.
    fn core_err(&self, at: &str, e: Error) -> SessionError {
        match e {
            Error::Parse { column, message } => SessionError {
                line: self.number,
                column: self.column(at) + column - 1,
                message,
            },
            other => self.err(at, other.to_string()),
        }
    }
}

fn trim(s: &str) -> &str {
    s.trim_matches(|c: char| c.is_whitespace())
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `s` on commas, trimming each piece but keeping it a subslice.
fn pieces(s: &str) -> Vec<&str> {
    s.split(',').map(trim).collect()
}

fn split_name<'a>(line: &Line<'a>, rest: &'a str, sep: char) -> Result<(&'a str, &'a str), SessionError> {
    let Some((lhs, rhs)) = rest.split_once(sep) else {
        return Err(line.err(rest, format!("expected `NAME {sep} ...`")));
    };
    let name = trim(lhs);
    if !is_identifier(name) {
        return Err(line.err(if name.is_empty() { rest } else { name }, "expected a name"));
    }
    Ok((name, rhs))
}

fn parse_polys(line: &Line, ring: &Ring, body: &str) -> Result<Vec<Polynomial>, SessionError> {
    let mut out = Vec::new();
    for piece in pieces(body) {
        if piece.is_empty() {
            return Err(line.err(piece, "empty generator"));
        }
        out.push(Polynomial::parse(ring, piece).map_err(|e| line.core_err(piece, e))?);
    }
    Ok(out)
}

fn parse_ring(line: &Line, rest: &str) -> Result<Ring, SessionError> {
    let Some(open) = rest.find('[') else {
        return Err(line.err(rest, "expected `ring DOMAIN [vars]`"));
    };
    let domain_text = trim(&rest[..open]);
    let domain = match domain_text {
        "Z" => CoefficientDomain::Integers,
        "Q" => CoefficientDomain::Rationals,
        d if d.starts_with("GF(") && d.ends_with(')') => {
            let p: u64 = d[3..d.len() - 1]
                .trim()
                .parse()
                .map_err(|_| line.err(domain_text, "expected GF(p) with p an integer"))?;
            CoefficientDomain::prime_field(p).map_err(|e| line.core_err(domain_text, e))?
        }
        _ => return Err(line.err(if domain_text.is_empty() { rest } else { domain_text }, "unknown coefficient domain")),
    };
    let after = &rest[open + 1..];
    let Some(close) = after.find(']') else {
        return Err(line.err(&rest[open..], "missing `]`"));
    };
    if !trim(&after[close + 1..]).is_empty() {
        return Err(line.err(trim(&after[close + 1..]), "unexpected text after `]`"));
    }
    let inner = &after[..close];
    let vars: Vec<&str> = if trim(inner).is_empty() { Vec::new() } else { pieces(inner) };
    for v in &vars {
        if !is_identifier(v) {
            return Err(line.err(v, format!("`{v}` is not a variable name")));
        }
        if vars.iter().filter(|w| *w == v).count() > 1 {
            return Err(line.err(v, format!("variable `{v}` declared twice")));
        }
    }
    PolyRing::new(domain, vars).map_err(|e| line.core_err(inner, e))
}

/// The first certificate kind that validates for `q`, or none.
pub fn detect_certificate(q: &Ideal) -> Result<Option<PrimeCertificate>, Error> {
    for kind in [CertificateKind::Linear, CertificateKind::PIrreducible, CertificateKind::PrincipalIrreducible] {
        if let Ok(cert) = PrimeCertificate::from_generators(kind, q) {
            match cert.check(q) {
                Ok(true) => return Ok(Some(cert)),
                Err(e @ Error::BudgetExceeded { .. }) => return Err(e),
                _ => {}
            }
        }
    }
    Ok(None)
}

pub fn parse_session(text: &str) -> Result<Session, SessionError> {
    let mut session: Option<Session> = None;
    for (i, raw) in text.lines().enumerate() {
        let code = raw.split('#').next().unwrap_or("");
        let content = trim(code);
        if content.is_empty() {
            continue;
        }
        let line = Line { number: i + 1, text: raw };
        let (keyword, rest) = match content.find(char::is_whitespace) {
            Some(k) => (&content[..k], trim(&content[k..])),
            None => (content, &content[content.len()..]),
        };
        if keyword == "ring" {
            if session.is_some() {
                return Err(line.err(keyword, "ring declared twice"));
            }
            session = Some(Session {
                ring: parse_ring(&line, rest)?,
                prime: None,
                ideals: Vec::new(),
                relations: Vec::new(),
                lifts: Vec::new(),
                diff_vars: None,
            });
            continue;
        }
        let Some(s) = session.as_mut() else {
            return Err(line.err(keyword, "missing ring: the first declaration must be `ring`"));
        };
        match keyword {
            "prime" => {
                if s.prime.is_some() {
                    return Err(line.err(keyword, "prime declared twice"));
                }
                let p: u64 = rest.parse().map_err(|_| line.err(rest, "expected an integer"))?;
                if !is_prime(p) {
                    return Err(line.err(rest, format!("{p} is not prime")));
                }
                s.prime = Some(p);
            }
            "ideal" | "relations" => {
                let (name, body) = split_name(&line, rest, '=')?;
                if s.has_name(name) {
                    return Err(line.err(name, format!("`{name}` is already declared")));
                }
                let gens = parse_polys(&line, &s.ring, body)?;
                let ideal = Ideal::new(&s.ring, gens).map_err(|e| line.core_err(body, e))?;
                if keyword == "ideal" {
                    s.ideals.push(NamedIdeal {
                        name: name.to_string(),
                        ideal,
                        certificate: None,
                    });
                } else {
                    s.relations.push((name.to_string(), ideal));
                }
            }
            "lift" => {
                let (name, body) = split_name(&line, rest, ':')?;
                if s.has_name(name) {
                    return Err(line.err(name, format!("`{name}` is already declared")));
                }
                let Some(p) = s.prime else {
                    return Err(line.err(keyword, "a lift needs a `prime` declared before it"));
                };
                let lift = FrobeniusLift::parse(&s.ring, p, body).map_err(|e| line.core_err(body, e))?;
                let d = PDerivation::new(lift).map_err(|e| line.core_err(body, e))?;
                s.lifts.push((name.to_string(), d));
            }
            "cert" => {
                let (name, body) = split_name(&line, rest, '=')?;
                let kind_text = trim(body);
                let Some(kind) = CertificateKind::parse(kind_text) else {
                    return Err(line.err(body, format!("unknown certificate kind `{kind_text}`")));
                };
                let Some(entry) = s.ideals.iter_mut().find(|i| i.name == name) else {
                    return Err(line.err(name, format!("`{name}` is not a declared ideal")));
                };
                if entry.certificate.is_some() {
                    return Err(line.err(name, format!("`{name}` already has a certificate")));
                }
                let cert = PrimeCertificate::from_generators(kind, &entry.ideal).map_err(|e| line.core_err(kind_text, e))?;
                if !cert.check(&entry.ideal).map_err(|e| line.core_err(kind_text, e))? {
                    return Err(line.err(kind_text, format!("{kind} certificate does not validate for {}", entry.ideal)));
                }
                entry.certificate = Some(cert);
            }
            "diffvars" => {
                if s.diff_vars.is_some() {
                    return Err(line.err(keyword, "diffvars declared twice"));
                }
                let mut vars = Vec::new();
                for v in pieces(rest) {
                    match s.ring.var_index(v) {
                        Some(k) if !vars.contains(&k) => vars.push(k),
                        Some(_) => return Err(line.err(v, format!("`{v}` listed twice"))),
                        None => return Err(line.err(v, format!("unknown variable `{v}`"))),
                    }
                }
                s.diff_vars = Some(vars);
            }
            _ => return Err(line.err(keyword, format!("unknown declaration `{keyword}`"))),
        }
    }
    session.ok_or(SessionError {
        line: 1,
        column: 1,
        message: "missing ring".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> SessionError {
        parse_session(text).unwrap_err()
    }

    #[test]
    fn full_session() {
        let s = parse_session("ring Z [x, y]\nprime 2\nideal Q = 2, x\nlift F : x -> x^2, y -> y^2").unwrap();
        assert_eq!(s.ring.to_string(), "Z[x, y]");
        assert_eq!(s.prime, Some(2));
        assert_eq!(s.ideal("Q").unwrap().ideal.to_string(), "(2, x)");
        assert_eq!(s.lift("F").unwrap().lift().to_string(), "x -> x^2, y -> y^2");
    }

    #[test]
    fn lift_must_match_frobenius() {
        let e = err("ring Z [x]\nprime 2\nlift F : x -> x^2 + 1");
        assert_eq!(e.line, 3);
        assert!(e.message.contains("not congruent"), "{}", e.message);
    }

    #[test]
    fn empty_file_is_missing_ring() {
        assert_eq!(err("").message, "missing ring");
        assert_eq!(err("# only a comment\n\n").message, "missing ring");
    }

    #[test]
    fn ring_comes_first() {
        let e = err("prime 2\nring Z [x]");
        assert_eq!((e.line, e.column), (1, 1));
        assert!(e.message.starts_with("missing ring"));
    }

    #[test]
    fn duplicate_names() {
        let e = err("ring Z [x]\nprime 2\nideal Q = x\nlift Q : x -> x^2");
        assert_eq!((e.line, e.column), (4, 6));
        assert!(e.message.contains("already declared"));
    }

    #[test]
    fn use_before_declaration() {
        let e = err("ring Z [x]\ncert Q = linear\nideal Q = x");
        assert_eq!((e.line, e.column), (2, 6));
        let e = err("ring Z [x]\nlift F : x -> x^2\nprime 2");
        assert_eq!(e.line, 2);
    }

    #[test]
    fn polynomial_errors_point_into_the_line() {
        let e = err("ring Z [x]\nideal Q = 2, x + z");
        assert_eq!((e.line, e.column), (2, 18));
        let e = err("ring Z [x]\nideal Q = 2, x +");
        assert_eq!(e.line, 2);
    }

    #[test]
    fn certificates_are_checked() {
        let s = parse_session("ring Z [x]\nideal Q = 2, x^2 + x + 1\ncert Q = p-irreducible").unwrap();
        assert!(s.ideal("Q").unwrap().certificate.is_some());
        let e = err("ring Z [x]\nideal Q = 2, x^2 + 1\ncert Q = p-irreducible");
        assert!(e.message.contains("does not validate"));
        let e = err("ring Z [x]\nideal Q = 2, x\ncert Q = prime");
        assert!(e.message.contains("unknown certificate kind"));
    }

    #[test]
    fn domains_and_diffvars() {
        let s = parse_session("ring GF(5) [a]\n").unwrap();
        assert_eq!(s.ring.to_string(), "GF(5)[a]");
        let s = parse_session("ring Q []\n").unwrap();
        assert_eq!(s.ring.nvars(), 0);
        let s = parse_session("ring Z [t, x] # comment\ndiffvars x").unwrap();
        assert_eq!(s.diff_vars, Some(vec![1]));
        assert!(parse_session("ring GF(4) [x]").is_err());
        assert!(parse_session("ring Z [x, x]").is_err());
        assert!(parse_session("ring Z [x]\ndiffvars y").is_err());
    }

    #[test]
    fn certificate_detection() {
        let s = parse_session("ring Z [x, y]\nideal Q = x - 2, y - 3").unwrap();
        let cert = detect_certificate(&s.ideal("Q").unwrap().ideal).unwrap().unwrap();
        assert_eq!(cert.kind(), CertificateKind::Linear);
        let s = parse_session("ring Z [x]\nideal Q = 2, x^2 + 1").unwrap();
        assert!(detect_certificate(&s.ideal("Q").unwrap().ideal).unwrap().is_none());
    }
}

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::domain::CoefficientDomain;

/// A polynomial ring `domain[vars]` with a fixed variable order.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    domain: CoefficientDomain,
    vars: Vec<String>,
}

/// Shared handle to a ring; every polynomial carries one.
pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new<S: Into<String>>(domain: CoefficientDomain, vars: impl IntoIterator<Item = S>) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for v in &vars {
            if !is_identifier(v) {
                return Err(Error::InvalidVariables(format!("`{v}` is not an identifier")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidVariables(format!("`{v}` declared twice")));
            }
        }
        Ok(Arc::new(PolyRing { domain, vars }))
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same variables over another coefficient domain.
    pub fn with_domain(&self, domain: CoefficientDomain) -> Ring {
        Arc::new(PolyRing {
            domain,
            vars: self.vars.clone(),
        })
    }

    /// A ring with one extra variable placed before all others, named so it
    /// cannot collide with user variables.
    pub(crate) fn with_leading_aux_var(&self) -> Ring {
        let mut name = String::from("_t");
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = vec![name];
        vars.extend(self.vars.iter().cloned());
        Arc::new(PolyRing {
            domain: self.domain,
            vars,
        })
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.domain, self.vars.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(PolyRing::new(CoefficientDomain::Integers, ["x", "x"]).is_err());
        assert!(PolyRing::new(CoefficientDomain::Integers, ["2x"]).is_err());
        let r = PolyRing::new(CoefficientDomain::Integers, ["x", "y"]).unwrap();
        assert_eq!(r.var_index("y"), Some(1));
        assert_eq!(r.to_string(), "Z[x, y]");
    }

    #[test]
    fn empty_variable_list_is_allowed() {
        let r = PolyRing::new(CoefficientDomain::Integers, Vec::<String>::new()).unwrap();
        assert_eq!(r.nvars(), 0);
    }
}

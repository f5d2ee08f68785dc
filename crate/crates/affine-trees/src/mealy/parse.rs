//! Parser for the wreath-recursion definition language.
//!
//! One definition per line (`;` also separates definitions):
//!
//! ```text
//! # the 4-state automaton of the principal example
//! a = (d, d) (01)
//! b = (c, c)
//! c = (a, b)
//! d = (b, a)
//! ```
//!
//! Each right-hand side lists the first-level sections by name, one per
//! letter, followed by an optional root permutation in cycle notation
//! (omitted means identity). Section entries must be single state names;
//! products are built with `compose` after parsing.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::mealy::{Permutation, State, TreeAutomorphism};

/// The result of parsing: one underlying machine, with every defined name
/// available as a canonical [`TreeAutomorphism`].
#[derive(Debug, Clone)]
pub struct Definitions {
    names: Vec<String>,
    automorphisms: BTreeMap<String, TreeAutomorphism>,
    d: usize,
}

impl Definitions {
    /// Defined names, in definition order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn get(&self, name: &str) -> Result<TreeAutomorphism> {
        self.automorphisms
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UndefinedState { name: name.to_string(), line: 0 })
    }

    /// Evaluates a product expression over defined names: factors separated
    /// by `*`, each a name with an optional integer exponent (`a*c`,
    /// `t^-1`, `x^3`).
    pub fn eval(&self, expr: &str) -> Result<TreeAutomorphism> {
        let mut acc = TreeAutomorphism::identity(self.d);
        for factor in expr.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(Error::InvalidArgument(format!("empty factor in `{expr}`")));
            }
            let (name, exp) = match factor.split_once('^') {
                None => (factor, 1i64),
                Some((n, e)) => (
                    n.trim(),
                    e.trim().parse::<i64>().map_err(|_| {
                        Error::InvalidArgument(format!("bad exponent `{e}` in `{expr}`"))
                    })?,
                ),
            };
            let base = self.get(name)?;
            let power = if exp >= 0 { base } else { base.inverse() };
            for _ in 0..exp.unsigned_abs() {
                acc = acc.compose(&power)?;
            }
        }
        Ok(acc)
    }
}

struct Def {
    name: String,
    sections: Vec<String>,
    perm: String,
    line: usize,
}

/// Parses the definition language into a map of canonical automorphisms.
pub fn parse_wreath(text: &str) -> Result<Definitions> {
    let mut defs: Vec<Def> = Vec::new();
    for (line_idx, raw_line) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let line = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        for chunk in line.split(';') {
            if chunk.trim().is_empty() {
                continue;
            }
            defs.push(parse_definition(chunk, line_no)?);
        }
    }
    if defs.is_empty() {
        return Err(Error::Parse { line: 1, col: 1, msg: "no definitions found".into() });
    }
    let d = defs[0].sections.len();
    let mut index: BTreeMap<&str, u32> = BTreeMap::new();
    for (i, def) in defs.iter().enumerate() {
        if def.sections.len() != d {
            return Err(Error::Parse {
                line: def.line,
                col: 1,
                msg: format!(
                    "definition of `{}` has {} sections, expected {}",
                    def.name,
                    def.sections.len(),
                    d
                ),
            });
        }
        if index.insert(&def.name, i as u32).is_some() {
            return Err(Error::Parse {
                line: def.line,
                col: 1,
                msg: format!("state `{}` defined twice", def.name),
            });
        }
    }
    let mut states = Vec::with_capacity(defs.len());
    for def in &defs {
        let mut next = Vec::with_capacity(d);
        for s in &def.sections {
            let &target = index
                .get(s.as_str())
                .ok_or_else(|| Error::UndefinedState { name: s.clone(), line: def.line })?;
            next.push(target);
        }
        let perm = if def.perm.is_empty() {
            Permutation::identity(d)
        } else {
            Permutation::parse_cycles(&def.perm, d).map_err(|e| Error::Parse {
                line: def.line,
                col: 1,
                msg: e.to_string(),
            })?
        };
        states.push(State { next, out: perm });
    }
    let names: Vec<String> = defs.iter().map(|def| def.name.clone()).collect();
    let automorphisms = names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let machine = TreeAutomorphism::raw(d, states.clone(), i as u32);
            (name.clone(), machine.minimize())
        })
        .collect();
    Ok(Definitions { names, automorphisms, d })
}

fn parse_definition(chunk: &str, line: usize) -> Result<Def> {
    let err = |col: usize, msg: String| Error::Parse { line, col, msg };
    let col_of = |rest: &str| chunk.len() - rest.len() + 1;

    let (lhs, rhs) = chunk
        .split_once('=')
        .ok_or_else(|| err(1, "expected `name = (sections) perm?`".into()))?;
    let name = lhs.trim();
    if name.is_empty() || !is_identifier(name) {
        return Err(err(1, format!("invalid state name `{}`", name)));
    }
    let rhs_trimmed = rhs.trim_start();
    if !rhs_trimmed.starts_with('(') {
        return Err(err(col_of(rhs_trimmed), "expected `(` to open the section list".into()));
    }
    let close = rhs_trimmed
        .find(')')
        .ok_or_else(|| err(col_of(rhs_trimmed), "unterminated section list".into()))?;
    let body = &rhs_trimmed[1..close];
    let perm = rhs_trimmed[close + 1..].trim().to_string();
    let mut sections = Vec::new();
    for part in body.split(',') {
        let s = part.trim();
        if !is_identifier(s) {
            return Err(err(
                col_of(part),
                format!("section entry `{s}` must be a single state name"),
            ));
        }
        sections.push(s.to_string());
    }
    Ok(Def { name: name.to_string(), sections, perm, line })
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl TreeAutomorphism {
    pub(crate) fn raw(d: usize, states: Vec<State>, start: u32) -> TreeAutomorphism {
        TreeAutomorphism { d, states, start, canonical: false }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G_DEFS: &str = "a = (d, d) (01)\nb = (c, c)\nc = (a, b)\nd = (b, a)";

    #[test]
    fn parses_principal_example() {
        let defs = parse_wreath(G_DEFS).unwrap();
        assert_eq!(defs.names(), &["a", "b", "c", "d"]);
        assert_eq!(defs.alphabet_size(), 2);
        let a = defs.get("a").unwrap();
        // a = (d,d)(01): first letter flips, then d = (b,a) fixes 0
        assert_eq!(a.act(&[0, 0]).unwrap(), vec![1, 0]);
        assert_eq!(a.section(&[0]).unwrap(), defs.get("d").unwrap());
    }

    #[test]
    fn identity_definition() {
        let defs = parse_wreath("e = (e, e)").unwrap();
        assert!(defs.get("e").unwrap().is_identity());
    }

    #[test]
    fn comments_and_semicolons() {
        let defs = parse_wreath("# two involutions\ns = (e, e) (01); e = (e, e)").unwrap();
        assert_eq!(defs.names(), &["s", "e"]);
    }

    #[test]
    fn products_in_sections_rejected() {
        let e = parse_wreath("b = (b, ba) (01)\na = (b, b)");
        match e {
            Err(Error::UndefinedState { name, .. }) => assert_eq!(name, "ba"),
            other => panic!("expected undefined state, got {other:?}"),
        }
        // inline products are not identifiers
        assert!(parse_wreath("b = (b, b*a)").is_err());
    }

    #[test]
    fn errors_carry_position() {
        match parse_wreath("a = d, d") {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 1);
                assert!(col >= 4);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_wreath("a = (a, a)\nz = (a, q)") {
            Err(Error::UndefinedState { name, line }) => {
                assert_eq!(name, "q");
                assert_eq!(line, 2);
            }
            other => panic!("expected undefined state, got {other:?}"),
        }
    }

    #[test]
    fn non_permutation_rejected() {
        assert!(parse_wreath("a = (a, a) (00)").is_err());
    }

    #[test]
    fn arity_mismatch_rejected() {
        assert!(parse_wreath("a = (a, a)\nb = (a, a, a)").is_err());
    }

    #[test]
    fn eval_expressions() {
        let defs = parse_wreath(G_DEFS).unwrap();
        let t = defs.eval("a*c").unwrap();
        assert_eq!(t, defs.get("a").unwrap().compose(&defs.get("c").unwrap()).unwrap());
        let tinv = defs.eval("t^-1");
        assert!(tinv.is_err());
        let tinv = defs.eval("a*c^-1").unwrap();
        // a * c^{-1} = a * c since c is an involution
        assert!(tinv.equal(&t).unwrap());
        assert!(defs.eval("a^0").unwrap().is_identity());
    }
}

use std::collections::BTreeMap;

use super::parse::parse_with;
use super::term::Term;
use crate::error::{Error, Result};

const STANDARD: &str = include_str!("../../prelude.lam");

/// Named abbreviations expanded at parse time.
///
/// A name is expanded wherever it occurs free; a binder with the same name
/// shadows it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Prelude {
    defs: BTreeMap<String, Term>,
}

impl Prelude {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The bundled prelude: `I`, `K`, `OMEGA`, `Z`, numerals `zero`..`three`,
    /// `succ`, `true`, `false`.
    pub fn standard() -> Self {
        Self::from_source(STANDARD).expect("bundled prelude parses")
    }

    /// Reads `name = term` lines; `#` starts a comment line.
    pub fn from_source(src: &str) -> Result<Self> {
        let mut prelude = Prelude::default();
        prelude.load(src)?;
        Ok(prelude)
    }

    /// Adds the definitions in `src`; they may refer to names already defined.
    pub fn load(&mut self, src: &str) -> Result<()> {
        let prelude = self;
        for (lineno, line) in src.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, body) = line.split_once('=').ok_or_else(|| Error::Syntax {
                pos: 0,
                msg: format!("prelude line {}: expected `name = term`", lineno + 1),
            })?;
            let term = prelude.parse(body.trim()).map_err(|e| match e {
                Error::Syntax { pos, msg } => Error::Syntax {
                    pos,
                    msg: format!("prelude line {}: {msg}", lineno + 1),
                },
                other => other,
            })?;
            prelude.define(name.trim(), term);
        }
        Ok(())
    }

    pub fn define(&mut self, name: &str, term: Term) {
        self.defs.insert(name.to_owned(), term);
    }

    pub fn get(&self, name: &str) -> Option<&Term> {
        self.defs.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.defs.keys().map(String::as_str)
    }

    pub fn parse(&self, src: &str) -> Result<Term> {
        parse_with(src, &self.defs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_prelude_expands_names() {
        let p = Prelude::standard();
        let omega = p.parse("OMEGA").unwrap();
        assert_eq!(omega.to_string(), "(\\x. x x) (\\x. x x)");
        assert!(p.get("Z").unwrap().is_closed());
        // binders shadow definitions
        assert_eq!(p.parse("\\I. I").unwrap().to_string(), "\\I. I");
    }

    #[test]
    fn bad_prelude_lines() {
        assert!(Prelude::from_source("nonsense").is_err());
        assert!(Prelude::from_source("x = (").is_err());
        let p = Prelude::from_source("# c\nid = \\x. x\nidid = id id\n").unwrap();
        assert_eq!(p.parse("idid").unwrap().to_string(), "(\\x. x) (\\x. x)");
    }
}

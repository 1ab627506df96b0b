use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::monads::Op;

/// Terms of the calculus: variables, abstractions, applications and
/// operation nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Abs(String, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    Op(Op, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_owned())
    }

    pub fn abs(name: &str, body: Term) -> Term {
        Term::Abs(name.to_owned(), Arc::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    /// Operation node; fails when the argument count differs from the arity.
    pub fn op(op: Op, args: Vec<Term>) -> Result<Term> {
        if args.len() != op.arity() {
            return Err(Error::ArityMismatch {
                what: op.to_string(),
                expected: op.arity(),
                got: args.len(),
            });
        }
        Ok(Term::Op(op, args))
    }

    /// `e ; f`, i.e. `(\_. f) e`.
    pub fn seq(e: Term, f: Term) -> Term {
        Term::app(Term::abs("_", f), e)
    }

    /// `(\x. f) e`.
    pub fn let_in(x: &str, e: Term, f: Term) -> Term {
        Term::app(Term::abs(x, f), e)
    }

    pub fn is_value(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Abs(..))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Abs(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Term::Op(_, args) => args.iter().for_each(|a| a.collect_free(bound, out)),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn occurs_free(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => y == x,
            Term::Abs(y, body) => y != x && body.occurs_free(x),
            Term::App(f, a) => f.occurs_free(x) || a.occurs_free(x),
            Term::Op(_, args) => args.iter().any(|a| a.occurs_free(x)),
        }
    }

    /// Capture-avoiding substitution `self[v/x]`.
    pub fn substitute(&self, x: &str, v: &Term) -> Term {
        if !self.occurs_free(x) {
            return self.clone();
        }
        match self {
            Term::Var(_) => v.clone(),
            Term::Abs(y, body) => {
                if v.occurs_free(y) {
                    let mut avoid = v.free_vars();
                    avoid.extend(body.free_vars());
                    avoid.insert(x.to_owned());
                    let mut fresh = format!("{y}'");
                    while avoid.contains(&fresh) {
                        fresh.push('\'');
                    }
                    let renamed = body.substitute(y, &Term::Var(fresh.clone()));
                    Term::Abs(fresh, Arc::new(renamed.substitute(x, v)))
                } else {
                    Term::Abs(y.clone(), Arc::new(body.substitute(x, v)))
                }
            }
            Term::App(f, a) => Term::app(f.substitute(x, v), a.substitute(x, v)),
            Term::Op(op, args) => Term::Op(
                op.clone(),
                args.iter().map(|a| a.substitute(x, v)).collect(),
            ),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Abs(_, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Op(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        // 0: anything, 1: function position, 2: argument position
        match self {
            Term::Var(x) => f.write_str(x),
            Term::Abs(x, body) => {
                if level > 0 {
                    f.write_str("(")?;
                }
                write!(f, "\\{x}. ")?;
                body.fmt_at(f, 0)?;
                if level > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Term::App(g, a) => {
                if level > 1 {
                    f.write_str("(")?;
                }
                g.fmt_at(f, 1)?;
                f.write_str(" ")?;
                a.fmt_at(f, 2)?;
                if level > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Term::Op(op, args) => {
                write!(f, "{op}")?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        a.fmt_at(f, 0)?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl Carrier for Term {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(value: &Value) -> Result<Self> {
        let src = value
            .as_str()
            .ok_or_else(|| Error::Decode(format!("expected a term string, found {value}")))?;
        super::parse(src)
    }
}

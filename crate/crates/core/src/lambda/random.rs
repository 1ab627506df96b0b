//! Random closed programs for law testing.
//!
//! Application heads are always literal abstractions (or a self-application
//! of a bound abstraction), so evaluation never applies a value atom.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;

use super::term::Term;
use crate::monads::{MonadKind, Op, OpDescriptor};

/// Atoms that may appear free in generated programs.
pub const ATOMS: [&str; 2] = ["v", "w"];

fn omega() -> Term {
    let dup = Term::abs("x", Term::app(Term::var("x"), Term::var("x")));
    Term::app(dup.clone(), dup)
}

/// A random program of depth at most `depth` over the signature of `kind`.
pub fn random_term<R: Rng>(kind: &MonadKind, depth: u32, rng: &mut R) -> Term {
    let ops: Vec<Op> = OpDescriptor::signature(kind)
        .into_iter()
        .map(|d| d.op().clone())
        .collect();
    let mut g = Gen { ops, fresh: 0 };
    g.term(depth, &mut Vec::new(), rng)
}

/// A random value: an atom or an abstraction.
pub fn random_value<R: Rng>(kind: &MonadKind, depth: u32, rng: &mut R) -> Term {
    let ops: Vec<Op> = OpDescriptor::signature(kind)
        .into_iter()
        .map(|d| d.op().clone())
        .collect();
    let mut g = Gen { ops, fresh: 0 };
    g.value(depth, &mut Vec::new(), rng)
}

struct Gen {
    ops: Vec<Op>,
    fresh: u32,
}

impl Gen {
    fn name(&mut self) -> String {
        self.fresh += 1;
        format!("x{}", self.fresh)
    }

    fn atom<R: Rng>(&self, scope: &[String], rng: &mut R) -> Term {
        if !scope.is_empty() && rng.random_bool(0.5) {
            Term::Var(scope.choose(rng).unwrap().clone())
        } else {
            Term::var(ATOMS.choose(rng).unwrap())
        }
    }

    fn value<R: Rng>(&mut self, depth: u32, scope: &mut Vec<String>, rng: &mut R) -> Term {
        if depth == 0 || rng.random_bool(0.5) {
            return self.atom(scope, rng);
        }
        let x = self.name();
        scope.push(x.clone());
        let body = self.term(depth - 1, scope, rng);
        scope.pop();
        Term::Abs(x, Arc::new(body))
    }

    fn term<R: Rng>(&mut self, depth: u32, scope: &mut Vec<String>, rng: &mut R) -> Term {
        if depth == 0 {
            return self.atom(scope, rng);
        }
        match rng.random_range(0..10) {
            0 | 1 => self.value(depth, scope, rng),
            2..=4 => {
                // let-style redex
                let x = self.name();
                let arg = self.term(depth - 1, scope, rng);
                scope.push(x.clone());
                let body = self.term(depth - 1, scope, rng);
                scope.pop();
                Term::app(Term::Abs(x, Arc::new(body)), arg)
            }
            5 => {
                // (\f. f f) applied to an abstraction: a burst of β-steps
                let f = self.name();
                let dup = Term::abs(&f, Term::app(Term::var(&f), Term::var(&f)));
                let y = self.name();
                scope.push(y.clone());
                let body = self.term(depth - 1, scope, rng);
                scope.pop();
                Term::app(dup, Term::Abs(y, Arc::new(body)))
            }
            6 if rng.random_bool(0.3) => omega(),
            _ if self.ops.is_empty() => self.value(depth, scope, rng),
            _ => {
                let op = self.ops.choose(rng).unwrap().clone();
                let args = (0..op.arity())
                    .map(|_| self.term(depth - 1, scope, rng))
                    .collect();
                Term::Op(op, args)
            }
        }
    }
}

//! Greedy counterexample shrinking.
//!
//! Candidates are listed arity reductions first, then carrier reductions,
//! then simplifications of effect bodies toward unit and bottom. The runner
//! takes the first candidate that still fails and repeats.

use std::collections::BTreeSet;

use crate::carrier::Carrier;
use crate::lambda::random::ATOMS;
use crate::lambda::Term;
use crate::monads::{MonadValue, Outcome, Payload};
use crate::presentations::GenericEffect;

pub trait Shrink: Clone {
    /// Simpler variants of `self`, most preferred first.
    fn shrink(&self) -> Vec<Self>;
}

impl Shrink for u32 {
    fn shrink(&self) -> Vec<Self> {
        self.shrink_carrier()
    }
}

impl Shrink for usize {
    fn shrink(&self) -> Vec<Self> {
        match *self {
            0 => vec![],
            n => vec![n - 1],
        }
    }
}

impl<X: Carrier> Shrink for MonadValue<X> {
    fn shrink(&self) -> Vec<Self> {
        let kind = self.kind().clone();
        let support = self.support();
        let mut out = Vec::new();

        for x in &support {
            for smaller in x.shrink_carrier() {
                out.push(self.map_carrier(|y| if y == x { smaller.clone() } else { y.clone() }));
            }
        }

        out.push(MonadValue::bottom(&kind));
        if let Some(x) = support.first() {
            out.push(MonadValue::unit(&kind, x.clone()));
        }

        let mk = |p: Payload<X>| MonadValue::new(kind.clone(), p).ok();
        match self.payload() {
            Payload::Powerset(items) => {
                for x in items {
                    let mut rest: BTreeSet<X> = items.clone();
                    rest.remove(x);
                    out.extend(mk(Payload::Powerset(rest)));
                }
            }
            Payload::Dist(entries) => {
                for x in entries.keys() {
                    let mut rest = entries.clone();
                    rest.remove(x);
                    out.extend(mk(Payload::Dist(rest)));
                }
            }
            Payload::Exception(Outcome::Raised(e)) => {
                if let Some(first) = kind.exceptions().first().filter(|f| *f != e) {
                    out.extend(mk(Payload::Exception(Outcome::Raised(first.clone()))));
                }
            }
            Payload::State(table) => {
                for (s, cell) in table.iter().enumerate() {
                    if let Some((x, t)) = cell {
                        let mut t1 = table.clone();
                        t1[s] = None;
                        out.extend(mk(Payload::State(t1)));
                        if t.0 as usize != s {
                            let mut t2 = table.clone();
                            t2[s] = Some((x.clone(), crate::monads::Store(s as u32)));
                            out.extend(mk(Payload::State(t2)));
                        }
                    }
                }
            }
            Payload::Output { printed, tail } => {
                let chars: Vec<char> = printed.chars().collect();
                if !chars.is_empty() {
                    out.extend(mk(Payload::Output {
                        printed: chars[1..].iter().collect(),
                        tail: tail.clone(),
                    }));
                    out.extend(mk(Payload::Output {
                        printed: chars[..chars.len() - 1].iter().collect(),
                        tail: tail.clone(),
                    }));
                }
                if tail.is_some() {
                    out.extend(mk(Payload::Output {
                        printed: printed.clone(),
                        tail: None,
                    }));
                }
            }
            Payload::Maybe(_) | Payload::Exception(_) => {}
        }
        out.retain(|c| c != self);
        out
    }
}

impl Shrink for GenericEffect {
    fn shrink(&self) -> Vec<Self> {
        let n = self.arity();
        let support = self.body().support();
        let mut out = Vec::new();
        for k in (1..=n).rev() {
            if support.binary_search(&k).is_err() {
                let body = self.body().map_carrier(|&i| if i > k { i - 1 } else { i });
                out.extend(GenericEffect::new(n - 1, body).ok());
            }
        }
        for body in self.body().shrink() {
            out.extend(GenericEffect::new(n, body).ok());
        }
        out
    }
}

/// Subterms that stay closed up to the value atoms, then a bare atom.
impl Shrink for Term {
    fn shrink(&self) -> Vec<Self> {
        let mut out: Vec<Term> = match self {
            Term::Var(_) => vec![],
            Term::Abs(_, body) => vec![(**body).clone()],
            Term::App(f, a) => vec![(**f).clone(), (**a).clone()],
            Term::Op(_, args) => args.clone(),
        };
        out.retain(|t| t.free_vars().iter().all(|x| ATOMS.contains(&x.as_str())));
        if !matches!(self, Term::Var(_)) {
            out.push(Term::var(ATOMS[0]));
        }
        out
    }
}

/// Element-wise; the length is part of the case's shape and never changes.
impl<T: Shrink> Shrink for Vec<T> {
    fn shrink(&self) -> Vec<Self> {
        let mut out = Vec::new();
        for (i, x) in self.iter().enumerate() {
            for c in x.shrink() {
                let mut v = self.clone();
                v[i] = c;
                out.push(v);
            }
        }
        out
    }
}

macro_rules! tuple_shrink {
    ($($name:ident : $idx:tt),+) => {
        impl<$($name: Shrink),+> Shrink for ($($name,)+) {
            fn shrink(&self) -> Vec<Self> {
                let mut out = Vec::new();
                $(
                    for c in self.$idx.shrink() {
                        let mut t = self.clone();
                        t.$idx = c;
                        out.push(t);
                    }
                )+
                out
            }
        }
    };
}

tuple_shrink!(A: 0);
tuple_shrink!(A: 0, B: 1);
tuple_shrink!(A: 0, B: 1, C: 2);
tuple_shrink!(A: 0, B: 1, C: 2, D: 3);
tuple_shrink!(A: 0, B: 1, C: 2, D: 3, E: 4);

/// Repeatedly replaces `case` by its first still-failing candidate.
pub fn minimize<T: Shrink>(case: T, mut fails: impl FnMut(&T) -> bool) -> T {
    const MAX_STEPS: usize = 500;
    let mut case = case;
    for _ in 0..MAX_STEPS {
        match case.shrink().into_iter().find(|c| fails(c)) {
            Some(c) => case = c,
            None => break,
        }
    }
    case
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monads::MonadKind;

    #[test]
    fn effect_shrinks_drop_unused_indices_first() {
        let e = GenericEffect::new(3, MonadValue::set([1usize])).unwrap();
        let first = &e.shrink()[0];
        assert_eq!(first.arity(), 2);
        assert_eq!(first.body(), &MonadValue::set([1usize]));
    }

    #[test]
    fn minimize_reaches_a_local_minimum() {
        let k = MonadKind::output("ab".chars()).unwrap();
        let start = MonadValue::output(&k, "abab", Some(5u32)).unwrap();
        // property: fails whenever something was printed
        let fails = |v: &MonadValue<u32>| match v.payload() {
            Payload::Output { printed, .. } => !printed.is_empty(),
            _ => false,
        };
        let min = minimize(start, fails);
        assert!(fails(&min));
        let Payload::Output { printed, tail } = min.payload() else {
            unreachable!()
        };
        assert_eq!(printed.len(), 1);
        assert_eq!(*tail, None);
    }
}

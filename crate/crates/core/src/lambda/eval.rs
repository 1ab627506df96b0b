use serde::{Deserialize, Serialize};

use super::term::Term;
use crate::algebra::seq_compose;
use crate::error::{Error, Result};
use crate::monads::{MonadKind, MonadValue, OpDescriptor};
use crate::presentations::Presentation;

/// Index into the ascending chain of approximants: the number of β-steps
/// any single evaluation path may take.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct Fuel(pub u64);

impl From<u64> for Fuel {
    fn from(depth: u64) -> Self {
        Fuel(depth)
    }
}

// Deep β-chains recurse once per step; grow the stack on demand instead of
// capping fuel.
const RED_ZONE: usize = 64 * 1024;
const STACK_CHUNK: usize = 4 * 1024 * 1024;

fn check_signature(term: &Term, kind: &MonadKind) -> Result<()> {
    match term {
        Term::Var(_) => Ok(()),
        Term::Abs(_, body) => check_signature(body, kind),
        Term::App(f, a) => {
            check_signature(f, kind)?;
            check_signature(a, kind)
        }
        Term::Op(op, args) => {
            OpDescriptor::new(op.clone(), kind)?;
            args.iter().try_for_each(|a| check_signature(a, kind))
        }
    }
}

/// Call-by-value evaluation to the `fuel`-th approximant.
///
/// Free variables behave as opaque value atoms (`v`, `w`, …); applying one
/// is an [`Error::OpenTerm`].
pub fn eval(term: &Term, kind: &MonadKind, fuel: Fuel) -> Result<MonadValue<Term>> {
    check_signature(term, kind)?;
    go(term, kind, fuel.0)
}

fn go(term: &Term, kind: &MonadKind, fuel: u64) -> Result<MonadValue<Term>> {
    stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || match term {
        Term::Var(_) | Term::Abs(..) => Ok(MonadValue::unit(kind, term.clone())),
        Term::Op(op, args) => {
            let desc = OpDescriptor::new(op.clone(), kind)?;
            let vals = args
                .iter()
                .map(|a| go(a, kind, fuel))
                .collect::<Result<Vec<_>>>()?;
            desc.apply(&vals)
        }
        Term::App(f, a) => {
            let head = go(f, kind, fuel)?;
            if head.is_bottom() {
                return Ok(head);
            }
            let arg = go(a, kind, fuel)?;
            head.bind(|fv| arg.bind(|av| beta(fv, av, kind, fuel)))
        }
    })
}

fn beta(f: &Term, a: &Term, kind: &MonadKind, fuel: u64) -> Result<MonadValue<Term>> {
    match f {
        Term::Abs(x, body) => {
            if fuel == 0 {
                Ok(MonadValue::bottom(kind))
            } else {
                go(&body.substitute(x, a), kind, fuel - 1)
            }
        }
        Term::Var(x) => Err(Error::OpenTerm(format!("`{x}` applied to `{a}`"))),
        other => unreachable!("non-value in function position: {other}"),
    }
}

/// The evaluation result as a presentation.
pub fn eval_diagram(term: &Term, kind: &MonadKind, fuel: Fuel) -> Result<Presentation<Term>> {
    Presentation::decompose(&eval(term, kind, fuel)?)
}

/// Evaluates every term in the row of `xi` and composes the results along
/// its generic effect.
pub fn eval_monadic_term(
    xi: &Presentation<Term>,
    kind: &MonadKind,
    fuel: Fuel,
) -> Result<Presentation<Term>> {
    kind.expect(xi.kind())?;
    let family = xi
        .row()
        .iter()
        .map(|e| eval_diagram(e, kind, fuel))
        .collect::<Result<Vec<_>>>()?;
    seq_compose(xi.effect(), &family)
}

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use super::kind::{KindTag, MonadKind};
use super::value::{ratio, MonadValue, Outcome, Payload, Prob};
use crate::carrier::Carrier;
use crate::error::{Error, Result};

/// An operation symbol together with its index, independent of any monad.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Raise(String),
    Union,
    Choice,
    Read(String),
    Write(String, bool),
    Print(char),
}

impl Op {
    pub fn arity(&self) -> usize {
        match self {
            Op::Raise(_) => 0,
            Op::Union | Op::Choice | Op::Read(_) => 2,
            Op::Write(..) | Op::Print(_) => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Op::Raise(_) => "raise",
            Op::Union => "union",
            Op::Choice => "choice",
            Op::Read(_) => "read",
            Op::Write(..) => "write",
            Op::Print(_) => "print",
        }
    }

    /// The monad this operation belongs to.
    pub fn home(&self) -> KindTag {
        match self {
            Op::Raise(_) => KindTag::Exception,
            Op::Union => KindTag::Powerset,
            Op::Choice => KindTag::Subdistribution,
            Op::Read(_) | Op::Write(..) => KindTag::GlobalState,
            Op::Print(_) => KindTag::Output,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Raise(e) => write!(f, "raise[{e}]"),
            Op::Union => f.write_str("union"),
            Op::Choice => f.write_str("choice"),
            Op::Read(l) => write!(f, "read[{l}]"),
            Op::Write(l, b) => write!(f, "write[{l},{}]", u8::from(*b)),
            Op::Print(c) => write!(f, "print[{c}]"),
        }
    }
}

/// An operation of the signature of a particular monad.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpDescriptor {
    op: Op,
    kind: MonadKind,
}

impl OpDescriptor {
    /// Checks that `op` belongs to `kind` and that its index is one of the kind's parameters.
    pub fn new(op: Op, kind: &MonadKind) -> Result<Self> {
        let mismatch = || Error::Signature {
            op: op.to_string(),
            kind: kind.to_string(),
        };
        if op.home() != kind.tag() {
            return Err(mismatch());
        }
        let ok = match &op {
            Op::Raise(e) => kind.exceptions().contains(e),
            Op::Read(l) | Op::Write(l, _) => kind.location_index(l).is_some(),
            Op::Print(c) => kind.alphabet().contains(c),
            Op::Union | Op::Choice => true,
        };
        if !ok {
            return Err(mismatch());
        }
        Ok(OpDescriptor {
            op,
            kind: kind.clone(),
        })
    }

    pub fn op(&self) -> &Op {
        &self.op
    }

    pub fn kind(&self) -> &MonadKind {
        &self.kind
    }

    pub fn arity(&self) -> usize {
        self.op.arity()
    }

    /// Every operation of the kind's signature.
    pub fn signature(kind: &MonadKind) -> Vec<OpDescriptor> {
        let ops: Vec<Op> = match kind {
            MonadKind::Maybe => vec![],
            MonadKind::Exception { exceptions } => {
                exceptions.iter().cloned().map(Op::Raise).collect()
            }
            MonadKind::Powerset => vec![Op::Union],
            MonadKind::Subdistribution => vec![Op::Choice],
            MonadKind::GlobalState { locations } => locations
                .iter()
                .flat_map(|l| {
                    [
                        Op::Read(l.clone()),
                        Op::Write(l.clone(), false),
                        Op::Write(l.clone(), true),
                    ]
                })
                .collect(),
            MonadKind::Output { alphabet } => alphabet.iter().copied().map(Op::Print).collect(),
        };
        ops.into_iter()
            .map(|op| OpDescriptor {
                op,
                kind: kind.clone(),
            })
            .collect()
    }

    /// Applies the operation to monadic arguments of the descriptor's kind.
    pub fn apply<X: Carrier>(&self, args: &[MonadValue<X>]) -> Result<MonadValue<X>> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch {
                what: self.op.to_string(),
                expected: self.arity(),
                got: args.len(),
            });
        }
        for a in args {
            self.kind.expect(a.kind())?;
        }
        let kind = self.kind.clone();
        let payload = match &self.op {
            Op::Raise(e) => Payload::Exception(Outcome::Raised(e.clone())),
            Op::Union => {
                let mut out = BTreeSet::new();
                for a in args {
                    if let Payload::Powerset(items) = a.payload() {
                        out.extend(items.iter().cloned());
                    }
                }
                Payload::Powerset(out)
            }
            Op::Choice => {
                let half = ratio(1, 2);
                let mut out: BTreeMap<X, Prob> = BTreeMap::new();
                for a in args {
                    if let Payload::Dist(entries) = a.payload() {
                        for (x, p) in entries {
                            *out.entry(x.clone()).or_insert_with(Prob::zero) += &half * p;
                        }
                    }
                }
                Payload::Dist(out)
            }
            Op::Read(l) => {
                let loc = kind.location_index(l).expect("validated");
                let tables: Vec<&Vec<_>> = args
                    .iter()
                    .map(|a| match a.payload() {
                        Payload::State(t) => t,
                        _ => unreachable!("kind checked"),
                    })
                    .collect();
                Payload::State(
                    (0..kind.store_count())
                        .map(|s| {
                            let branch = usize::from(super::Store(s as u32).get(loc));
                            tables[branch][s].clone()
                        })
                        .collect(),
                )
            }
            Op::Write(l, b) => {
                let loc = kind.location_index(l).expect("validated");
                let Payload::State(table) = args[0].payload() else {
                    unreachable!("kind checked")
                };
                Payload::State(
                    (0..kind.store_count())
                        .map(|s| table[super::Store(s as u32).set(loc, *b).0 as usize].clone())
                        .collect(),
                )
            }
            Op::Print(c) => {
                let Payload::Output { printed, tail } = args[0].payload() else {
                    unreachable!("kind checked")
                };
                Payload::Output {
                    printed: format!("{c}{printed}"),
                    tail: tail.clone(),
                }
            }
        };
        Ok(MonadValue::raw(kind, payload))
    }
}

impl fmt::Display for OpDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.op.fmt(f)
    }
}

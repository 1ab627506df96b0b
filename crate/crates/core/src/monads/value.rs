use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::kind::{MonadKind, Store};
use crate::carrier::Carrier;
use crate::error::{Error, Result};

/// Exact probability weight.
pub type Prob = BigRational;

/// Result of an exception-monad computation. `Diverge` is the adjoined bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome<X> {
    Value(X),
    Raised(String),
    Diverge,
}

/// The kind-specific content of a [`MonadValue`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Payload<X> {
    /// `Some(x)` is `Present(x)`, `None` is divergence.
    Maybe(Option<X>),
    Exception(Outcome<X>),
    Powerset(BTreeSet<X>),
    /// Strictly positive weights, total mass at most one.
    Dist(BTreeMap<X, Prob>),
    /// Indexed by store; one entry per store in `{0,1}^L`.
    State(Vec<Option<(X, Store)>>),
    /// Finite output prefix and either a returned value or divergence.
    Output {
        printed: String,
        tail: Option<X>,
    },
}

/// An element of `T(X)` for one of the shipped monads.
///
/// Values are kept in canonical form, so structural equality is the monad's
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonadValue<X> {
    kind: MonadKind,
    payload: Payload<X>,
}

pub(crate) fn ratio(n: i64, d: i64) -> Prob {
    BigRational::new(n.into(), d.into())
}

impl<X: Carrier> MonadValue<X> {
    /// Builds a value after checking it against the kind's invariants.
    pub fn new(kind: MonadKind, payload: Payload<X>) -> Result<Self> {
        let payload = match (&kind, payload) {
            (MonadKind::Maybe, p @ Payload::Maybe(_)) => p,
            (MonadKind::Exception { exceptions }, Payload::Exception(o)) => {
                if let Outcome::Raised(e) = &o {
                    if !exceptions.contains(e) {
                        return Err(Error::InvalidValue(format!("unknown exception `{e}`")));
                    }
                }
                Payload::Exception(o)
            }
            (MonadKind::Powerset, p @ Payload::Powerset(_)) => p,
            (MonadKind::Subdistribution, Payload::Dist(entries)) => {
                let mut total = Prob::zero();
                for p in entries.values() {
                    if p.is_negative() {
                        return Err(Error::InvalidValue(format!("negative weight {p}")));
                    }
                    total += p;
                }
                if total > Prob::one() {
                    return Err(Error::InvalidValue(format!("total mass {total} exceeds 1")));
                }
                Payload::Dist(entries.into_iter().filter(|(_, p)| !p.is_zero()).collect())
            }
            (MonadKind::GlobalState { .. }, Payload::State(table)) => {
                if table.len() != kind.store_count() {
                    return Err(Error::InvalidValue(format!(
                        "state table has {} entries, expected {}",
                        table.len(),
                        kind.store_count()
                    )));
                }
                if table
                    .iter()
                    .flatten()
                    .any(|(_, s)| (s.0 as usize) >= kind.store_count())
                {
                    return Err(Error::InvalidValue("store out of range".into()));
                }
                Payload::State(table)
            }
            (MonadKind::Output { alphabet }, Payload::Output { printed, tail }) => {
                if let Some(c) = printed.chars().find(|c| !alphabet.contains(c)) {
                    return Err(Error::InvalidValue(format!("`{c}` is not in the alphabet")));
                }
                Payload::Output { printed, tail }
            }
            (kind, payload) => {
                return Err(Error::InvalidValue(format!(
                    "payload {payload:?} does not belong to {kind}"
                )))
            }
        };
        Ok(MonadValue { kind, payload })
    }

    pub fn kind(&self) -> &MonadKind {
        &self.kind
    }

    pub fn payload(&self) -> &Payload<X> {
        &self.payload
    }

    pub fn into_payload(self) -> Payload<X> {
        self.payload
    }

    /// Trusted constructor for payloads produced by the monad operations.
    pub(crate) fn raw(kind: MonadKind, payload: Payload<X>) -> Self {
        MonadValue { kind, payload }
    }

    pub fn present(x: X) -> Self {
        Self::raw(MonadKind::Maybe, Payload::Maybe(Some(x)))
    }

    pub fn set(items: impl IntoIterator<Item = X>) -> Self {
        Self::raw(
            MonadKind::Powerset,
            Payload::Powerset(items.into_iter().collect()),
        )
    }

    /// A subdistribution; repeated keys are summed.
    pub fn dist(entries: impl IntoIterator<Item = (X, Prob)>) -> Result<Self> {
        let mut map: BTreeMap<X, Prob> = BTreeMap::new();
        for (x, p) in entries {
            *map.entry(x).or_insert_with(Prob::zero) += p;
        }
        Self::new(MonadKind::Subdistribution, Payload::Dist(map))
    }

    pub fn output(kind: &MonadKind, printed: &str, tail: Option<X>) -> Result<Self> {
        Self::new(
            kind.clone(),
            Payload::Output {
                printed: printed.to_owned(),
                tail,
            },
        )
    }

    pub fn raised(kind: &MonadKind, label: &str) -> Result<Self> {
        Self::new(
            kind.clone(),
            Payload::Exception(Outcome::Raised(label.to_owned())),
        )
    }

    pub fn unit(kind: &MonadKind, x: X) -> Self {
        let payload = match kind {
            MonadKind::Maybe => Payload::Maybe(Some(x)),
            MonadKind::Exception { .. } => Payload::Exception(Outcome::Value(x)),
            MonadKind::Powerset => Payload::Powerset(BTreeSet::from([x])),
            MonadKind::Subdistribution => Payload::Dist(BTreeMap::from([(x, Prob::one())])),
            MonadKind::GlobalState { .. } => Payload::State(
                (0..kind.store_count())
                    .map(|s| Some((x.clone(), Store(s as u32))))
                    .collect(),
            ),
            MonadKind::Output { .. } => Payload::Output {
                printed: String::new(),
                tail: Some(x),
            },
        };
        Self::raw(kind.clone(), payload)
    }

    /// The least element of `T(X)`.
    pub fn bottom(kind: &MonadKind) -> Self {
        let payload = match kind {
            MonadKind::Maybe => Payload::Maybe(None),
            MonadKind::Exception { .. } => Payload::Exception(Outcome::Diverge),
            MonadKind::Powerset => Payload::Powerset(BTreeSet::new()),
            MonadKind::Subdistribution => Payload::Dist(BTreeMap::new()),
            MonadKind::GlobalState { .. } => Payload::State(vec![None; kind.store_count()]),
            MonadKind::Output { .. } => Payload::Output {
                printed: String::new(),
                tail: None,
            },
        };
        Self::raw(kind.clone(), payload)
    }

    pub fn is_bottom(&self) -> bool {
        *self == Self::bottom(&self.kind)
    }

    /// Kleisli extension: `self >>= f`.
    pub fn bind<Y, F>(&self, mut f: F) -> Result<MonadValue<Y>>
    where
        Y: Carrier,
        F: FnMut(&X) -> Result<MonadValue<Y>>,
    {
        let kind = &self.kind;
        let mut call = |x: &X| -> Result<MonadValue<Y>> {
            let v = f(x)?;
            kind.expect(&v.kind)?;
            Ok(v)
        };
        let payload = match &self.payload {
            Payload::Maybe(None) => Payload::Maybe(None),
            Payload::Exception(Outcome::Raised(e)) => {
                Payload::Exception(Outcome::Raised(e.clone()))
            }
            Payload::Exception(Outcome::Diverge) => Payload::Exception(Outcome::Diverge),
            Payload::Maybe(Some(x)) | Payload::Exception(Outcome::Value(x)) => {
                return call(x);
            }
            Payload::Powerset(items) => {
                let mut out = BTreeSet::new();
                for x in items {
                    match call(x)?.payload {
                        Payload::Powerset(ys) => out.extend(ys),
                        _ => unreachable!("kind checked"),
                    }
                }
                Payload::Powerset(out)
            }
            Payload::Dist(entries) => {
                let mut out: BTreeMap<Y, Prob> = BTreeMap::new();
                for (x, p) in entries {
                    match call(x)?.payload {
                        Payload::Dist(ys) => {
                            for (y, q) in ys {
                                *out.entry(y).or_insert_with(Prob::zero) += p * q;
                            }
                        }
                        _ => unreachable!("kind checked"),
                    }
                }
                Payload::Dist(out)
            }
            Payload::State(table) => {
                let mut cache: BTreeMap<&X, Vec<Option<(Y, Store)>>> = BTreeMap::new();
                let mut out = Vec::with_capacity(table.len());
                for cell in table {
                    let Some((x, s)) = cell else {
                        out.push(None);
                        continue;
                    };
                    if !cache.contains_key(x) {
                        match call(x)?.payload {
                            Payload::State(t) => {
                                cache.insert(x, t);
                            }
                            _ => unreachable!("kind checked"),
                        }
                    }
                    out.push(cache[x][s.0 as usize].clone());
                }
                Payload::State(out)
            }
            Payload::Output {
                printed,
                tail: None,
            } => Payload::Output {
                printed: printed.clone(),
                tail: None,
            },
            Payload::Output {
                printed,
                tail: Some(x),
            } => match call(x)?.payload {
                Payload::Output {
                    printed: rest,
                    tail,
                } => Payload::Output {
                    printed: format!("{printed}{rest}"),
                    tail,
                },
                _ => unreachable!("kind checked"),
            },
        };
        Ok(MonadValue::raw(self.kind.clone(), payload))
    }

    /// Functorial action `T(g)`.
    pub fn map_carrier<Y: Carrier>(&self, mut g: impl FnMut(&X) -> Y) -> MonadValue<Y> {
        let payload = match &self.payload {
            Payload::Maybe(x) => Payload::Maybe(x.as_ref().map(g)),
            Payload::Exception(o) => Payload::Exception(match o {
                Outcome::Value(x) => Outcome::Value(g(x)),
                Outcome::Raised(e) => Outcome::Raised(e.clone()),
                Outcome::Diverge => Outcome::Diverge,
            }),
            Payload::Powerset(items) => Payload::Powerset(items.iter().map(g).collect()),
            Payload::Dist(entries) => {
                let mut out: BTreeMap<Y, Prob> = BTreeMap::new();
                for (x, p) in entries {
                    *out.entry(g(x)).or_insert_with(Prob::zero) += p;
                }
                Payload::Dist(out)
            }
            Payload::State(table) => Payload::State(
                table
                    .iter()
                    .map(|c| c.as_ref().map(|(x, s)| (g(x), *s)))
                    .collect(),
            ),
            Payload::Output { printed, tail } => Payload::Output {
                printed: printed.clone(),
                tail: tail.as_ref().map(g),
            },
        };
        MonadValue::raw(self.kind.clone(), payload)
    }

    /// Same as [`map_carrier`](Self::map_carrier) for fallible relabellings.
    pub fn try_map_carrier<Y: Carrier>(
        &self,
        mut g: impl FnMut(&X) -> Result<Y>,
    ) -> Result<MonadValue<Y>> {
        // collect first so the infallible path stays simple
        let mut table = BTreeMap::new();
        for x in self.support() {
            let y = g(&x)?;
            table.insert(x, y);
        }
        Ok(self.map_carrier(|x| table[x].clone()))
    }

    /// The smallest set of carrier elements the value lives on, in canonical order.
    pub fn support(&self) -> Vec<X> {
        let set: BTreeSet<X> = match &self.payload {
            Payload::Maybe(x) => x.iter().cloned().collect(),
            Payload::Exception(Outcome::Value(x)) => BTreeSet::from([x.clone()]),
            Payload::Exception(_) => BTreeSet::new(),
            Payload::Powerset(items) => items.clone(),
            Payload::Dist(entries) => entries.keys().cloned().collect(),
            Payload::State(table) => table.iter().flatten().map(|(x, _)| x.clone()).collect(),
            Payload::Output { tail, .. } => tail.iter().cloned().collect(),
        };
        set.into_iter().collect()
    }

    /// The instance order `self ⊑ other`.
    pub fn leq(&self, other: &MonadValue<X>) -> Result<bool> {
        self.kind.expect(&other.kind)?;
        Ok(match (&self.payload, &other.payload) {
            (Payload::Maybe(a), Payload::Maybe(b)) => a.is_none() || a == b,
            (Payload::Exception(a), Payload::Exception(b)) => *a == Outcome::Diverge || a == b,
            (Payload::Powerset(a), Payload::Powerset(b)) => a.is_subset(b),
            (Payload::Dist(a), Payload::Dist(b)) => {
                a.iter().all(|(x, p)| b.get(x).is_some_and(|q| p <= q))
            }
            (Payload::State(a), Payload::State(b)) => {
                a.iter().zip(b).all(|(p, q)| p.is_none() || p == q)
            }
            (
                Payload::Output {
                    printed: u,
                    tail: None,
                },
                Payload::Output { printed: w, .. },
            ) => w.starts_with(u.as_str()),
            (
                Payload::Output {
                    printed: u,
                    tail: Some(x),
                },
                Payload::Output {
                    printed: w,
                    tail: Some(y),
                },
            ) => u == w && x == y,
            (Payload::Output { .. }, Payload::Output { .. }) => false,
            _ => unreachable!("kind checked"),
        })
    }

    /// Total mass of a subdistribution; `None` for other kinds.
    pub fn mass(&self) -> Option<Prob> {
        match &self.payload {
            Payload::Dist(entries) => Some(entries.values().fold(Prob::zero(), |a, p| a + p)),
            _ => None,
        }
    }
}

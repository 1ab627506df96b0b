//! Seeded random generation of monadic values, generic effects, Kleisli
//! maps and ordered pairs, plus exhaustive enumeration of tiny value spaces.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::carrier::Carrier;
use crate::monads::{prob, MonadKind, MonadValue, Outcome, Payload, Prob, Store};
use crate::presentations::GenericEffect;

/// Largest denominator used for generated probabilities.
pub const MAX_DENOMINATOR: i64 = 16;

/// Deterministic per-trial RNG derived from `(seed, stream, trial)`.
pub fn rng_for(seed: u64, stream: &str, trial: u64) -> ChaCha8Rng {
    // FNV-1a over the stream name, then splitmix64 over the three words
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in stream.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let mut x = h ^ seed.rotate_left(17) ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    ChaCha8Rng::seed_from_u64(x ^ (x >> 31))
}

/// The instances exercised by default: small parameter sets for each kind.
pub fn standard_kinds() -> Vec<MonadKind> {
    vec![
        MonadKind::Maybe,
        MonadKind::exception(["e1", "e2"]).expect("valid"),
        MonadKind::Powerset,
        MonadKind::Subdistribution,
        MonadKind::global_state(["l1", "l2"]).expect("valid"),
        MonadKind::output("ab".chars()).expect("valid"),
    ]
}

fn random_store<R: Rng>(kind: &MonadKind, rng: &mut R) -> Store {
    Store(rng.random_range(0..kind.store_count()) as u32)
}

/// A random element of `T(candidates)`.
pub fn random_value<X: Carrier, R: Rng>(
    kind: &MonadKind,
    candidates: &[X],
    rng: &mut R,
) -> MonadValue<X> {
    let pick = |rng: &mut R| candidates.choose(rng).cloned();
    let payload = match kind {
        MonadKind::Maybe => Payload::Maybe(if rng.random_bool(0.8) {
            pick(rng)
        } else {
            None
        }),
        MonadKind::Exception { exceptions } => {
            let roll: f64 = rng.random();
            Payload::Exception(match pick(rng) {
                Some(x) if roll < 0.6 => Outcome::Value(x),
                _ if roll < 0.85 => {
                    Outcome::Raised(exceptions.choose(rng).expect("non-empty").clone())
                }
                _ => Outcome::Diverge,
            })
        }
        MonadKind::Powerset => Payload::Powerset(
            candidates
                .iter()
                .filter(|_| rng.random_bool(0.5))
                .cloned()
                .collect(),
        ),
        MonadKind::Subdistribution => {
            let denom = rng.random_range(1..=MAX_DENOMINATOR);
            let mut budget = denom;
            let mut entries: BTreeMap<X, Prob> = BTreeMap::new();
            if !candidates.is_empty() {
                for _ in 0..rng.random_range(0..=candidates.len().min(4)) {
                    if budget == 0 {
                        break;
                    }
                    let n = rng.random_range(1..=budget);
                    budget -= n;
                    let x = pick(rng).expect("non-empty");
                    *entries.entry(x).or_insert_with(|| prob(0, 1)) += prob(n, denom);
                }
            }
            Payload::Dist(entries)
        }
        MonadKind::GlobalState { .. } => Payload::State(
            (0..kind.store_count())
                .map(|_| match pick(rng) {
                    Some(x) if rng.random_bool(0.8) => Some((x, random_store(kind, rng))),
                    _ => None,
                })
                .collect(),
        ),
        MonadKind::Output { alphabet } => {
            let len = rng.random_range(0..=2);
            let printed: String = (0..len)
                .map(|_| *alphabet.choose(rng).expect("non-empty"))
                .collect();
            let tail = if rng.random_bool(0.75) {
                pick(rng)
            } else {
                None
            };
            Payload::Output { printed, tail }
        }
    };
    MonadValue::new(kind.clone(), payload).expect("generated values are valid")
}

/// A random generic effect of the given arity.
pub fn random_effect<R: Rng>(kind: &MonadKind, arity: usize, rng: &mut R) -> GenericEffect {
    let indices: Vec<usize> = (1..=arity).collect();
    GenericEffect::new(arity, random_value(kind, &indices, rng)).expect("within cap")
}

/// A random Kleisli map `{0..domain} → T({0..codomain})`, as a table.
pub fn random_function<R: Rng>(
    kind: &MonadKind,
    domain: u32,
    codomain: u32,
    rng: &mut R,
) -> Vec<MonadValue<u32>> {
    let ys: Vec<u32> = (0..codomain).collect();
    (0..domain).map(|_| random_value(kind, &ys, rng)).collect()
}

/// A random `ν` with `ν ⊑ μ`.
pub fn lower<X: Carrier, R: Rng>(mu: &MonadValue<X>, rng: &mut R) -> MonadValue<X> {
    let kind = mu.kind().clone();
    if rng.random_bool(0.15) {
        return MonadValue::bottom(&kind);
    }
    let payload = match mu.payload().clone() {
        p @ (Payload::Maybe(_) | Payload::Exception(_)) => p,
        Payload::Powerset(items) => {
            Payload::Powerset(items.into_iter().filter(|_| rng.random_bool(0.7)).collect())
        }
        Payload::Dist(entries) => Payload::Dist(
            entries
                .into_iter()
                .map(|(x, p)| {
                    let scale = [prob(0, 1), prob(1, 2), prob(1, 1)]
                        .choose(rng)
                        .cloned()
                        .expect("non-empty");
                    (x, p * scale)
                })
                .collect(),
        ),
        Payload::State(table) => Payload::State(
            table
                .into_iter()
                .map(|c| if rng.random_bool(0.25) { None } else { c })
                .collect(),
        ),
        Payload::Output { printed, tail } => {
            if tail.is_some() && rng.random_bool(0.5) {
                Payload::Output { printed, tail }
            } else {
                let chars: Vec<char> = printed.chars().collect();
                let keep = rng.random_range(0..=chars.len());
                Payload::Output {
                    printed: chars[..keep].iter().collect(),
                    tail: None,
                }
            }
        }
    };
    MonadValue::new(kind, payload).expect("lowering preserves validity")
}

/// Every value of `T(candidates)` in a small fragment: all of it for maybe,
/// exceptions, powerset and state; weights in `{0, 1/2, 1}` for
/// subdistributions; printed strings of length at most one for output.
pub fn enumerate<X: Carrier>(kind: &MonadKind, candidates: &[X]) -> Vec<MonadValue<X>> {
    let payloads: Vec<Payload<X>> = match kind {
        MonadKind::Maybe => std::iter::once(None)
            .chain(candidates.iter().cloned().map(Some))
            .map(Payload::Maybe)
            .collect(),
        MonadKind::Exception { exceptions } => std::iter::once(Outcome::Diverge)
            .chain(exceptions.iter().cloned().map(Outcome::Raised))
            .chain(candidates.iter().cloned().map(Outcome::Value))
            .map(Payload::Exception)
            .collect(),
        MonadKind::Powerset => (0..1u32 << candidates.len())
            .map(|mask| {
                Payload::Powerset(
                    candidates
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, x)| x.clone())
                        .collect::<BTreeSet<_>>(),
                )
            })
            .collect(),
        MonadKind::Subdistribution => {
            let weights = [prob(0, 1), prob(1, 2), prob(1, 1)];
            let mut out = vec![BTreeMap::new()];
            for x in candidates {
                let mut next = Vec::new();
                for m in &out {
                    for w in &weights {
                        let mut m: BTreeMap<X, Prob> = m.clone();
                        if *w != prob(0, 1) {
                            m.insert(x.clone(), w.clone());
                        }
                        if m.values().fold(prob(0, 1), |a, p| a + p) <= prob(1, 1) {
                            next.push(m);
                        }
                    }
                }
                out = next;
            }
            out.into_iter().map(Payload::Dist).collect()
        }
        MonadKind::GlobalState { .. } => {
            let stores = kind.store_count();
            let cells: Vec<Option<(X, Store)>> = std::iter::once(None)
                .chain(
                    candidates
                        .iter()
                        .flat_map(|x| (0..stores).map(move |s| Some((x.clone(), Store(s as u32))))),
                )
                .collect();
            let mut out: Vec<Vec<Option<(X, Store)>>> = vec![vec![]];
            for _ in 0..stores {
                out = out
                    .into_iter()
                    .flat_map(|t| {
                        cells.iter().map(move |c| {
                            let mut t = t.clone();
                            t.push(c.clone());
                            t
                        })
                    })
                    .collect();
            }
            out.into_iter().map(Payload::State).collect()
        }
        MonadKind::Output { alphabet } => {
            let strings: Vec<String> = std::iter::once(String::new())
                .chain(alphabet.iter().map(|c| c.to_string()))
                .collect();
            strings
                .iter()
                .flat_map(|w| {
                    std::iter::once(None)
                        .chain(candidates.iter().cloned().map(Some))
                        .map(|tail| Payload::Output {
                            printed: w.clone(),
                            tail,
                        })
                })
                .collect()
        }
    };
    payloads
        .into_iter()
        .map(|p| MonadValue::new(kind.clone(), p).expect("enumerated values are valid"))
        .collect()
}

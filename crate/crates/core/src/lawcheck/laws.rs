//! One randomized property per law, instantiated at a monad kind.

use std::fmt;
use std::marker::PhantomData;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::property::{Property, Verdict};
use super::shrink::Shrink;
use crate::algebra::{
    effect_to_op, error_verdict, op_to_effect, seq_compose, table_lookup, trivial_effect,
    values_json, Commutativity, DerivedOperation, Operation,
};
use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::gen::{lower, random_effect, random_function, random_value};
use crate::lambda::random::random_term;
use crate::lambda::{eval, eval_monadic_term, Fuel, Term};
use crate::monads::{MonadKind, MonadValue, OpDescriptor};
use crate::presentations::{GenericEffect, Presentation};

/// Kleisli map `{0..k} → T({0..k'})` as a table.
type Table = Vec<MonadValue<u32>>;

/// Size bounds for generated cases.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Bounds {
    pub carrier: u32,
    pub arity: usize,
}

impl Bounds {
    fn carrier(&self, rng: &mut ChaCha8Rng) -> u32 {
        rng.random_range(1..=self.carrier.max(1))
    }

    fn arity(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.random_range(0..=self.arity)
    }

    fn value(&self, kind: &MonadKind, c: u32, rng: &mut ChaCha8Rng) -> MonadValue<u32> {
        let xs: Vec<u32> = (0..c).collect();
        random_value(kind, &xs, rng)
    }
}

/// A property assembled from closures.
struct LawProp<C, G, K, D> {
    stream: String,
    gen: G,
    check: K,
    describe: D,
    _case: PhantomData<fn() -> C>,
}

impl<C, G, K, D> Property for LawProp<C, G, K, D>
where
    C: Shrink + Send,
    G: Fn(&mut ChaCha8Rng, u64) -> C + Sync,
    K: Fn(&C) -> Result<Verdict> + Sync,
    D: Fn(&C) -> Value + Sync,
{
    type Case = C;

    fn stream(&self) -> String {
        self.stream.clone()
    }

    fn generate(&self, rng: &mut ChaCha8Rng, trial: u64) -> C {
        (self.gen)(rng, trial)
    }

    fn check(&self, case: &C) -> Verdict {
        (self.check)(case).unwrap_or_else(|e| error_verdict(&e))
    }

    fn describe(&self, case: &C) -> Value {
        (self.describe)(case)
    }
}

fn law<C, G, K, D>(stream: String, gen: G, check: K, describe: D) -> LawProp<C, G, K, D> {
    LawProp {
        stream,
        gen,
        check,
        describe,
        _case: PhantomData,
    }
}

/// Consumes a property; lets callers run or replay a law without naming
/// its case type.
pub(crate) trait Visitor {
    type Out;
    fn visit<P: Property>(self, prop: &P) -> Self::Out;
}

fn fail(rule: &str, text: String) -> Verdict {
    Verdict::Fail(json!({ "rule": rule, "text": text }))
}

fn same<X: Carrier>(rule: &str, lhs: &MonadValue<X>, rhs: &MonadValue<X>) -> Verdict {
    if lhs == rhs {
        Verdict::Pass
    } else {
        Verdict::Fail(json!({
            "rule": rule,
            "lhs": lhs.to_json(),
            "rhs": rhs.to_json(),
            "text": format!("{lhs} ≠ {rhs}"),
        }))
    }
}

fn below<X: Carrier>(rule: &str, lhs: &MonadValue<X>, rhs: &MonadValue<X>) -> Result<Verdict> {
    Ok(if lhs.leq(rhs)? {
        Verdict::Pass
    } else {
        Verdict::Fail(json!({
            "rule": rule,
            "lhs": lhs.to_json(),
            "rhs": rhs.to_json(),
            "text": format!("{lhs} ⋢ {rhs}"),
        }))
    })
}

/// First failing verdict, else pass.
fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    verdicts
        .into_iter()
        .find(|v| *v != Verdict::Pass)
        .unwrap_or(Verdict::Pass)
}

/// `(Γ, f(x₁), …, f(xₙ))` composed: each `f(xᵢ)` presented by decomposition.
fn compose_map(p: &Presentation<u32>, f: &[MonadValue<u32>]) -> Result<Presentation<u32>> {
    let family = p
        .row()
        .iter()
        .map(|&x| Presentation::decompose(&table_lookup(f, x)?))
        .collect::<Result<Vec<_>>>()?;
    seq_compose(p.effect(), &family)
}

fn decompose_all(values: &[MonadValue<u32>]) -> Result<Vec<Presentation<u32>>> {
    values.iter().map(Presentation::decompose).collect()
}

/// A signature operation or the operation induced by a generic effect.
enum AnyOp {
    Sig(OpDescriptor),
    Derived(DerivedOperation),
}

impl Operation for AnyOp {
    fn arity(&self) -> usize {
        match self {
            AnyOp::Sig(o) => o.arity(),
            AnyOp::Derived(o) => o.arity(),
        }
    }

    fn kind(&self) -> &MonadKind {
        match self {
            AnyOp::Sig(o) => o.kind(),
            AnyOp::Derived(o) => o.kind(),
        }
    }

    fn apply<X: Carrier>(&self, args: &[MonadValue<X>]) -> Result<MonadValue<X>> {
        match self {
            AnyOp::Sig(o) => o.apply(args),
            AnyOp::Derived(o) => o.apply(args),
        }
    }

    fn name(&self) -> String {
        match self {
            AnyOp::Sig(o) => o.to_string(),
            AnyOp::Derived(o) => Operation::name(o),
        }
    }
}

/// `sel` indexes the signature; past its end, the effect's own operation.
fn select_op(kind: &MonadKind, sel: usize, effect: &GenericEffect) -> AnyOp {
    let sig = OpDescriptor::signature(kind);
    match sig.into_iter().nth(sel) {
        Some(op) => AnyOp::Sig(op),
        None => AnyOp::Derived(effect_to_op(effect)),
    }
}

/// Identifier of a law in the suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    Kleisli,
    Algebraicity,
    Representation,
    Bijection,
    Composition,
    Associativity,
    UnitLaws,
    Binding,
    Congruence,
    Monotonicity,
    MonotonicityKleisli,
    MonotonicityFamily,
    Bottom,
    RightAbsorption,
    Commutativity,
    FuelMonotonicity,
}

impl Law {
    pub const ALL: [Law; 16] = [
        Law::Kleisli,
        Law::Algebraicity,
        Law::Representation,
        Law::Bijection,
        Law::Composition,
        Law::Associativity,
        Law::UnitLaws,
        Law::Binding,
        Law::Congruence,
        Law::Monotonicity,
        Law::MonotonicityKleisli,
        Law::MonotonicityFamily,
        Law::Bottom,
        Law::RightAbsorption,
        Law::Commutativity,
        Law::FuelMonotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Kleisli => "kleisli",
            Law::Algebraicity => "algebraicity",
            Law::Representation => "representation",
            Law::Bijection => "bijection",
            Law::Composition => "composition",
            Law::Associativity => "associativity",
            Law::UnitLaws => "unit-laws",
            Law::Binding => "binding",
            Law::Congruence => "congruence",
            Law::Monotonicity => "monotonicity",
            Law::MonotonicityKleisli => "monotonicity-kleisli",
            Law::MonotonicityFamily => "monotonicity-family",
            Law::Bottom => "bottom",
            Law::RightAbsorption => "right-absorption",
            Law::Commutativity => "commutativity",
            Law::FuelMonotonicity => "fuel-monotonicity",
        }
    }

    pub fn from_name(name: &str) -> Result<Law> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == name)
            .ok_or_else(|| Error::UnknownLaw(name.to_owned()))
    }

    /// Whether the law is expected to hold at `kind`.
    ///
    /// Output, global state and exceptions are not commutative; bottom is
    /// absorbed on the right only when no observable effect can precede it,
    /// which rules out exceptions and output.
    pub fn expected_to_hold(self, kind: &MonadKind) -> bool {
        match self {
            Law::Commutativity => !matches!(
                kind,
                MonadKind::Exception { .. }
                    | MonadKind::Output { .. }
                    | MonadKind::GlobalState { .. }
            ),
            Law::RightAbsorption => {
                !matches!(kind, MonadKind::Exception { .. } | MonadKind::Output { .. })
            }
            _ => true,
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fuel bound for the evaluator-backed laws.
const LAW_FUEL: u32 = 8;
const TERM_DEPTH: u32 = 4;

/// Builds the property for `law` at `kind` and hands it to `v`.
pub(crate) fn dispatch<V: Visitor>(law: Law, kind: &MonadKind, b: Bounds, v: V) -> V::Out {
    let k = kind.clone();
    let stream = format!("{law}/{kind}");
    match law {
        Law::Kleisli => v.visit(&law_fn(
            stream,
            move |rng, _| {
                let (c1, c2, c3) = (b.carrier(rng), b.carrier(rng), b.carrier(rng));
                let mu = b.value(&k, c1, rng);
                let f = random_function(&k, c1, c2, rng);
                let g = random_function(&k, c2, c3, rng);
                let x = rng.random_range(0..c1);
                (mu, f, g, x)
            },
            |(mu, f, g, x): &(MonadValue<u32>, Table, Table, u32)| {
                let kind = mu.kind();
                let left = MonadValue::unit(kind, *x).bind(|&y| table_lookup(f, y))?;
                let right = mu.bind(|&y| Ok(MonadValue::unit(kind, y)))?;
                let assoc_l = mu.bind(|&y| table_lookup(f, y))?.bind(|&z| table_lookup(g, z))?;
                let assoc_r = mu.bind(|&y| table_lookup(f, y)?.bind(|&z| table_lookup(g, z)))?;
                Ok(all([
                    same("left unit", &left, &table_lookup(f, *x)?),
                    same("right unit", &right, mu),
                    same("associativity", &assoc_l, &assoc_r),
                ]))
            },
            |(mu, f, g, x)| json!({ "mu": mu.to_json(), "f": values_json(f), "g": values_json(g), "x": x }),
        )),
        Law::Algebraicity => v.visit(&law_fn(
            stream,
            move |rng, _| {
                let sel = rng.random_range(0..=OpDescriptor::signature(&k).len());
                let effect = random_effect(&k, b.arity(rng), rng);
                let op = select_op(&k, sel, &effect);
                let (cx, cy) = (b.carrier(rng), b.carrier(rng));
                let args = (0..op.arity()).map(|_| b.value(&k, cx, rng)).collect();
                (sel, effect, args, random_function(&k, cx, cy, rng))
            },
            {
                let k = kind.clone();
                move |(sel, effect, args, f): &(usize, GenericEffect, Table, Table)| {
                    let op = select_op(&k, *sel, effect);
                    let lhs = op.apply(args)?.bind(|&x| table_lookup(f, x))?;
                    let mapped = args
                        .iter()
                        .map(|mu| mu.bind(|&x| table_lookup(f, x)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(same(&op.name(), &lhs, &op.apply(&mapped)?))
                }
            },
            {
                let k = kind.clone();
                move |(sel, effect, args, f)| {
                    json!({
                        "op": select_op(&k, *sel, effect).name(),
                        "args": values_json(args),
                        "f": values_json(f),
                    })
                }
            },
        )),
        Law::Representation => v.visit(&law_fn(
            stream,
            move |rng, _| {
                let c = b.carrier(rng);
                (b.value(&k, c, rng),)
            },
            |(mu,): &(MonadValue<u32>,)| {
                let p = Presentation::decompose(mu)?;
                let minimal = p.row().len() == mu.support().len()
                    && p.row().windows(2).all(|w| w[0] < w[1]);
                Ok(all([
                    same("interpret ∘ decompose", &p.interpret(), mu),
                    if minimal {
                        Verdict::Pass
                    } else {
                        fail("minimal row", format!("{p}"))
                    },
                ]))
            },
            |(mu,)| json!({ "mu": mu.to_json() }),
        )),
        Law::Bijection => v.visit(&law_fn(
            stream,
            move |rng, _| {
                let effect = random_effect(&k, b.arity(rng), rng);
                let sel = rng.random_range(0..=OpDescriptor::signature(&k).len());
                let op = select_op(&k, sel, &effect);
                let c = b.carrier(rng);
                let args = (0..op.arity()).map(|_| b.value(&k, c, rng)).collect();
                (effect, sel, args)
            },
            {
                let k = kind.clone();
                move |(effect, sel, args): &(GenericEffect, usize, Table)| {
                    let back = op_to_effect(&effect_to_op(effect), effect.arity())?;
                    let op = select_op(&k, *sel, effect);
                    let round = effect_to_op(&op_to_effect(&op, op.arity())?);
                    Ok(all([
                        same("effect → op → effect", back.body(), effect.body()),
                        same("op → effect → op", &round.apply(args)?, &op.apply(args)?),
                    ]))
                }
            },
            |(effect, sel, args)| {
                json!({ "effect": effect.to_json(), "op": sel, "args": values_json(args) })
            },
        )),
        Law::Composition => v.visit(&law_fn(
            stream,
            move |rng, _| {
                let n = b.arity(rng);
                let c = b.carrier(rng);
                let family = (0..n).map(|_| b.value(&k, c, rng)).collect();
                (random_effect(&k, n, rng), family)
            },
            |(head, family): &(GenericEffect, Table)| {
                let composed = seq_compose(head, &decompose_all(family)?)?;
                // direct bind against the values themselves
                let oracle = head.body().bind(|&i| {
                    family
                        .get(i - 1)
                        .cloned()
                        .ok_or_else(|| Error::InvalidValue(format!("no branch {i}")))
                })?;
                let blocks = composed.effect().arity()
                    == family.iter().map(|mu| mu.support().len()).sum::<usize>();
                Ok(all([
                    same("homomorphism", &composed.interpret(), &oracle),
                    if blocks {
                        Verdict::Pass
                    } else {
                        fail("block arity", composed.to_string())
                    },
                ]))
            },
            |(head, family)| json!({ "head": head.to_json(), "family": values_json(family) }),
        )),
        Law::Associativity => v.visit(&law_fn(
            stream,
            move |rng, _| {
                let n = b.arity(rng);
                let head = random_effect(&k, n, rng);
                let mids: Vec<GenericEffect> =
                    (0..n).map(|_| random_effect(&k, b.arity(rng), rng)).collect();
                let total: usize = mids.iter().map(GenericEffect::arity).sum();
                let c = b.carrier(rng);
                let leaves = (0..total).map(|_| b.value(&k, c, rng)).collect();
                (head, mids, leaves)
            },
            |(head, mids, leaves): &(GenericEffect, Vec<GenericEffect>, Table)| {
                let total: usize = mids.iter().map(GenericEffect::arity).sum();
                if total != leaves.len() || mids.len() != head.arity() {
                    return Ok(Verdict::Invalid);
                }
                let leaves = decompose_all(leaves)?;
                let mid_pres = mids
                    .iter()
                    .map(|m| Presentation::new(m.clone(), (1..=m.arity()).collect()))
                    .collect::<Result<Vec<_>>>()?;
                let inner = seq_compose(head, &mid_pres)?;
                let lhs = seq_compose(inner.effect(), &leaves)?;
                let mut rest = leaves.as_slice();
                let mut blocks = Vec::new();
                for m in mids {
                    let (block, tail) = rest.split_at(m.arity());
                    blocks.push(seq_compose(m, block)?);
                    rest = tail;
                }
                let rhs = seq_compose(head, &blocks)?;
                Ok(same("associativity", &lhs.interpret(), &rhs.interpret()))
            },
            |(head, mids, leaves)| {
                json!({
                    "head": head.to_json(),
                    "middle": mids.iter().map(GenericEffect::to_json).collect::<Vec<_>>(),
                    "leaves": values_json(leaves),
                })
            },
        )),
        Law::UnitLaws => v.visit(&law_fn(
            stream,
            move |rng, _| {
                let n = b.arity(rng);
                let c = b.carrier(rng);
                let row = (0..n).map(|_| rng.random_range(0..c)).collect();
                (random_effect(&k, n, rng), row)
            },
            |(effect, row): &(GenericEffect, Vec<u32>)| {
                let xi = Presentation::new(effect.clone(), row.clone())?;
                let h = trivial_effect(effect.kind());
                let left = seq_compose(&h, std::slice::from_ref(&xi))?;
                let units = row
                    .iter()
                    .map(|&x| Presentation::new(h.clone(), vec![x]))
                    .collect::<Result<Vec<_>>>()?;
                let right = seq_compose(effect, &units)?;
                Ok(all([
                    same("left unit", &left.interpret(), &xi.interpret()),
                    same("right unit", &right.interpret(), &xi.interpret()),
                ]))
            },
            |(effect, row)| json!({ "effect": effect.to_json(), "row": row }),
        )),
        Law::Binding => v.visit(&law_fn(
            stream,
            move |rng, _| {
                let (c1, c2) = (b.carrier(rng), b.carrier(rng));
                (b.value(&k, c1, rng), random_function(&k, c1, c2, rng))
            },
            |(mu, f): &(MonadValue<u32>, Table)| {
                let lhs = Presentation::decompose(&mu.bind(|&x| table_lookup(f, x))?)?;
                let rhs = compose_map(&Presentation::decompose(mu)?, f)?;
                Ok(same("binding", &lhs.interpret(), &rhs.interpret()))
            },
            |(mu, f)| json!({ "mu": mu.to_json(), "f": values_json(f) }),
        )),
        Law::Congruence => v.visit(&law_fn(
            stream,
            move |rng, _| congruence_case(&k, b, rng),
            {
                let k = kind.clone();
                move |case: &CongruenceCase| congruence_check(&k, case)
            },
            |(mu, injection, fill, pool)| {
                json!({
                    "mu": mu.to_json(),
                    "injection": injection,
                    "fill": fill,
                    "pool": pool.iter().map(Term::to_string).collect::<Vec<_>>(),
                })
            },
        )),
        Law::Monotonicity => v.visit(&law_fn(
            stream,
            move |rng, _| {
                let (c1, c2) = (b.carrier(rng), b.carrier(rng));
                let upper = b.value(&k, c1, rng);
                let lower_v = lower(&upper, rng);
                (lower_v, upper, random_function(&k, c1, c2, rng))
            },
            |(lo, hi, f): &(MonadValue<u32>, MonadValue<u32>, Table)| {
                let (xi, rho) = (Presentation::decompose(lo)?, Presentation::decompose(hi)?);
                if !xi.diagram_leq(&rho)? {
                    return Ok(Verdict::Invalid);
                }
                below(
                    "map",
                    &compose_map(&xi, f)?.interpret(),
                    &compose_map(&rho, f)?.interpret(),
                )
            },
            |(lo, hi, f)| json!({ "lower": lo.to_json(), "upper": hi.to_json(), "f": values_json(f) }),
        )),
        Law::MonotonicityKleisli => v.visit(&law_fn(
            stream,
            move |rng, _| {
                let (c1, c2) = (b.carrier(rng), b.carrier(rng));
                let g = random_function(&k, c1, c2, rng);
                let f = g.iter().map(|y| lower(y, rng)).collect();
                (b.value(&k, c1, rng), f, g)
            },
            |(mu, f, g): &(MonadValue<u32>, Table, Table)| {
                if f.len() != g.len() {
                    return Ok(Verdict::Invalid);
                }
                for (a, b) in f.iter().zip(g) {
                    if !a.leq(b)? {
                        return Ok(Verdict::Invalid);
                    }
                }
                let xi = Presentation::decompose(mu)?;
                below(
                    "kleisli",
                    &compose_map(&xi, f)?.interpret(),
                    &compose_map(&xi, g)?.interpret(),
                )
            },
            |(mu, f, g)| json!({ "mu": mu.to_json(), "f": values_json(f), "g": values_json(g) }),
        )),
        Law::MonotonicityFamily => v.visit(&law_fn(
            stream,
            move |rng, _| {
                let n = b.arity(rng);
                let c = b.carrier(rng);
                let upper: Table = (0..n).map(|_| b.value(&k, c, rng)).collect();
                let lowered = upper.iter().map(|mu| lower(mu, rng)).collect();
                (random_effect(&k, n, rng), lowered, upper)
            },
            |(head, lo, hi): &(GenericEffect, Table, Table)| {
                for (a, b) in lo.iter().zip(hi) {
                    if !a.leq(b)? {
                        return Ok(Verdict::Invalid);
                    }
                }
                let l = seq_compose(head, &decompose_all(lo)?)?;
                let r = seq_compose(head, &decompose_all(hi)?)?;
                below("family", &l.interpret(), &r.interpret())
            },
            |(head, lo, hi)| {
                json!({ "head": head.to_json(), "lower": values_json(lo), "upper": values_json(hi) })
            },
        )),
        Law::Bottom => v.visit(&law_fn(
            stream,
            move |rng, _| {
                let c = b.carrier(rng);
                let n = b.arity(rng);
                let row = (0..n).map(|_| rng.random_range(0..c)).collect();
                let family = (0..n).map(|_| b.value(&k, c, rng)).collect();
                (b.value(&k, c, rng), row, family)
            },
            |(mu, row, family): &(MonadValue<u32>, Vec<u32>, Table)| {
                let kind = mu.kind();
                let bot = MonadValue::<u32>::bottom(kind);
                let n = row.len();
                let bot_n = GenericEffect::new(n, MonadValue::bottom(kind))?;
                let collapsed = Presentation::new(bot_n.clone(), row.clone())?;
                let bot_0 = Presentation::<u32>::new(GenericEffect::new(0, MonadValue::bottom(kind))?, vec![])?;
                let absorbed = seq_compose(&bot_n, &decompose_all(family)?)?;
                Ok(all([
                    below("least", &bot, mu)?,
                    same("collapse", &collapsed.interpret(), &bot_0.interpret()),
                    same("left absorption", &absorbed.interpret(), &bot),
                ]))
            },
            |(mu, row, family)| {
                json!({ "mu": mu.to_json(), "row": row, "family": values_json(family) })
            },
        )),
        Law::RightAbsorption => v.visit(&law_fn(
            stream,
            move |rng, _| (random_effect(&k, b.arity(rng), rng),),
            |(effect,): &(GenericEffect,)| {
                let kind = effect.kind();
                let bot = GenericEffect::new(0, MonadValue::bottom(kind))?;
                let family: Vec<Presentation<u32>> = (0..effect.arity())
                    .map(|_| Presentation::new(bot.clone(), vec![]))
                    .collect::<Result<_>>()?;
                let composed = seq_compose(effect, &family)?;
                Ok(same("right absorption", &composed.interpret(), &MonadValue::bottom(kind)))
            },
            |(effect,)| json!({ "effect": effect.to_json() }),
        )),
        Law::Commutativity => v.visit(&Commutativity {
            kind: k,
            max_arity: b.arity,
            carrier_size: b.carrier,
        }),
        Law::FuelMonotonicity => v.visit(&law_fn(
            stream,
            move |rng, _| {
                let term = random_term(&k, TERM_DEPTH, rng);
                let lo = rng.random_range(0..=LAW_FUEL);
                let step = rng.random_range(0..=LAW_FUEL - lo);
                (term, lo, step)
            },
            {
                let k = kind.clone();
                move |(term, lo, step): &(Term, u32, u32)| {
                    let at = |f: u32| match eval(term, &k, Fuel(u64::from(f))) {
                        Err(Error::OpenTerm(_)) => Err(Error::InvalidValue("open term".into())),
                        other => other,
                    };
                    below("fuel", &at(*lo)?, &at(lo + step)?)
                }
            },
            |(term, lo, step)| json!({ "term": term.to_string(), "fuel": lo, "step": step }),
        )),
    }
}

/// Forces closure signatures to be inferred against `Property`'s bounds.
fn law_fn<C, G, K, D>(stream: String, gen: G, check: K, describe: D) -> LawProp<C, G, K, D>
where
    C: Shrink + Send,
    G: Fn(&mut ChaCha8Rng, u64) -> C + Sync,
    K: Fn(&C) -> Result<Verdict> + Sync,
    D: Fn(&C) -> Value + Sync,
{
    law(stream, gen, check, describe)
}

/// `(μ over pool indices, injection targets, fill indices, term pool)`.
type CongruenceCase = (MonadValue<u32>, Vec<usize>, Vec<u32>, Vec<Term>);

/// Fuel at which both sides of a congruence pair are evaluated.
pub const CONGRUENCE_FUEL: u64 = 6;

fn congruence_case(kind: &MonadKind, b: Bounds, rng: &mut ChaCha8Rng) -> CongruenceCase {
    let c = b.carrier(rng);
    let pool: Vec<Term> = (0..c).map(|_| random_term(kind, 3, rng)).collect();
    let mu = b.value(kind, c, rng);
    let n = mu
        .map_carrier(|&i| pool[i as usize].clone())
        .support()
        .len();
    let fill: Vec<u32> = (0..rng.random_range(0..=2))
        .map(|_| rng.random_range(0..c))
        .collect();
    let mut targets: Vec<usize> = (1..=n + fill.len()).collect();
    targets.shuffle(rng);
    targets.truncate(n);
    (mu, targets, fill, pool)
}

/// Builds `ξ = decompose(μ)` over terms and `ρ` = ξ extended and permuted,
/// then compares both before and after monadic evaluation.
fn congruence_pair(
    (mu, injection, fill, pool): &CongruenceCase,
) -> Result<(Presentation<Term>, Presentation<Term>)> {
    let term = |i: &u32| {
        pool.get(*i as usize)
            .cloned()
            .ok_or_else(|| Error::InvalidValue(format!("no term {i}")))
    };
    let xi = Presentation::decompose(&mu.try_map_carrier(term)?)?;
    let fill = fill.iter().map(term).collect::<Result<Vec<_>>>()?;
    let rho = xi.extend(injection, fill)?;
    Ok((xi, rho))
}

fn congruence_check(kind: &MonadKind, case: &CongruenceCase) -> Result<Verdict> {
    if case.3.iter().any(|t| {
        !t.free_vars()
            .iter()
            .all(|x| crate::lambda::random::ATOMS.contains(&x.as_str()))
    }) {
        return Ok(Verdict::Invalid);
    }
    let (xi, rho) = congruence_pair(case)?;
    let fuel = Fuel(CONGRUENCE_FUEL);
    let ex = eval_monadic_term(&xi, kind, fuel)?;
    let er = eval_monadic_term(&rho, kind, fuel)?;
    Ok(all([
        same("extension invariance", &xi.interpret(), &rho.interpret()),
        same("congruence", &ex.interpret(), &er.interpret()),
    ]))
}

//! Generic effects as algebraic operations, sequential composition of
//! presentations, the distinguished effects `H` and `⊥ₙ`, and semantic
//! checkers for algebraicity and commutativity.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::gen::{random_effect, random_function, random_value};
use crate::lawcheck::{run_property, CheckReport, Property, Verdict};
use crate::monads::{MonadKind, MonadValue, OpDescriptor};
use crate::par::Execution;
use crate::presentations::{GenericEffect, Presentation};

/// An `n`-ary operation `T(X)^n → T(X)`, natural in `X`.
pub trait Operation: Sync {
    fn arity(&self) -> usize;

    fn kind(&self) -> &MonadKind;

    fn apply<X: Carrier>(&self, args: &[MonadValue<X>]) -> Result<MonadValue<X>>;

    fn name(&self) -> String;
}

impl Operation for OpDescriptor {
    fn arity(&self) -> usize {
        OpDescriptor::arity(self)
    }

    fn kind(&self) -> &MonadKind {
        OpDescriptor::kind(self)
    }

    fn apply<X: Carrier>(&self, args: &[MonadValue<X>]) -> Result<MonadValue<X>> {
        OpDescriptor::apply(self, args)
    }

    fn name(&self) -> String {
        self.to_string()
    }
}

/// The operation `γ(μ₁,…,μₙ) = Γ >>= (i ↦ μᵢ)` induced by a generic effect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedOperation {
    effect: GenericEffect,
}

impl DerivedOperation {
    pub fn effect(&self) -> &GenericEffect {
        &self.effect
    }
}

impl Operation for DerivedOperation {
    fn arity(&self) -> usize {
        self.effect.arity()
    }

    fn kind(&self) -> &MonadKind {
        self.effect.kind()
    }

    fn apply<X: Carrier>(&self, args: &[MonadValue<X>]) -> Result<MonadValue<X>> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch {
                what: "derived operation".into(),
                expected: self.arity(),
                got: args.len(),
            });
        }
        self.effect.body().bind(|&i| Ok(args[i - 1].clone()))
    }

    fn name(&self) -> String {
        format!("op⟨{}⟩", self.effect.body())
    }
}

/// Returns the unit of the first support element of its argument, or
/// bottom. Not algebraic; serves as a negative control for the checker.
#[derive(Clone, Debug)]
pub struct SupportHeadOp {
    pub kind: MonadKind,
}

impl Operation for SupportHeadOp {
    fn arity(&self) -> usize {
        1
    }

    fn kind(&self) -> &MonadKind {
        &self.kind
    }

    fn apply<X: Carrier>(&self, args: &[MonadValue<X>]) -> Result<MonadValue<X>> {
        let [arg] = args else {
            return Err(Error::ArityMismatch {
                what: "support-head".into(),
                expected: 1,
                got: args.len(),
            });
        };
        self.kind.expect(arg.kind())?;
        Ok(match arg.support().into_iter().next() {
            Some(x) => MonadValue::unit(&self.kind, x),
            None => MonadValue::bottom(&self.kind),
        })
    }

    fn name(&self) -> String {
        "support-head".into()
    }
}

pub fn effect_to_op(effect: &GenericEffect) -> DerivedOperation {
    DerivedOperation {
        effect: effect.clone(),
    }
}

/// `Γ = op(η(1), …, η(n))` over `[n]`.
pub fn op_to_effect<O: Operation>(op: &O, arity: usize) -> Result<GenericEffect> {
    if op.arity() != arity {
        return Err(Error::ArityMismatch {
            what: op.name(),
            expected: op.arity(),
            got: arity,
        });
    }
    let units: Vec<MonadValue<usize>> = (1..=arity)
        .map(|i| MonadValue::unit(op.kind(), i))
        .collect();
    GenericEffect::new(arity, op.apply(&units)?)
}

/// `H = η(1) ∈ T([1])`.
pub fn trivial_effect(kind: &MonadKind) -> GenericEffect {
    GenericEffect::new(1, MonadValue::unit(kind, 1)).expect("arity 1 is within the cap")
}

/// `⊥ₙ ∈ T([n])`.
pub fn bottom_effect(kind: &MonadKind, arity: usize) -> Result<GenericEffect> {
    GenericEffect::new(arity, MonadValue::bottom(kind))
}

/// Sequential composition of `head` with one presentation per index.
///
/// Block `i` of the result occupies indices `o_i + 1 ..= o_i + m_i` where
/// `o_i = m_1 + … + m_{i-1}`; the row is the concatenation of the family's rows.
pub fn seq_compose<Y: Carrier>(
    head: &GenericEffect,
    family: &[Presentation<Y>],
) -> Result<Presentation<Y>> {
    if family.len() != head.arity() {
        return Err(Error::ArityMismatch {
            what: "composition family".into(),
            expected: head.arity(),
            got: family.len(),
        });
    }
    for p in family {
        head.kind().expect(p.kind())?;
    }
    let offsets: Vec<usize> = family
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.effect().arity();
            Some(o)
        })
        .collect();
    let total: usize = family.iter().map(|p| p.effect().arity()).sum();
    let body = head.body().bind(|&i| {
        let o = offsets[i - 1];
        Ok(family[i - 1].effect().body().map_carrier(|&j| o + j))
    })?;
    let row = family
        .iter()
        .flat_map(|p| p.row().iter().cloned())
        .collect();
    Presentation::new(GenericEffect::new(total, body)?, row)
}

/// Settings shared by the semantic checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub trials: u64,
    /// Carriers range over `{0, …, k-1}` for `k ≤ carrier_size`.
    pub carrier_size: u32,
    /// Largest arity of generated generic effects.
    pub max_arity: usize,
    pub seed: u64,
    pub exec: Execution,
    pub shrink: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            trials: 100,
            carrier_size: 3,
            max_arity: 3,
            seed: 0,
            exec: Execution::default(),
            shrink: true,
        }
    }
}

pub(crate) fn table_lookup(table: &[MonadValue<u32>], x: u32) -> Result<MonadValue<u32>> {
    table
        .get(x as usize)
        .cloned()
        .ok_or_else(|| Error::InvalidValue(format!("no image for {x}")))
}

pub(crate) fn values_json<X: Carrier>(vs: &[MonadValue<X>]) -> Value {
    Value::Array(vs.iter().map(MonadValue::to_json).collect())
}

pub(crate) fn sides<X: Carrier>(lhs: &MonadValue<X>, rhs: &MonadValue<X>) -> Verdict {
    if lhs == rhs {
        Verdict::Pass
    } else {
        Verdict::Fail(json!({
            "lhs": lhs.to_json(),
            "rhs": rhs.to_json(),
            "text": format!("{lhs} ≠ {rhs}"),
        }))
    }
}

pub(crate) fn error_verdict(e: &Error) -> Verdict {
    match e {
        Error::InvalidValue(_) | Error::ArityMismatch { .. } | Error::InvalidInjection(_) => {
            Verdict::Invalid
        }
        other => Verdict::Fail(json!({ "error": other.to_string() })),
    }
}

pub(crate) struct Algebraicity<'a, O> {
    pub op: &'a O,
    pub carrier_size: u32,
}

impl<O: Operation> Property for Algebraicity<'_, O> {
    /// Arguments `μ⃗` and the Kleisli map `f` as a table.
    type Case = (Vec<MonadValue<u32>>, Vec<MonadValue<u32>>);

    fn stream(&self) -> String {
        format!("algebraicity/{}/{}", self.op.kind(), self.op.name())
    }

    fn generate(&self, rng: &mut ChaCha8Rng, trial: u64) -> Self::Case {
        let size = self.carrier_size.max(1);
        let cx = 1 + (trial % u64::from(size)) as u32;
        let cy = rng.random_range(1..=size);
        let xs: Vec<u32> = (0..cx).collect();
        let args = (0..self.op.arity())
            .map(|_| random_value(self.op.kind(), &xs, rng))
            .collect();
        (args, random_function(self.op.kind(), cx, cy, rng))
    }

    fn check(&self, (args, f): &Self::Case) -> Verdict {
        let run = || -> Result<Verdict> {
            let lhs = self.op.apply(args)?.bind(|&x| table_lookup(f, x))?;
            let mapped = args
                .iter()
                .map(|mu| mu.bind(|&x| table_lookup(f, x)))
                .collect::<Result<Vec<_>>>()?;
            let rhs = self.op.apply(&mapped)?;
            Ok(sides(&lhs, &rhs))
        };
        run().unwrap_or_else(|e| error_verdict(&e))
    }

    fn describe(&self, (args, f): &Self::Case) -> Value {
        json!({ "op": self.op.name(), "args": values_json(args), "f": values_json(f) })
    }
}

/// Searches for a violation of `op(μ⃗) >>= f = op(μ⃗ >>= f)`.
pub fn check_algebraic<O: Operation>(op: &O, cfg: &CheckConfig) -> CheckReport {
    let prop = Algebraicity {
        op,
        carrier_size: cfg.carrier_size,
    };
    run_property(
        &prop,
        "algebraicity",
        cfg.trials.max(1),
        cfg.seed,
        cfg.exec,
        cfg.shrink,
    )
}

pub(crate) struct Commutativity {
    pub kind: MonadKind,
    pub max_arity: usize,
    pub carrier_size: u32,
}

impl Commutativity {
    /// Both sides of the exchange law for `Γ`, `Δ` and the grid `x_{i,j}`.
    pub(crate) fn sides(
        gamma: &GenericEffect,
        delta: &GenericEffect,
        grid: &[Vec<u32>],
    ) -> Result<(MonadValue<u32>, MonadValue<u32>)> {
        let kind = gamma.kind();
        let cell = |i: usize, j: usize| -> Result<MonadValue<u32>> {
            grid.get(i - 1)
                .and_then(|r| r.get(j - 1))
                .map(|&x| MonadValue::unit(kind, x))
                .ok_or_else(|| Error::InvalidValue(format!("grid has no cell ({i},{j})")))
        };
        let lhs = gamma.body().bind(|&i| delta.body().bind(|&j| cell(i, j)))?;
        let rhs = delta.body().bind(|&j| gamma.body().bind(|&i| cell(i, j)))?;
        Ok((lhs, rhs))
    }
}

impl Property for Commutativity {
    type Case = (GenericEffect, GenericEffect, Vec<Vec<u32>>);

    fn stream(&self) -> String {
        format!("commutativity/{}", self.kind)
    }

    fn generate(&self, rng: &mut ChaCha8Rng, _trial: u64) -> Self::Case {
        let n = rng.random_range(0..=self.max_arity);
        let m = rng.random_range(0..=self.max_arity);
        let size = self.carrier_size.max(1);
        let grid = (0..self.max_arity)
            .map(|_| {
                (0..self.max_arity)
                    .map(|_| rng.random_range(0..size))
                    .collect()
            })
            .collect();
        (
            random_effect(&self.kind, n, rng),
            random_effect(&self.kind, m, rng),
            grid,
        )
    }

    fn check(&self, (gamma, delta, grid): &Self::Case) -> Verdict {
        match Self::sides(gamma, delta, grid) {
            Ok((lhs, rhs)) => sides(&lhs, &rhs),
            Err(e) => error_verdict(&e),
        }
    }

    fn describe(&self, (gamma, delta, grid): &Self::Case) -> Value {
        json!({ "gamma": gamma.to_json(), "delta": delta.to_json(), "grid": grid })
    }
}

/// Searches for a violation of the diagram-exchange law on random
/// `Γ ∈ T([n])`, `Δ ∈ T([m])` and grids `x_{i,j}`.
pub fn check_commutative(kind: &MonadKind, cfg: &CheckConfig) -> CheckReport {
    let prop = Commutativity {
        kind: kind.clone(),
        max_arity: cfg.max_arity,
        carrier_size: cfg.carrier_size,
    };
    run_property(
        &prop,
        "commutativity",
        cfg.trials.max(1),
        cfg.seed,
        cfg.exec,
        cfg.shrink,
    )
}

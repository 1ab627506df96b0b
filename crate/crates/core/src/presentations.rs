//! Formal presentations `(Γ, ⟨x_i⟩)` of monadic values.
//!
//! A [`GenericEffect`] is an element of `T([n])` over the index set
//! `{1, …, n}`; a [`Presentation`] pairs one with a row of `n` carrier
//! elements. Presentations are compared through their interpretation, never
//! structurally: many presentations denote the same value.

use serde_json::{json, Value};

use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::monads::{MonadKind, MonadValue, Payload};

/// Largest arity a generic effect may have.
pub const DEFAULT_ARITY_CAP: usize = 64;

/// An element of `T([n])` together with its arity `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenericEffect {
    arity: usize,
    body: MonadValue<usize>,
}

impl GenericEffect {
    pub fn new(arity: usize, body: MonadValue<usize>) -> Result<Self> {
        Self::with_cap(arity, body, DEFAULT_ARITY_CAP)
    }

    pub fn with_cap(arity: usize, body: MonadValue<usize>, cap: usize) -> Result<Self> {
        if arity > cap {
            return Err(Error::ArityCap { arity, cap });
        }
        if let Some(i) = body.support().into_iter().find(|&i| i == 0 || i > arity) {
            return Err(Error::InvalidValue(format!(
                "index {i} is outside [1..{arity}]"
            )));
        }
        Ok(GenericEffect { arity, body })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &MonadValue<usize> {
        &self.body
    }

    pub fn kind(&self) -> &MonadKind {
        self.body.kind()
    }

    /// Whether this is the trivial effect `H = η(1) ∈ T([1])`.
    pub fn is_trivial(&self) -> bool {
        self.arity == 1 && self.body == MonadValue::unit(self.kind(), 1)
    }

    fn repr(&self) -> String {
        if self.is_trivial() {
            return "η".to_owned();
        }
        if self.body.is_bottom() {
            return "⊥".to_owned();
        }
        match self.body.payload() {
            Payload::Dist(entries) => (1..=self.arity)
                .map(|i| {
                    entries
                        .get(&i)
                        .map_or_else(|| "0".to_owned(), ToString::to_string)
                })
                .collect::<Vec<_>>()
                .join(","),
            Payload::Powerset(items) => (1..=self.arity)
                .map(|i| if items.contains(&i) { "1" } else { "0" })
                .collect::<Vec<_>>()
                .join(","),
            _ => self.body.to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "arity": self.arity, "body": self.body.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arity = v
            .get("arity")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Decode(format!("missing arity in {v}")))?;
        let body = v
            .get("body")
            .ok_or_else(|| Error::Decode(format!("missing body in {v}")))?;
        Self::new(arity as usize, MonadValue::from_json(body)?)
    }
}

/// Output format for [`Presentation::render`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RenderFormat {
    #[default]
    Text,
    Machine,
}

/// A generic effect paired with a value row of matching length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation<X> {
    effect: GenericEffect,
    row: Vec<X>,
}

impl<X: Carrier> Presentation<X> {
    pub fn new(effect: GenericEffect, row: Vec<X>) -> Result<Self> {
        if row.len() != effect.arity() {
            return Err(Error::ArityMismatch {
                what: "presentation row".into(),
                expected: effect.arity(),
                got: row.len(),
            });
        }
        Ok(Presentation { effect, row })
    }

    pub fn effect(&self) -> &GenericEffect {
        &self.effect
    }

    pub fn row(&self) -> &[X] {
        &self.row
    }

    pub fn kind(&self) -> &MonadKind {
        self.effect.kind()
    }

    /// The interpretation `T(i ↦ row_i)(Γ)`.
    pub fn interpret(&self) -> MonadValue<X> {
        self.effect.body.map_carrier(|&i| self.row[i - 1].clone())
    }

    /// Presents `μ` over its support, enumerated in canonical order.
    pub fn decompose(mu: &MonadValue<X>) -> Result<Self> {
        let support = mu.support();
        let body =
            mu.map_carrier(|x| support.binary_search(x).expect("element of the support") + 1);
        Presentation::new(GenericEffect::new(support.len(), body)?, support)
    }

    /// `ξ =_I ρ`: equal interpretations.
    pub fn diagram_eq(&self, other: &Presentation<X>) -> Result<bool> {
        self.kind().expect(other.kind())?;
        Ok(self.interpret() == other.interpret())
    }

    /// `ξ ⊑ ρ`: ordered interpretations.
    pub fn diagram_leq(&self, other: &Presentation<X>) -> Result<bool> {
        self.interpret().leq(&other.interpret())
    }

    /// Extends along an injection `[n] ↪ [m]`, where `m = n + fill.len()`.
    ///
    /// `injection[i - 1]` is the image of index `i`; the positions outside
    /// the image receive `fill` in increasing order.
    pub fn extend(&self, injection: &[usize], fill: Vec<X>) -> Result<Self> {
        let n = self.effect.arity;
        if injection.len() != n {
            return Err(Error::InvalidInjection(format!(
                "injection has {} entries, expected {n}",
                injection.len()
            )));
        }
        let m = n + fill.len();
        let mut slots: Vec<Option<X>> = vec![None; m];
        for (i, &target) in injection.iter().enumerate() {
            if target == 0 || target > m {
                return Err(Error::InvalidInjection(format!(
                    "target {target} is outside [1..{m}]"
                )));
            }
            if slots[target - 1].is_some() {
                return Err(Error::InvalidInjection(format!(
                    "index {target} is hit twice"
                )));
            }
            slots[target - 1] = Some(self.row[i].clone());
        }
        let mut fill = fill.into_iter();
        let row: Vec<X> = slots
            .into_iter()
            .map(|s| {
                s.or_else(|| fill.next())
                    .expect("fill covers the complement")
            })
            .collect();
        let body = self.effect.body.map_carrier(|&i| injection[i - 1]);
        Presentation::new(GenericEffect::new(m, body)?, row)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "effect": self.effect.to_json(),
            "row": self.row.iter().map(Carrier::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let effect = GenericEffect::from_json(
            v.get("effect")
                .ok_or_else(|| Error::Decode(format!("missing effect in {v}")))?,
        )?;
        let row = v
            .get("row")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Decode(format!("missing row in {v}")))?
            .iter()
            .map(X::from_json)
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(effect, row)
    }

    /// `[Γ ‖ 1→x₁ ; 2→x₂ ; …]`, or the canonical machine serialization.
    pub fn render(&self, format: RenderFormat) -> String {
        match format {
            RenderFormat::Machine => self.to_json().to_string(),
            RenderFormat::Text => {
                let row: Vec<String> = self
                    .row
                    .iter()
                    .enumerate()
                    .map(|(i, x)| format!("{}→{x}", i + 1))
                    .collect();
                format!("[{} ‖ {}]", self.effect.repr(), row.join(" ; "))
            }
        }
    }
}

impl<X: Carrier> std::fmt::Display for Presentation<X> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render(RenderFormat::Text))
    }
}

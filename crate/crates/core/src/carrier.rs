//! Carrier elements: anything with a total canonical order and a canonical
//! JSON form.

use std::fmt::{Debug, Display};

use serde_json::Value;

use crate::error::{Error, Result};

/// An element of the set a monad is applied to.
///
/// The `Ord` instance is the canonical ordering used by `support` and
/// `decompose`.
pub trait Carrier: Clone + Ord + Debug + Display + Send + Sync + 'static {
    fn to_json(&self) -> Value;

    fn from_json(value: &Value) -> Result<Self>;

    /// Strictly smaller carrier elements, used by the counterexample shrinker.
    fn shrink_carrier(&self) -> Vec<Self> {
        Vec::new()
    }
}

impl Carrier for u32 {
    fn to_json(&self) -> Value {
        Value::from(*self)
    }

    fn from_json(value: &Value) -> Result<Self> {
        value
            .as_u64()
            .and_then(|n| u32::try_from(n).ok())
            .ok_or_else(|| Error::Decode(format!("expected a u32, found {value}")))
    }

    fn shrink_carrier(&self) -> Vec<Self> {
        match *self {
            0 => vec![],
            1 => vec![0],
            n => vec![0, n - 1],
        }
    }
}

impl Carrier for usize {
    fn to_json(&self) -> Value {
        Value::from(*self as u64)
    }

    fn from_json(value: &Value) -> Result<Self> {
        value
            .as_u64()
            .and_then(|n| usize::try_from(n).ok())
            .ok_or_else(|| Error::Decode(format!("expected an index, found {value}")))
    }
}

impl Carrier for String {
    fn to_json(&self) -> Value {
        Value::String(self.clone())
    }

    fn from_json(value: &Value) -> Result<Self> {
        value
            .as_str()
            .map(str::to_owned)
            .ok_or_else(|| Error::Decode(format!("expected a string, found {value}")))
    }
}

//! Canonical machine serialization of monadic values and their text rendering.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::kind::{KindTag, MonadKind, Store};
use super::value::{MonadValue, Outcome, Payload, Prob};
use crate::carrier::Carrier;
use crate::error::{Error, Result};

/// Lowest-terms `"p/q"` form.
pub fn prob_to_string(p: &Prob) -> String {
    format!("{}/{}", p.numer(), p.denom())
}

pub fn prob_from_str(s: &str) -> Result<Prob> {
    let bad = || Error::Decode(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Prob::new(n, d))
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::Decode(format!("missing field `{name}` in {v}")))
}

fn strings(v: &Value) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| Error::Decode(format!("expected an array, found {v}")))?
        .iter()
        .map(String::from_json)
        .collect()
}

fn tail_to_json<X: Carrier>(tail: &Option<X>) -> Value {
    match tail {
        Some(x) => json!({ "value": x.to_json() }),
        None => json!("diverge"),
    }
}

fn tail_from_json<X: Carrier>(v: &Value) -> Result<Option<X>> {
    if v.as_str() == Some("diverge") {
        return Ok(None);
    }
    Ok(Some(X::from_json(field(v, "value")?)?))
}

/// Reads the kind (with its parameters) out of a serialized value.
pub fn kind_from_json(v: &Value) -> Result<MonadKind> {
    let tag = field(v, "kind")?
        .as_str()
        .and_then(KindTag::from_name)
        .ok_or_else(|| Error::Decode(format!("unknown kind in {v}")))?;
    match tag {
        KindTag::Maybe => Ok(MonadKind::Maybe),
        KindTag::Powerset => Ok(MonadKind::Powerset),
        KindTag::Subdistribution => Ok(MonadKind::Subdistribution),
        KindTag::Exception => MonadKind::exception(strings(field(v, "exceptions")?)?),
        KindTag::GlobalState => MonadKind::global_state_capped(
            strings(field(v, "locations")?)?,
            super::kind::MAX_LOCATIONS,
        ),
        KindTag::Output => MonadKind::output(
            field(v, "alphabet")?
                .as_str()
                .ok_or_else(|| Error::Decode("alphabet must be a string".into()))?
                .chars(),
        ),
    }
}

impl<X: Carrier> MonadValue<X> {
    pub fn to_json(&self) -> Value {
        let kind = self.kind();
        match self.payload() {
            Payload::Maybe(x) => json!({ "kind": "maybe", "result": tail_to_json(x) }),
            Payload::Exception(o) => {
                let result = match o {
                    Outcome::Value(x) => json!({ "value": x.to_json() }),
                    Outcome::Raised(e) => json!({ "raised": e }),
                    Outcome::Diverge => json!("diverge"),
                };
                json!({ "kind": "exception", "exceptions": kind.exceptions(), "result": result })
            }
            Payload::Powerset(items) => json!({
                "kind": "powerset",
                "elements": items.iter().map(Carrier::to_json).collect::<Vec<_>>(),
            }),
            Payload::Dist(entries) => json!({
                "kind": "dist",
                "entries": entries
                    .iter()
                    .map(|(x, p)| json!([x.to_json(), prob_to_string(p)]))
                    .collect::<Vec<_>>(),
            }),
            Payload::State(table) => {
                let width = kind.locations().len();
                let rows: Vec<Value> = table
                    .iter()
                    .enumerate()
                    .map(|(s, cell)| {
                        let key = Store(s as u32).render(width);
                        match cell {
                            Some((x, t)) => {
                                json!([key, { "value": x.to_json(), "store": t.render(width) }])
                            }
                            None => json!([key, "diverge"]),
                        }
                    })
                    .collect();
                json!({ "kind": "state", "locations": kind.locations(), "table": rows })
            }
            Payload::Output { printed, tail } => json!({
                "kind": "output",
                "alphabet": kind.alphabet().iter().collect::<String>(),
                "printed": printed,
                "result": tail_to_json(tail),
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = kind_from_json(v)?;
        let payload = match kind.tag() {
            KindTag::Maybe => Payload::Maybe(tail_from_json(field(v, "result")?)?),
            KindTag::Exception => {
                let r = field(v, "result")?;
                Payload::Exception(if r.as_str() == Some("diverge") {
                    Outcome::Diverge
                } else if let Some(e) = r.get("raised") {
                    Outcome::Raised(String::from_json(e)?)
                } else {
                    Outcome::Value(X::from_json(field(r, "value")?)?)
                })
            }
            KindTag::Powerset => Payload::Powerset(
                field(v, "elements")?
                    .as_array()
                    .ok_or_else(|| Error::Decode("elements must be an array".into()))?
                    .iter()
                    .map(X::from_json)
                    .collect::<Result<_>>()?,
            ),
            KindTag::Subdistribution => {
                let mut entries = Vec::new();
                for e in field(v, "entries")?
                    .as_array()
                    .ok_or_else(|| Error::Decode("entries must be an array".into()))?
                {
                    let pair = e
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| Error::Decode(format!("bad entry {e}")))?;
                    let p = pair[1]
                        .as_str()
                        .ok_or_else(|| Error::Decode(format!("bad weight {}", pair[1])))?;
                    entries.push((X::from_json(&pair[0])?, prob_from_str(p)?));
                }
                return MonadValue::dist(entries);
            }
            KindTag::GlobalState => {
                let width = kind.locations().len();
                let mut table = vec![None; kind.store_count()];
                let mut seen = vec![false; kind.store_count()];
                for row in field(v, "table")?
                    .as_array()
                    .ok_or_else(|| Error::Decode("table must be an array".into()))?
                {
                    let pair = row
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| Error::Decode(format!("bad table row {row}")))?;
                    let key = Store::parse(&String::from_json(&pair[0])?, width)?;
                    seen[key.0 as usize] = true;
                    if pair[1].as_str() != Some("diverge") {
                        let x = X::from_json(field(&pair[1], "value")?)?;
                        let t =
                            Store::parse(&String::from_json(field(&pair[1], "store")?)?, width)?;
                        table[key.0 as usize] = Some((x, t));
                    }
                }
                if seen.iter().any(|s| !s) {
                    return Err(Error::Decode("state table must list every store".into()));
                }
                Payload::State(table)
            }
            KindTag::Output => Payload::Output {
                printed: String::from_json(field(v, "printed")?)?,
                tail: tail_from_json(field(v, "result")?)?,
            },
        };
        MonadValue::new(kind, payload)
    }
}

impl<X: Carrier> fmt::Display for MonadValue<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn tail<X: fmt::Display>(t: &Option<X>) -> String {
            t.as_ref().map_or_else(|| "↑".to_owned(), |x| x.to_string())
        }
        match self.payload() {
            Payload::Maybe(x) => f.write_str(&tail(x)),
            Payload::Exception(Outcome::Value(x)) => write!(f, "{x}"),
            Payload::Exception(Outcome::Raised(e)) => write!(f, "raise[{e}]"),
            Payload::Exception(Outcome::Diverge) => f.write_str("↑"),
            Payload::Powerset(items) => {
                let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            Payload::Dist(entries) => {
                let parts: Vec<String> = entries.iter().map(|(x, p)| format!("{x}: {p}")).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            Payload::State(table) => {
                let width = self.kind().locations().len();
                let parts: Vec<String> = table
                    .iter()
                    .enumerate()
                    .map(|(s, cell)| {
                        let key = Store(s as u32).render(width);
                        match cell {
                            Some((x, t)) => format!("{key} ↦ ({x}, {})", t.render(width)),
                            None => format!("{key} ↦ ↑"),
                        }
                    })
                    .collect();
                write!(f, "[{}]", parts.join("; "))
            }
            Payload::Output { printed, tail: t } => write!(f, "({printed:?}, {})", tail(t)),
        }
    }
}

//! The six shipped monads: maybe, exceptions, finite powerset, exact
//! subdistributions, boolean global state and output.
//!
//! Every value is immutable and kept in canonical form, so `==` decides
//! monadic equality and [`MonadValue::leq`] decides the instance order.

mod kind;
mod ops;
mod serial;
mod value;

pub use kind::{KindTag, MonadKind, Store, DEFAULT_LOCATION_CAP, MAX_LOCATIONS};
pub use ops::{Op, OpDescriptor};
pub use serial::{kind_from_json, prob_from_str, prob_to_string};
pub use value::{MonadValue, Outcome, Payload, Prob};

pub(crate) use value::ratio;

/// `p/q` as an exact probability.
pub fn prob(p: i64, q: i64) -> Prob {
    ratio(p, q)
}

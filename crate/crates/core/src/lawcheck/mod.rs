//! Randomized law checking: properties, shrinking, and the suite runner.

mod laws;
mod property;
pub mod shrink;
mod suite;

pub use laws::{Law, CONGRUENCE_FUEL};
pub use property::{run_property, CheckReport, Counterexample, Property, Verdict};
pub use suite::{replay, run_law, run_law_suite, LawCell, LawReport, LawSuiteConfig};

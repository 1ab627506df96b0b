use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use super::shrink::{minimize, Shrink};
use crate::gen::rng_for;
use crate::par::{find_first, Execution};

/// Outcome of checking one generated case.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Pass,
    /// Holds the two sides (or an error message) for the report.
    Fail(Value),
    /// The case does not satisfy the property's preconditions (only produced by shrinking).
    Invalid,
}

/// A checkable law over randomly generated cases.
pub trait Property: Sync {
    type Case: Shrink + Send;

    /// Stream name mixed into the per-trial RNG seed.
    fn stream(&self) -> String;

    fn generate(&self, rng: &mut ChaCha8Rng, trial: u64) -> Self::Case;

    fn check(&self, case: &Self::Case) -> Verdict;

    fn describe(&self, case: &Self::Case) -> Value;
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    /// Trial index; regenerating it from the same seed reproduces `original`.
    pub trial: u64,
    pub original: Value,
    /// The shrunk case.
    pub case: Value,
    pub detail: Value,
}

/// Result of running one law.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub law: String,
    pub pass: bool,
    pub trials: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

pub(crate) fn regenerate<P: Property>(prop: &P, seed: u64, trial: u64) -> P::Case {
    prop.generate(&mut rng_for(seed, &prop.stream(), trial), trial)
}

/// Runs `trials` cases; on failure, reports the lowest failing trial, shrunk.
pub fn run_property<P: Property>(
    prop: &P,
    law: &str,
    trials: u64,
    seed: u64,
    exec: Execution,
    shrink: bool,
) -> CheckReport {
    let failure = find_first(exec, trials, |t| {
        let case = regenerate(prop, seed, t);
        match prop.check(&case) {
            Verdict::Fail(_) => Some(case),
            _ => None,
        }
    });
    let counterexample = failure.map(|(trial, case)| {
        let original = prop.describe(&case);
        let case = if shrink {
            minimize(case, |c| matches!(prop.check(c), Verdict::Fail(_)))
        } else {
            case
        };
        let detail = match prop.check(&case) {
            Verdict::Fail(d) => d,
            _ => unreachable!("shrinking keeps failing cases"),
        };
        Counterexample {
            trial,
            original,
            case: prop.describe(&case),
            detail,
        }
    });
    CheckReport {
        law: law.to_owned(),
        pass: counterexample.is_none(),
        trials,
        seed,
        counterexample,
    }
}

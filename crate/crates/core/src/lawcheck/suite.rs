use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use super::laws::{dispatch, Bounds, Law, Visitor};
use super::property::{regenerate, run_property, CheckReport, Property, Verdict};
use crate::error::{Error, Result};
use crate::gen::standard_kinds;
use crate::monads::MonadKind;
use crate::par::{map_ordered, Execution};

#[derive(Clone, Debug)]
pub struct LawSuiteConfig {
    pub seed: u64,
    /// Trials per (law, monad) cell.
    pub trials: u64,
    pub carrier_size_max: u32,
    pub arity_max: usize,
    pub monads: Vec<MonadKind>,
    pub laws: Vec<Law>,
    pub exec: Execution,
    pub shrink: bool,
}

impl Default for LawSuiteConfig {
    fn default() -> Self {
        LawSuiteConfig {
            seed: 1,
            trials: 100,
            carrier_size_max: 3,
            arity_max: 3,
            monads: standard_kinds(),
            laws: Law::ALL.to_vec(),
            exec: Execution::default(),
            shrink: true,
        }
    }
}

impl LawSuiteConfig {
    /// Selects laws by name.
    pub fn with_law_names<S: AsRef<str>>(mut self, names: &[S]) -> Result<Self> {
        self.laws = names
            .iter()
            .map(|n| Law::from_name(n.as_ref()))
            .collect::<Result<_>>()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.carrier_size_max == 0 || self.arity_max == 0 {
            return Err(Error::InvalidValue(
                "trials and size bounds must be at least 1".into(),
            ));
        }
        Ok(())
    }

    fn bounds(&self) -> Bounds {
        Bounds {
            carrier: self.carrier_size_max,
            arity: self.arity_max,
        }
    }
}

/// Outcome of one law at one monad.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawCell {
    pub monad: String,
    pub expected_pass: bool,
    #[serde(flatten)]
    pub check: CheckReport,
}

impl LawCell {
    pub fn as_expected(&self) -> bool {
        self.check.pass == self.expected_pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawReport {
    pub seed: u64,
    pub trials: u64,
    pub cells: Vec<LawCell>,
}

impl LawReport {
    /// True unless some law expected to hold was refuted.
    pub fn success(&self) -> bool {
        self.cells.iter().all(|c| c.check.pass || !c.expected_pass)
    }

    pub fn cell(&self, law: Law, monad: &MonadKind) -> Option<&LawCell> {
        let monad = monad.to_string();
        self.cells
            .iter()
            .find(|c| c.check.law == law.name() && c.monad == monad)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// One line per cell, with the counterexample for failures.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            let status = if c.check.pass { "PASS" } else { "FAIL" };
            let note = match (c.check.pass, c.expected_pass) {
                (false, false) => " (expected)",
                (true, false) => " (unexpected pass)",
                _ => "",
            };
            let _ = writeln!(
                out,
                "{status}  {:<22} {:<18} {} trials{note}",
                c.check.law, c.monad, c.check.trials
            );
            if let Some(cx) = &c.check.counterexample {
                let text = cx
                    .detail
                    .get("text")
                    .and_then(Value::as_str)
                    .map(str::to_owned)
                    .unwrap_or_else(|| cx.detail.to_string());
                let _ = writeln!(out, "      trial {}: {text}", cx.trial);
                let _ = writeln!(out, "      case: {}", cx.case);
            }
        }
        let failed = self.cells.iter().filter(|c| !c.check.pass).count();
        let _ = writeln!(
            out,
            "{} cells, {failed} failed, {}",
            self.cells.len(),
            if self.success() {
                "all expectations met"
            } else {
                "EXPECTED-PASS LAW FAILED"
            }
        );
        out
    }
}

struct Run {
    name: &'static str,
    trials: u64,
    seed: u64,
    exec: Execution,
    shrink: bool,
}

impl Visitor for Run {
    type Out = CheckReport;
    fn visit<P: Property>(self, prop: &P) -> CheckReport {
        run_property(
            prop,
            self.name,
            self.trials,
            self.seed,
            self.exec,
            self.shrink,
        )
    }
}

struct Replay {
    seed: u64,
    trial: u64,
}

impl Visitor for Replay {
    type Out = Verdict;
    fn visit<P: Property>(self, prop: &P) -> Verdict {
        prop.check(&regenerate(prop, self.seed, self.trial))
    }
}

/// Runs one law at one monad.
pub fn run_law(law: Law, kind: &MonadKind, cfg: &LawSuiteConfig) -> Result<LawCell> {
    cfg.validate()?;
    let check = dispatch(
        law,
        kind,
        cfg.bounds(),
        Run {
            name: law.name(),
            trials: cfg.trials,
            seed: cfg.seed,
            exec: cfg.exec,
            shrink: cfg.shrink,
        },
    );
    Ok(LawCell {
        monad: kind.to_string(),
        expected_pass: law.expected_to_hold(kind),
        check,
    })
}

/// Runs every selected law at every selected monad. Cells run in parallel
/// under [`Execution::Parallel`]; the report does not depend on scheduling.
pub fn run_law_suite(cfg: &LawSuiteConfig) -> Result<LawReport> {
    cfg.validate()?;
    let pairs: Vec<(Law, MonadKind)> = cfg
        .laws
        .iter()
        .flat_map(|&l| cfg.monads.iter().map(move |k| (l, k.clone())))
        .collect();
    let cells = map_ordered(cfg.exec, &pairs, |(law, kind)| run_law(*law, kind, cfg))
        .into_iter()
        .collect::<Result<_>>()?;
    Ok(LawReport {
        seed: cfg.seed,
        trials: cfg.trials,
        cells,
    })
}

/// Re-checks the unshrunk case of `trial` alone.
pub fn replay(law: Law, kind: &MonadKind, cfg: &LawSuiteConfig, trial: u64) -> Verdict {
    dispatch(
        law,
        kind,
        cfg.bounds(),
        Replay {
            seed: cfg.seed,
            trial,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_selection_gives_empty_report() {
        let cfg = LawSuiteConfig {
            laws: vec![],
            ..Default::default()
        };
        let r = run_law_suite(&cfg).unwrap();
        assert!(r.cells.is_empty());
        assert!(r.success());
    }

    #[test]
    fn unknown_law_is_rejected() {
        assert!(matches!(
            LawSuiteConfig::default().with_law_names(&["kleisli", "frobnicate"]),
            Err(Error::UnknownLaw(_))
        ));
    }

    #[test]
    fn binding_on_subdistributions() {
        let cfg = LawSuiteConfig {
            monads: vec![MonadKind::Subdistribution],
            laws: vec![Law::Binding],
            ..Default::default()
        };
        let r = run_law_suite(&cfg).unwrap();
        assert_eq!(r.cells.len(), 1);
        assert!(r.cells[0].check.pass);
        assert_eq!(r.cells[0].check.trials, 100);
    }

    #[test]
    fn failures_replay() {
        let cfg = LawSuiteConfig {
            trials: 200,
            ..Default::default()
        };
        let kind = MonadKind::output("ab".chars()).unwrap();
        let cell = run_law(Law::Commutativity, &kind, &cfg).unwrap();
        let cx = cell
            .check
            .counterexample
            .expect("output is not commutative");
        assert!(matches!(
            replay(Law::Commutativity, &kind, &cfg, cx.trial),
            Verdict::Fail(_)
        ));
    }
}

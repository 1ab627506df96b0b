//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance`. Exits nonzero if a criterion
//! fails, unless it is listed in `KNOWN_UNATTAINABLE` (which must then still
//! fail: an unexpected pass is reported too).

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use effdiag::algebra::{
    check_algebraic, check_commutative, effect_to_op, op_to_effect, seq_compose, trivial_effect,
    CheckConfig, Operation, SupportHeadOp,
};
use effdiag::gen::{lower, random_effect, random_function, random_value, rng_for};
use effdiag::lambda::random::random_term;
use effdiag::lambda::{eval, eval_monadic_term, parse, Fuel, Prelude, Term};
use effdiag::monads::{prob, Payload};
use effdiag::{GenericEffect, KindTag, MonadKind, MonadValue, OpDescriptor, Presentation};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Criteria whose stated outcome contradicts the mathematics; they are run
/// as stated and expected to print FAIL.
///
/// 6b: `Γ >>= (i ↦ ⊥) = ⊥` fails for exceptions (`raise` ignores its
/// continuation) and holds for global state (every branch ends in ⊥), so the
/// passing set is {maybe, powerset, dist, state}, not {maybe, exception,
/// powerset, dist}.
const KNOWN_UNATTAINABLE: &[&str] = &["6b"];

const SEED: u64 = 2024;

fn kinds() -> Vec<MonadKind> {
    vec![
        MonadKind::Maybe,
        MonadKind::exception(["e1", "e2"]).unwrap(),
        MonadKind::Powerset,
        MonadKind::Subdistribution,
        MonadKind::global_state(["l1", "l2", "l3"]).unwrap(),
        MonadKind::output("ab".chars()).unwrap(),
    ]
}

fn carrier(rng: &mut ChaCha8Rng, max: u32) -> Vec<u32> {
    (0..rng.random_range(1..=max)).collect()
}

fn at(f: &[MonadValue<u32>], x: u32) -> effdiag::Result<MonadValue<u32>> {
    Ok(f[x as usize].clone())
}

fn decompose_all(vs: &[MonadValue<u32>]) -> Vec<Presentation<u32>> {
    vs.iter()
        .map(|v| Presentation::decompose(v).unwrap())
        .collect()
}

struct Outcome {
    ok: bool,
    note: String,
}

fn outcome(failures: Vec<String>, cases: usize) -> Outcome {
    match failures.first() {
        None => Outcome {
            ok: true,
            note: format!("{cases} cases"),
        },
        Some(first) => Outcome {
            ok: false,
            note: format!("{} of {cases} cases failed; first: {first}", failures.len()),
        },
    }
}

fn representation() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for kind in kinds() {
        for t in 0..500 {
            let mut rng = rng_for(SEED, "acc1", t);
            let xs = carrier(&mut rng, 5);
            let mu = random_value(&kind, &xs, &mut rng);
            if let Payload::Dist(m) = mu.payload() {
                assert!(m.values().all(|p| *p.denom() <= 16.into()));
            }
            cases += 1;
            if Presentation::decompose(&mu).unwrap().interpret() != mu {
                failures.push(format!("{kind}: {mu}"));
            }
        }
    }
    outcome(failures, cases)
}

fn bijection() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for kind in kinds() {
        for t in 0..200 {
            let mut rng = rng_for(SEED, "acc2", t);
            let n = rng.random_range(0..=4);
            let g = random_effect(&kind, n, &mut rng);
            cases += 1;
            let back = op_to_effect(&effect_to_op(&g), n).unwrap();
            if back.interpret_as_indices() != g.interpret_as_indices() {
                failures.push(format!("{kind}: effect {}", g.body()));
            }
        }
        for op in OpDescriptor::signature(&kind) {
            let round = effect_to_op(&op_to_effect(&op, op.arity()).unwrap());
            for t in 0..50 {
                let mut rng = rng_for(SEED, &format!("acc2/{op}"), t);
                let xs = carrier(&mut rng, 4);
                let args: Vec<_> = (0..op.arity())
                    .map(|_| random_value(&kind, &xs, &mut rng))
                    .collect();
                cases += 1;
                if round.apply(&args).unwrap() != op.apply(&args).unwrap() {
                    failures.push(format!("{kind}: {op} on {args:?}"));
                }
            }
        }
    }
    outcome(failures, cases)
}

trait IndexView {
    fn interpret_as_indices(&self) -> MonadValue<usize>;
}

impl IndexView for GenericEffect {
    fn interpret_as_indices(&self) -> MonadValue<usize> {
        Presentation::new(self.clone(), (1..=self.arity()).collect())
            .unwrap()
            .interpret()
    }
}

fn algebraicity() -> Outcome {
    let cfg = CheckConfig {
        trials: 100,
        seed: SEED,
        ..Default::default()
    };
    let mut failures = Vec::new();
    let mut checks = 0;
    for kind in kinds() {
        for op in OpDescriptor::signature(&kind) {
            checks += 1;
            if !check_algebraic(&op, &cfg).pass {
                failures.push(format!("{kind}: {op}"));
            }
        }
        for t in 0..20 {
            let mut rng = rng_for(SEED, "acc3", t);
            let g = random_effect(&kind, rng.random_range(0..=3), &mut rng);
            checks += 1;
            if !check_algebraic(&effect_to_op(&g), &cfg).pass {
                failures.push(format!("{kind}: derived {}", g.body()));
            }
        }
        // the planted operation collapses a value to one support element,
        // which is the identity on maybe and a real change elsewhere
        if kind.tag() != KindTag::Maybe {
            checks += 1;
            let planted = SupportHeadOp { kind: kind.clone() };
            let r = check_algebraic(&planted, &cfg);
            if r.pass || r.counterexample.is_none() {
                failures.push(format!("{kind}: planted operation not caught"));
            }
        }
    }
    outcome(failures, checks)
}

fn composition() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for kind in kinds() {
        for t in 0..300 {
            let mut rng = rng_for(SEED, "acc4", t);
            let xs = carrier(&mut rng, 4);
            let n = rng.random_range(0..=3);
            let head = random_effect(&kind, n, &mut rng);
            let mids: Vec<GenericEffect> = (0..n)
                .map(|_| random_effect(&kind, rng.random_range(0..=3), &mut rng))
                .collect();
            let total: usize = mids.iter().map(GenericEffect::arity).sum();
            let leaves: Vec<MonadValue<u32>> = (0..total)
                .map(|_| random_value(&kind, &xs, &mut rng))
                .collect();
            let family: Vec<MonadValue<u32>> =
                (0..n).map(|_| random_value(&kind, &xs, &mut rng)).collect();
            cases += 1;

            // homomorphism against a direct bind of the values
            let composed = seq_compose(&head, &decompose_all(&family)).unwrap();
            let direct = head.body().bind(|&i| Ok(family[i - 1].clone())).unwrap();
            if composed.interpret() != direct {
                failures.push(format!("{kind}: homomorphism at trial {t}"));
            }

            // associativity
            let mid_pres: Vec<Presentation<usize>> = mids
                .iter()
                .map(|m| Presentation::new(m.clone(), (1..=m.arity()).collect()).unwrap())
                .collect();
            let leaves_p = decompose_all(&leaves);
            let lhs =
                seq_compose(seq_compose(&head, &mid_pres).unwrap().effect(), &leaves_p).unwrap();
            let mut offset = 0;
            let blocks: Vec<Presentation<u32>> = mids
                .iter()
                .map(|m| {
                    let b = seq_compose(m, &leaves_p[offset..offset + m.arity()]).unwrap();
                    offset += m.arity();
                    b
                })
                .collect();
            let rhs = seq_compose(&head, &blocks).unwrap();
            if !lhs.diagram_eq(&rhs).unwrap() {
                failures.push(format!("{kind}: associativity at trial {t}"));
            }

            // unit laws
            let row: Vec<u32> = (0..n).map(|_| *xs.choose(&mut rng).unwrap()).collect();
            let xi = Presentation::new(head.clone(), row.clone()).unwrap();
            let h = trivial_effect(&kind);
            let left = seq_compose(&h, std::slice::from_ref(&xi)).unwrap();
            let units: Vec<_> = row
                .iter()
                .map(|&x| Presentation::new(h.clone(), vec![x]).unwrap())
                .collect();
            let right = seq_compose(&head, &units).unwrap();
            if !left.diagram_eq(&xi).unwrap() || !right.diagram_eq(&xi).unwrap() {
                failures.push(format!("{kind}: unit laws at trial {t}"));
            }
        }
    }
    outcome(failures, cases)
}

fn binding() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for kind in kinds() {
        for t in 0..200 {
            let mut rng = rng_for(SEED, "acc5", t);
            let xs = carrier(&mut rng, 4);
            let mu = random_value(&kind, &xs, &mut rng);
            let f = random_function(&kind, xs.len() as u32, rng.random_range(1..=4), &mut rng);
            cases += 1;
            let lhs = Presentation::decompose(&mu.bind(|&x| at(&f, x)).unwrap()).unwrap();
            let d = Presentation::decompose(&mu).unwrap();
            let family: Vec<_> = d
                .row()
                .iter()
                .map(|&x| Presentation::decompose(&f[x as usize]).unwrap())
                .collect();
            let rhs = seq_compose(d.effect(), &family).unwrap();
            if !lhs.diagram_eq(&rhs).unwrap() {
                failures.push(format!("{kind}: μ={mu}"));
            }
        }
    }
    outcome(failures, cases)
}

fn order_laws() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for kind in kinds() {
        for t in 0..200 {
            let mut rng = rng_for(SEED, "acc6a", t);
            let xs = carrier(&mut rng, 4);
            let mu = random_value(&kind, &xs, &mut rng);
            cases += 1;

            let bot = MonadValue::<u32>::bottom(&kind);
            if !bot.leq(&mu).unwrap() {
                failures.push(format!("{kind}: ⊥ ⋢ {mu}"));
            }

            let n = rng.random_range(0..=4);
            let row: Vec<u32> = (0..n as u32).collect();
            let bot_n = Presentation::new(
                GenericEffect::new(n, MonadValue::bottom(&kind)).unwrap(),
                row,
            )
            .unwrap();
            let bot_0 = Presentation::<u32>::new(
                GenericEffect::new(0, MonadValue::bottom(&kind)).unwrap(),
                vec![],
            )
            .unwrap();
            if !bot_n.diagram_eq(&bot_0).unwrap() {
                failures.push(format!("{kind}: ⊥_{n} collapse"));
            }

            // rule 1: ξ ⊑ ρ implies the f-images are ordered
            let nu = lower(&mu, &mut rng);
            let f = random_function(&kind, xs.len() as u32, 3, &mut rng);
            let image = |v: &MonadValue<u32>| {
                let d = Presentation::decompose(v).unwrap();
                let fam: Vec<_> = d
                    .row()
                    .iter()
                    .map(|&x| Presentation::decompose(&f[x as usize]).unwrap())
                    .collect();
                seq_compose(d.effect(), &fam).unwrap()
            };
            if !image(&nu).diagram_leq(&image(&mu)).unwrap() {
                failures.push(format!("{kind}: monotonicity rule 1"));
            }

            // rule 2: f ⊑ g implies the images of one diagram are ordered
            let g = random_function(&kind, xs.len() as u32, 3, &mut rng);
            let f2: Vec<_> = g.iter().map(|y| lower(y, &mut rng)).collect();
            let d = Presentation::decompose(&mu).unwrap();
            let with = |h: &[MonadValue<u32>]| {
                let fam: Vec<_> = d
                    .row()
                    .iter()
                    .map(|&x| Presentation::decompose(&h[x as usize]).unwrap())
                    .collect();
                seq_compose(d.effect(), &fam).unwrap()
            };
            if !with(&f2).diagram_leq(&with(&g)).unwrap() {
                failures.push(format!("{kind}: monotonicity rule 2"));
            }

            // corollary: pointwise-ordered families
            let head = random_effect(&kind, rng.random_range(0..=3), &mut rng);
            let hi: Vec<_> = (0..head.arity())
                .map(|_| random_value(&kind, &xs, &mut rng))
                .collect();
            let lo: Vec<_> = hi.iter().map(|v| lower(v, &mut rng)).collect();
            let l = seq_compose(&head, &decompose_all(&lo)).unwrap();
            let r = seq_compose(&head, &decompose_all(&hi)).unwrap();
            if !l.diagram_leq(&r).unwrap() {
                failures.push(format!("{kind}: monotonicity corollary"));
            }
        }
    }
    outcome(failures, cases)
}

fn right_absorption() -> Outcome {
    let stated: BTreeSet<KindTag> = [
        KindTag::Maybe,
        KindTag::Exception,
        KindTag::Powerset,
        KindTag::Subdistribution,
    ]
    .into();
    let mut observed = BTreeSet::new();
    for kind in kinds() {
        let holds = (0..200).all(|t| {
            let mut rng = rng_for(SEED, "acc6b", t);
            let g = random_effect(&kind, rng.random_range(0..=4), &mut rng);
            let bot = Presentation::<u32>::new(
                GenericEffect::new(0, MonadValue::bottom(&kind)).unwrap(),
                vec![],
            )
            .unwrap();
            let family = vec![bot.clone(); g.arity()];
            seq_compose(&g, &family).unwrap().diagram_eq(&bot).unwrap()
        });
        if holds {
            observed.insert(kind.tag());
        }
    }
    let names = |s: &BTreeSet<KindTag>| s.iter().map(|t| t.name()).collect::<Vec<_>>().join(", ");
    Outcome {
        ok: observed == stated,
        note: format!(
            "holds on {{{}}}; stated {{{}}}",
            names(&observed),
            names(&stated)
        ),
    }
}

fn commutativity() -> Outcome {
    let cfg = CheckConfig {
        trials: 300,
        seed: SEED,
        ..Default::default()
    };
    let mut failing = Vec::new();
    let mut ok = true;
    for kind in kinds() {
        let r = check_commutative(&kind, &cfg);
        if !r.pass {
            failing.push(kind.tag().name());
        }
        let must_fail = matches!(kind.tag(), KindTag::Output | KindTag::GlobalState);
        if must_fail && (r.pass || r.counterexample.is_none()) {
            ok = false;
        }
    }
    // the textbook exchange: print a then b versus b then a
    let out = MonadKind::output("ab".chars()).unwrap();
    let a = GenericEffect::new(1, MonadValue::output(&out, "a", Some(1)).unwrap()).unwrap();
    let b = GenericEffect::new(1, MonadValue::output(&out, "b", Some(1)).unwrap()).unwrap();
    let ab = a.body().bind(|_| Ok(b.body().clone())).unwrap();
    let ba = b.body().bind(|_| Ok(a.body().clone())).unwrap();
    ok &= ab != ba;
    Outcome {
        ok,
        note: format!(
            "checker fails on {{{}}}; print a;b = {ab}, b;a = {ba}",
            failing.join(", ")
        ),
    }
}

fn evaluator() -> Outcome {
    let mut failures = Vec::new();
    let p = Prelude::standard();
    let dist = MonadKind::Subdistribution;
    let r = eval(&parse("choice(v, choice(v,w))").unwrap(), &dist, Fuel(10)).unwrap();
    let want =
        MonadValue::dist([(Term::var("v"), prob(3, 4)), (Term::var("w"), prob(1, 4))]).unwrap();
    if r != want {
        failures.push(format!("choice: {r}"));
    }
    let out = MonadKind::output("ab".chars()).unwrap();
    let r = eval(&parse("print[a](print[b](v))").unwrap(), &out, Fuel(10)).unwrap();
    if r != MonadValue::output(&out, "ab", Some(Term::var("v"))).unwrap() {
        failures.push(format!("print: {r}"));
    }
    let omega = p.parse("OMEGA").unwrap();
    for kind in kinds() {
        for fuel in [1, 10, 100] {
            if !eval(&omega, &kind, Fuel(fuel)).unwrap().is_bottom() {
                failures.push(format!("Ω at {fuel} under {kind}"));
            }
        }
    }
    let rec = p.parse("Z (\\e.\\x. union(x, e (succ x))) zero").unwrap();
    let fuels = [4, 8, 12, 16, 20];
    let sets: Vec<_> = fuels
        .iter()
        .map(|&f| eval(&rec, &MonadKind::Powerset, Fuel(f)).unwrap())
        .collect();
    for (i, w) in sets.windows(2).enumerate() {
        let sub = w[0].support().iter().all(|x| w[1].support().contains(x));
        if !(w[0].leq(&w[1]).unwrap() && sub && w[0] != w[1]) {
            failures.push(format!(
                "recursion chain not strict between fuels {} and {}",
                fuels[i],
                fuels[i + 1]
            ));
        }
    }
    let sizes: Vec<_> = sets.iter().map(|s| s.support().len().to_string()).collect();
    let mut o = outcome(failures, 4);
    if o.ok {
        o.note = format!(
            "recursion set sizes {} at fuels {fuels:?}",
            sizes.join(" ⊂ ")
        );
    }
    o
}

fn congruence() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for kind in kinds() {
        for t in 0..100 {
            let mut rng = rng_for(SEED, "acc8", t);
            let pool: Vec<Term> = (0..rng.random_range(1..=4))
                .map(|_| random_term(&kind, 3, &mut rng))
                .collect();
            let mu = random_value(&kind, &pool, &mut rng);
            let xi = Presentation::decompose(&mu).unwrap();
            let n = xi.row().len();
            let fill: Vec<Term> = (0..rng.random_range(0..=2))
                .map(|_| pool.choose(&mut rng).unwrap().clone())
                .collect();
            let mut targets: Vec<usize> = (1..=n + fill.len()).collect();
            targets.shuffle(&mut rng);
            targets.truncate(n);
            let rho = xi.extend(&targets, fill).unwrap();
            cases += 1;
            if !xi.diagram_eq(&rho).unwrap() {
                failures.push(format!("{kind}: ξ ≠_I ρ at trial {t}"));
                continue;
            }
            let ex = eval_monadic_term(&xi, &kind, Fuel(6)).unwrap();
            let er = eval_monadic_term(&rho, &kind, Fuel(6)).unwrap();
            if !ex.diagram_eq(&er).unwrap() {
                failures.push(format!("{kind}: {ex} ≠_I {er}"));
            }
        }
    }
    outcome(failures, cases)
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1", "representation round-trip", representation),
        ("2", "generic effect / operation bijection", bijection),
        (
            "3",
            "algebraicity (signature, derived, planted)",
            algebraicity,
        ),
        (
            "4",
            "composition homomorphism, associativity, units",
            composition,
        ),
        ("5", "binding", binding),
        (
            "6a",
            "bottom least, collapse, monotonicity rules",
            order_laws,
        ),
        ("6b", "right bottom-absorption set", right_absorption),
        ("6c", "commutativity counterexamples", commutativity),
        ("7", "evaluator fixed checks", evaluator),
        ("8", "congruence under monadic evaluation", congruence),
    ];
    let start = Instant::now();
    let mut bad = Vec::new();
    for (id, name, run) in criteria {
        let t = Instant::now();
        let o = run();
        let status = if o.ok { "PASS" } else { "FAIL" };
        let known = KNOWN_UNATTAINABLE.contains(&id);
        let tag = match (o.ok, known) {
            (false, true) => " [known unattainable]",
            (true, true) => " [unexpected pass]",
            _ => "",
        };
        println!(
            "{status} {id:<3} {name}: {}{tag} ({:.2?})",
            o.note,
            t.elapsed()
        );
        if o.ok == known {
            bad.push(id);
        }
    }
    println!("total {:.2?}", start.elapsed());
    if bad.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for: {}", bad.join(", "));
        ExitCode::FAILURE
    }
}

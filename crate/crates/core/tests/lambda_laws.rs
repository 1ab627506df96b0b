use effdiag::gen::{rng_for, standard_kinds};
use effdiag::lambda::random::{random_term, random_value};
use effdiag::lambda::{eval, eval_diagram, parse, Fuel, Prelude, Term};
use effdiag::{MonadKind, MonadValue, Op, OpDescriptor};
use proptest::prelude::*;

/// Fuel large enough for generated programs to settle.
const LIMIT: u64 = 64;

fn kind_strategy() -> impl Strategy<Value = MonadKind> {
    (0..standard_kinds().len()).prop_map(|i| standard_kinds()[i].clone())
}

/// The value of `t` once the approximation chain has stabilized.
fn settled(t: &Term, kind: &MonadKind) -> MonadValue<Term> {
    let a = eval(t, kind, Fuel(LIMIT - 1)).unwrap();
    let b = eval(t, kind, Fuel(LIMIT)).unwrap();
    assert_eq!(a, b, "{t} has not settled by fuel {LIMIT}");
    b
}

/// `t` with the atom `w` read as the variable `x`.
fn using(t: &Term, x: &str) -> Term {
    t.substitute("w", &Term::var(x))
}

fn three_terms(kind: &MonadKind, seed: u64, stream: &str) -> (Term, Term, Term) {
    let mut rng = rng_for(seed, stream, 0);
    (
        random_term(kind, 3, &mut rng),
        random_term(kind, 3, &mut rng),
        random_term(kind, 3, &mut rng),
    )
}

fn commutes(kind: &MonadKind) -> bool {
    matches!(
        kind,
        MonadKind::Maybe | MonadKind::Powerset | MonadKind::Subdistribution
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn values_evaluate_to_units(kind in kind_strategy(), seed in any::<u64>(), fuel in 0u64..5) {
        let v = random_value(&kind, 3, &mut rng_for(seed, "value", 0));
        prop_assert_eq!(eval(&v, &kind, Fuel(fuel)).unwrap(), MonadValue::unit(&kind, v.clone()));
    }

    #[test]
    fn fuel_chain_ascends(kind in kind_strategy(), seed in any::<u64>()) {
        let t = random_term(&kind, 4, &mut rng_for(seed, "chain", 0));
        let chain: Vec<_> = (0..8).map(|f| eval(&t, &kind, Fuel(f)).unwrap()).collect();
        for w in chain.windows(2) {
            prop_assert!(w[0].leq(&w[1]).unwrap(), "{}: {} ⋢ {}", t, w[0], w[1]);
        }
    }

    #[test]
    fn diagrams_are_coherent(kind in kind_strategy(), seed in any::<u64>(), fuel in 0u64..8) {
        let t = random_term(&kind, 4, &mut rng_for(seed, "coherence", 0));
        let d = eval_diagram(&t, &kind, Fuel(fuel)).unwrap();
        prop_assert_eq!(d.interpret(), eval(&t, &kind, Fuel(fuel)).unwrap());
    }

    #[test]
    fn sequencing_is_associative(kind in kind_strategy(), seed in any::<u64>()) {
        let (e, f, g) = three_terms(&kind, seed, "assoc");
        // x ← e; (y ← f; g)   vs   y ← (x ← e; f); g,   x free in f, y free in g
        let (f, g) = (using(&f, "x"), using(&g, "y"));
        let lhs = Term::let_in("x", e.clone(), Term::let_in("y", f.clone(), g.clone()));
        let rhs = Term::let_in("y", Term::let_in("x", e, f), g);
        prop_assert_eq!(settled(&lhs, &kind), settled(&rhs, &kind));
    }

    #[test]
    fn operations_hoist(kind in kind_strategy(), seed in any::<u64>()) {
        let sig = OpDescriptor::signature(&kind);
        prop_assume!(!sig.is_empty());
        let mut rng = rng_for(seed, "hoist", 0);
        let op = sig[(seed % sig.len() as u64) as usize].op().clone();
        let args: Vec<Term> = (0..op.arity()).map(|_| random_term(&kind, 2, &mut rng)).collect();
        let f = using(&random_term(&kind, 3, &mut rng), "x");
        let lhs = Term::let_in("x", Term::op(op.clone(), args.clone()).unwrap(), f.clone());
        let hoisted = args.into_iter().map(|a| Term::let_in("x", a, f.clone())).collect();
        let rhs = Term::op(op, hoisted).unwrap();
        prop_assert_eq!(settled(&lhs, &kind), settled(&rhs, &kind));
    }

    #[test]
    fn commutative_monads_commute(kind in kind_strategy(), seed in any::<u64>()) {
        prop_assume!(commutes(&kind));
        let (e, f, g) = three_terms(&kind, seed, "commute");
        let g = using(&g, "x").substitute("v", &Term::var("y"));
        let lhs = Term::let_in("x", e.clone(), Term::let_in("y", f.clone(), g.clone()));
        let rhs = Term::let_in("y", f, Term::let_in("x", e, g));
        prop_assert_eq!(settled(&lhs, &kind), settled(&rhs, &kind));
    }

    #[test]
    fn parser_reads_printed_terms(kind in kind_strategy(), seed in any::<u64>()) {
        let t = random_term(&kind, 4, &mut rng_for(seed, "print", 0));
        prop_assert_eq!(parse(&t.to_string()).unwrap(), t);
    }
}

#[test]
fn non_commutative_monads_do_not_commute() {
    let cases = [
        (
            MonadKind::output("ab".chars()).unwrap(),
            "print[a](v)",
            "print[b](v)",
        ),
        (
            MonadKind::global_state(["l"]).unwrap(),
            "write[l,1](v)",
            "read[l](v, w)",
        ),
        (
            MonadKind::exception(["e1", "e2"]).unwrap(),
            "raise[e1]",
            "raise[e2]",
        ),
    ];
    for (kind, e, f) in cases {
        let (e, f) = (parse(e).unwrap(), parse(f).unwrap());
        let g = Term::var("y");
        let lhs = Term::let_in("x", e.clone(), Term::let_in("y", f.clone(), g.clone()));
        let rhs = Term::let_in("y", f, Term::let_in("x", e, g));
        assert_ne!(settled(&lhs, &kind), settled(&rhs, &kind), "{kind}");
    }
}

#[test]
fn op_argument_order_is_left_to_right() {
    let kind = MonadKind::output("abc".chars()).unwrap();
    let t = parse("(\\x. \\y. y) (print[a](v)) (print[b](w))").unwrap();
    let r = eval(&t, &kind, Fuel(5)).unwrap();
    assert_eq!(
        r,
        MonadValue::output(&kind, "ab", Some(Term::var("w"))).unwrap()
    );
}

#[test]
fn recursion_enumerates_numerals() {
    let p = Prelude::standard();
    let t = p.parse("Z (\\e.\\x. union(x, e (succ x))) zero").unwrap();
    let sizes: Vec<usize> = (0..30)
        .map(|f| {
            eval(&t, &MonadKind::Powerset, Fuel(f))
                .unwrap()
                .support()
                .len()
        })
        .collect();
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
    assert!(sizes[29] >= 5, "{sizes:?}");
    // the first element is zero itself
    let first = eval(&t, &MonadKind::Powerset, Fuel(29)).unwrap();
    assert!(first.support().contains(p.get("zero").unwrap()));
}

#[test]
fn church_numerals_compute() {
    let p = Prelude::standard();
    // apply the numeral to print[a] and observe the count
    let kind = MonadKind::output("a".chars()).unwrap();
    let t = p.parse("three (\\z. print[a](z)) v").unwrap();
    let r = eval(&t, &kind, Fuel(20)).unwrap();
    assert_eq!(
        r,
        MonadValue::output(&kind, "aaa", Some(Term::var("v"))).unwrap()
    );
    let t = p.parse("succ two (\\z. print[a](z)) v").unwrap();
    let r = eval(&t, &kind, Fuel(20)).unwrap();
    assert_eq!(
        r,
        MonadValue::output(&kind, "aaa", Some(Term::var("v"))).unwrap()
    );
}

#[test]
fn substitution_examples() {
    let x = Term::var("x");
    assert_eq!(x.substitute("x", &Term::var("v")), Term::var("v"));
    let id = Term::abs("x", x.clone());
    assert_eq!(id.substitute("x", &Term::var("v")), id);
    let k = Term::abs("y", x);
    match k.substitute("x", &Term::var("y")) {
        Term::Abs(fresh, body) => {
            assert_ne!(fresh, "y");
            assert_eq!(*body, Term::var("y"));
        }
        other => panic!("{other}"),
    }
    assert!(matches!(
        Term::op(Op::Union, vec![]),
        Err(effdiag::Error::ArityMismatch { .. })
    ));
}

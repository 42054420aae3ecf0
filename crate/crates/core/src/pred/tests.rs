use std::sync::Arc;

use super::*;
use crate::expr::{CmpOp, StatePred};
use crate::state::{Domain, Stream, StreamSpace, Value, VarUniverse};
use crate::time::{Carrier, Interval};

const BUDGET: u128 = 1_000_000;

fn uv() -> Arc<VarUniverse> {
    Arc::new(
        VarUniverse::builder()
            .var("u", Domain::ints(0..=1))
            .var("v", Domain::ints(0..=1))
            .build()
            .unwrap(),
    )
}

fn example_stream() -> Stream {
    Stream::from_columns(
        uv(),
        &[
            ("u", vec![Value::Int(0), Value::Int(1), Value::Int(1)]),
            ("v", vec![Value::Int(0), Value::Int(0), Value::Int(1)]),
        ],
    )
    .unwrap()
}

fn x_universe() -> Arc<VarUniverse> {
    Arc::new(VarUniverse::builder().boolean("x").build().unwrap())
}

fn x() -> StatePred {
    StatePred::var("x")
}

fn bools(u: &Arc<VarUniverse>, cols: &[(&str, &[bool])]) -> Stream {
    let cols: Vec<(&str, Vec<Value>)> = cols
        .iter()
        .map(|(n, vs)| (*n, vs.iter().map(|&b| Value::Bool(b)).collect()))
        .collect();
    Stream::from_columns(u.clone(), &cols).unwrap()
}

fn r(lo: usize, hi: usize) -> Interval {
    Interval::Range { lo, hi }
}

fn closed(h: usize) -> Carrier {
    Carrier::closed(h).unwrap()
}

fn u_lt_v() -> StatePred {
    StatePred::vars_cmp("u", CmpOp::Lt, "v")
}

#[test]
fn box_and_diamond_on_empty() {
    let s = example_stream();
    let c = closed(3);
    assert!(eval(&IntvPred::Always(u_lt_v()), Interval::Empty, &s, &c).unwrap());
    assert!(!eval(&IntvPred::Sometime(u_lt_v()), Interval::Empty, &s, &c).unwrap());
    assert!(eval(&IntvPred::Definitely(u_lt_v()), Interval::Empty, &s, &c).unwrap());
    assert!(!eval(&IntvPred::Possibly(u_lt_v()), Interval::Empty, &s, &c).unwrap());
}

#[test]
fn apparent_evaluation_of_example_stream() {
    let s = example_stream();
    let c = closed(3);
    let full = r(0, 2);
    assert!(eval(&IntvPred::Possibly(u_lt_v()), full, &s, &c).unwrap());
    assert!(!eval(&IntvPred::Sometime(u_lt_v()), full, &s, &c).unwrap());
    let vv = StatePred::vars_cmp("v", CmpOp::Eq, "v");
    assert!(eval(&IntvPred::Possibly(vv.clone()), full, &s, &c).unwrap());
    assert!(eval(&IntvPred::Definitely(vv), full, &s, &c).unwrap());
}

#[test]
fn omega_partitions_into_singletons() {
    let u = x_universe();
    let s = bools(&u, &[("x", &[true, false, true])]);
    let g = IntvPred::omega(IntvPred::ne(IntvPred::Always(StatePred::Const(true))));
    assert!(eval(&g, r(0, 2), &s, &closed(3)).unwrap());
    let only_x = IntvPred::omega(IntvPred::ne_always(x()));
    assert!(!eval(&only_x, r(0, 2), &s, &closed(3)).unwrap());
    assert!(eval(&only_x, r(2, 2), &s, &closed(3)).unwrap());
}

#[test]
fn omega_of_predicate_true_on_empty_is_true() {
    let u = x_universe();
    let s = bools(&u, &[("x", &[false, false])]);
    let g = IntvPred::omega(IntvPred::Always(x()));
    for iv in closed(2).all_intervals() {
        assert!(eval(&g, iv, &s, &closed(2)).unwrap());
    }
}

#[test]
fn chop_infinite_clause() {
    let u = x_universe();
    let s = bools(&u, &[("x", &[false, true, true])]);
    let open = Carrier::open(3).unwrap();
    let g = IntvPred::chop(IntvPred::ne_always(x()), IntvPred::Lit(false));
    assert!(eval(&g, r(1, 2), &s, &open).unwrap());
    assert!(!eval(&g, r(1, 2), &s, &closed(3)).unwrap());
    assert!(!eval(&g, r(1, 1), &s, &open).unwrap());
}

#[test]
fn classification_predicates() {
    let u = x_universe();
    let s = bools(&u, &[("x", &[false, true, true])]);
    let open = Carrier::open(3).unwrap();
    assert!(eval(&IntvPred::Infinite, r(0, 2), &s, &open).unwrap());
    assert!(!eval(&IntvPred::Finite, r(0, 2), &s, &open).unwrap());
    assert!(eval(&IntvPred::Finite, r(0, 1), &s, &open).unwrap());
    assert!(eval(&IntvPred::Empty, Interval::Empty, &s, &open).unwrap());
    assert!(!eval(&IntvPred::Finite, Interval::Empty, &s, &open).unwrap());
}

#[test]
fn prev_and_stable() {
    let u = x_universe();
    let s = bools(&u, &[("x", &[true, true, false])]);
    let c = closed(3);
    let stable = IntvPred::Stable("x".into());
    assert!(eval(&stable, r(1, 1), &s, &c).unwrap());
    assert!(!eval(&stable, r(1, 2), &s, &c).unwrap());
    assert!(!eval(&stable, r(0, 1), &s, &c).unwrap());
    assert!(eval(&stable, Interval::Empty, &s, &c).unwrap());
    assert!(eval(&IntvPred::StableSet(Default::default()), r(0, 2), &s, &c).unwrap());

    assert!(eval(&IntvPred::PrevHolds(x()), r(1, 2), &s, &c).unwrap());
    assert!(!eval(&IntvPred::PrevHolds(x()), r(0, 2), &s, &c).unwrap());
    assert!(!eval(&IntvPred::PrevHolds(StatePred::not(x())), r(1, 2), &s, &c).unwrap());
    // ⊖ over the empty interval looks at every interval of the carrier.
    let late = IntvPred::ne(IntvPred::Always(StatePred::not(x())));
    assert!(eval(&IntvPred::prev(late.clone()), Interval::Empty, &s, &c).unwrap());
    assert!(!eval(&IntvPred::prev(late), r(2, 2), &s, &c).unwrap());
    assert!(eval(&IntvPred::prev(IntvPred::Empty), r(0, 0), &s, &c).unwrap());
}

#[test]
fn converse_of_apparent_properties_fail() {
    let u = uv();
    let c = closed(3);
    let pass = check_valid_implication(
        &IntvPred::Definitely(u_lt_v()),
        &IntvPred::Always(u_lt_v()),
        &u,
        &c,
        BUDGET,
    )
    .unwrap();
    assert!(pass.is_pass());
    let fail = check_valid_implication(
        &IntvPred::Always(StatePred::not(u_lt_v())),
        &IntvPred::Definitely(StatePred::not(u_lt_v())),
        &u,
        &c,
        BUDGET,
    )
    .unwrap();
    let w = fail.witness().expect("counterexample");
    let s = w.get_stream("s").unwrap();
    let iv = w.get_interval("Δ").unwrap();
    assert!(eval(&IntvPred::Always(StatePred::not(u_lt_v())), iv, s, &c).unwrap());
    assert!(!eval(&IntvPred::Definitely(StatePred::not(u_lt_v())), iv, s, &c).unwrap());
    assert_eq!(iv.len(), 2);
}

#[test]
fn reflexive_implication_passes() {
    let g = IntvPred::chop(IntvPred::Possibly(u_lt_v()), IntvPred::Sometime(u_lt_v()));
    assert!(check_valid_implication(&g, &g, &uv(), &closed(2), BUDGET)
        .unwrap()
        .is_pass());
}

#[test]
fn splits_and_joins() {
    let u = x_universe();
    let c = closed(3);
    assert!(check_splits(&IntvPred::Always(x()), &u, &c, BUDGET)
        .unwrap()
        .is_pass());
    assert!(check_splits(&IntvPred::Lit(true), &u, &c, BUDGET)
        .unwrap()
        .is_pass());
    assert!(check_joins(&IntvPred::Lit(true), &u, &c, BUDGET)
        .unwrap()
        .is_pass());
    let some = check_splits(&IntvPred::Sometime(x()), &u, &c, BUDGET).unwrap();
    assert_eq!(some.witness().unwrap().get_interval("Δ").unwrap().len(), 1);
    // □x holds on ∅, so (□x)^ω is true everywhere and joining needs x valid.
    assert!(!check_joins(&IntvPred::Always(x()), &u, &c, BUDGET)
        .unwrap()
        .is_pass());
    assert!(
        check_joins(&IntvPred::Always(StatePred::Const(true)), &u, &c, BUDGET)
            .unwrap()
            .is_pass()
    );
    assert!(check_joins(&IntvPred::ne_always(x()), &u, &c, BUDGET)
        .unwrap()
        .is_pass());
}

#[test]
fn budget_refusal() {
    let err = check_valid_implication(
        &IntvPred::Lit(true),
        &IntvPred::Lit(true),
        &uv(),
        &closed(3),
        10,
    )
    .unwrap_err();
    assert!(matches!(err, crate::Error::BudgetExceeded { .. }));
}

#[test]
fn guards_read_apparent_states() {
    assert_eq!(normalize_guard(x()), IntvPred::Possibly(x()));
}

#[test]
fn hash_consing_shares_subterms() {
    let mut ev = PredEvaluator::new(x_universe(), closed(2));
    let a = ev
        .add(&IntvPred::chop(
            IntvPred::Always(x()),
            IntvPred::Always(x()),
        ))
        .unwrap();
    let n = ev.node_count();
    assert_eq!(n, 2);
    let b = ev
        .add(&IntvPred::chop(
            IntvPred::Always(x()),
            IntvPred::Always(x()),
        ))
        .unwrap();
    assert_eq!(a, b);
    assert_eq!(ev.node_count(), n);
}

#[test]
fn memo_and_naive_agree_on_fixed_terms() {
    let u = uv();
    let c = Carrier::open(3).unwrap();
    let terms = [
        IntvPred::omega(IntvPred::ne_always(u_lt_v())),
        IntvPred::chop(
            IntvPred::Possibly(u_lt_v()),
            IntvPred::omega(IntvPred::Sometime(u_lt_v())),
        ),
        IntvPred::prev(IntvPred::chop(IntvPred::Finite, IntvPred::Always(u_lt_v()))),
        IntvPred::StableSet(["u".to_string(), "v".to_string()].into()),
        IntvPred::not(IntvPred::omega(IntvPred::or(
            IntvPred::Empty,
            IntvPred::Stable("u".into()),
        ))),
        IntvPred::and(
            IntvPred::PrevHolds(u_lt_v()),
            IntvPred::Definitely(StatePred::var_cmp("u", CmpOp::Eq, Value::Int(1))),
        ),
    ];
    let space = StreamSpace::new(u.clone(), c).unwrap();
    let mut ev = PredEvaluator::new(u.clone(), c);
    let ids: Vec<_> = terms.iter().map(|t| ev.add(t).unwrap()).collect();
    let mut session = ev.session();
    for s in space.iter() {
        session.reset();
        for iv in c.all_intervals() {
            for (t, &id) in terms.iter().zip(&ids) {
                assert_eq!(
                    session.eval_at(id, iv, &s),
                    eval_naive(t, iv, &s, &c).unwrap(),
                    "{t} on {iv} over {}",
                    s.display()
                );
            }
        }
    }
    assert!(session.stats().omega_max_rounds <= c.interval_count());
}

#[test]
fn locality() {
    assert!(IntvPred::chop(
        IntvPred::Always(x()),
        IntvPred::omega(IntvPred::Possibly(x()))
    )
    .is_local());
    assert!(!IntvPred::and(IntvPred::Lit(true), IntvPred::Stable("x".into())).is_local());
    assert!(!IntvPred::prev(IntvPred::Lit(true)).is_local());
}

use std::collections::BTreeMap;
use std::sync::Arc;

use super::*;
use crate::expr::{BoolExpr, CmpOp, StatePred, StateRel};
use crate::rel::IntvRel;
use crate::state::{Domain, Value};
use crate::time::Interval;

const BUDGET: u128 = 10_000_000;

fn closed(h: usize) -> Carrier {
    Carrier::closed(h).unwrap()
}

fn obs_m() -> Arc<VarUniverse> {
    Arc::new(
        VarUniverse::builder()
            .var("M", Domain::ints(0..=2))
            .build()
            .unwrap(),
    )
}

fn rep_m() -> Arc<VarUniverse> {
    Arc::new(
        VarUniverse::builder()
            .var("m", Domain::ints(0..=2))
            .build()
            .unwrap(),
    )
}

fn m_is(k: i64) -> StatePred {
    StatePred::var_cmp("m", CmpOp::Eq, Value::Int(k))
}

fn final_m() -> StateRel {
    StateRel::cmp(
        crate::expr::Operand::Var(crate::expr::RelVar::left("m")),
        CmpOp::Eq,
        crate::expr::Operand::Var(crate::expr::RelVar::right("M")),
    )
}

fn toy(name: &str, op: IntvPred, init: IntvPred) -> SystemSpec {
    SystemSpec::new(
        name,
        obs_m(),
        rep_m(),
        Init::Uniform(init),
        BTreeMap::from([("p".to_string(), op)]),
        None,
        final_m(),
    )
    .unwrap()
}

fn id_m() -> StateRel {
    StateRel::identity_on(["m".to_string()])
}

fn xu() -> Arc<VarUniverse> {
    Arc::new(VarUniverse::builder().boolean("x").build().unwrap())
}

fn x_is(b: bool) -> StatePred {
    let x = StatePred::var("x");
    if b {
        x
    } else {
        BoolExpr::not(x)
    }
}

#[test]
fn obs_set_of_an_assignment() {
    let s = toy(
        "S",
        IntvPred::ne_always(m_is(1)),
        IntvPred::ne_always(m_is(0)),
    );
    let set = obs_set(&s, &closed(3), BUDGET).unwrap();
    let one = obs_m().state_from_values(&[("M", Value::Int(1))]).unwrap();
    assert_eq!(set.len(), 3);
    assert!(set.iter().all(|p| p.post == one));
}

#[test]
fn false_process_observes_nothing() {
    let s = toy("S", IntvPred::Lit(false), IntvPred::ne_always(m_is(0)));
    assert!(obs_set(&s, &closed(3), BUDGET).unwrap().is_empty());
}

#[test]
fn refinement_is_reflexive() {
    let s = toy(
        "S",
        IntvPred::or(IntvPred::ne_always(m_is(1)), IntvPred::ne_always(m_is(2))),
        IntvPred::ne_always(m_is(0)),
    );
    assert!(check_data_refinement(&s, &s, &closed(3), BUDGET)
        .unwrap()
        .is_pass());
}

#[test]
fn data_refinement_counterexample_replays() {
    let abs = toy(
        "A",
        IntvPred::ne_always(m_is(1)),
        IntvPred::ne_always(m_is(0)),
    );
    let conc = toy(
        "C",
        IntvPred::or(IntvPred::ne_always(m_is(1)), IntvPred::ne_always(m_is(2))),
        IntvPred::ne_always(m_is(0)),
    );
    let c = closed(2);
    assert!(check_data_refinement(&conc, &abs, &c, BUDGET)
        .unwrap()
        .is_pass());
    let v = check_data_refinement(&abs, &conc, &c, BUDGET).unwrap();
    let w = v.witness().expect("fails");
    assert_eq!(w.clause, "data-refinement");
    assert_eq!(w.get_state("ρ'").unwrap()["M"], Value::Int(2));
    assert_eq!(w.get_interval("Δ").unwrap().len(), 1);
    assert!(replay_data_refinement(&abs, &conc, &c, BUDGET, w).unwrap());
}

#[test]
fn identity_simulation_is_reflexive() {
    let u = xu();
    let id = IntvRel::Always(StateRel::identity_on(["x".to_string()]));
    for g in [
        IntvPred::ne_always(x_is(true)),
        IntvPred::Sometime(x_is(false)),
        IntvPred::chop(IntvPred::ne_always(x_is(true)), IntvPred::Possibly(x_is(false))),
    ] {
        let v = check_simulates(&id, &g, &g, &u, &u, &closed(3), BUDGET).unwrap();
        assert!(v.is_pass(), "{g}: {v:?}");
    }
}

#[test]
fn simulation_fails_when_abstract_cannot_follow() {
    let u = xu();
    let id = IntvRel::Always(StateRel::identity_on(["x".to_string()]));
    let h = IntvPred::ne_always(x_is(false));
    let g = IntvPred::ne(IntvPred::Sometime(x_is(true)));
    let c = closed(3);
    let v = check_simulates(&id, &g, &h, &u, &u, &c, BUDGET).unwrap();
    let w = v.witness().expect("fails");
    assert_eq!(w.clause, "simulation");
    assert_eq!(w.get_interval("Δ").unwrap().len(), 1);
    assert!(replay_simulation(&id, Some(&g), &h, &u, &c, BUDGET, w).unwrap());
}

#[test]
fn simulation_with_a_nonlocal_relation() {
    let u = xu();
    let r = IntvRel::and(
        IntvRel::Always(StateRel::identity_on(["x".to_string()])),
        IntvRel::Proj1(IntvPred::PrevHolds(x_is(true))),
    );
    let g = IntvPred::ne_always(x_is(true));
    let c = closed(3);
    let v = check_simulates(&r, &g, &g, &u, &u, &c, BUDGET).unwrap();
    if let Some(w) = v.witness() {
        assert!(replay_simulation(&r, Some(&g), &g, &u, &c, BUDGET, w).unwrap());
    }
    let h = IntvPred::ne_always(x_is(false));
    let v = check_vdash(&h, &r, &u, &u, &c, BUDGET).unwrap();
    let w = v.witness().expect("x cannot be true and false at once");
    assert!(replay_simulation(&r, None, &h, &u, &c, BUDGET, w).unwrap());
}

#[test]
fn vdash_examples() {
    let u = xu();
    let c = closed(3);
    let h = IntvPred::Sometime(x_is(true));
    assert!(check_vdash(&h, &IntvRel::Lit(true), &u, &u, &c, BUDGET)
        .unwrap()
        .is_pass());
    // NE fails on the empty interval, so h must exclude it
    let r = IntvRel::ne_always(BoolExpr::not(StateRel::identity_on(["x".to_string()])));
    let rr = IntvRel::ne_always(StateRel::right_var("x"));
    let nonempty = IntvPred::ne(IntvPred::Lit(true));
    assert!(check_vdash(&nonempty, &r, &u, &u, &c, BUDGET)
        .unwrap()
        .is_pass());
    let w = check_vdash(&IntvPred::Lit(true), &r, &u, &u, &c, BUDGET).unwrap();
    assert_eq!(w.witness().unwrap().get_interval("Δ"), Some(Interval::Empty));
    // unsatisfiable wherever z.x is false
    let v = check_vdash(&nonempty, &rr, &u, &u, &c, BUDGET).unwrap();
    let w = v.witness().unwrap();
    assert_eq!(w.clause, "vdash");
    assert!(replay_simulation(&rr, None, &nonempty, &u, &c, BUDGET, w).unwrap());
}

#[test]
fn ref2_examples() {
    let u = xu();
    let c = closed(3);
    let id = IntvRel::Always(StateRel::identity_on(["x".to_string()]));
    let g = IntvPred::chop(IntvPred::ne_always(x_is(true)), IntvPred::Sometime(x_is(false)));
    assert!(check_ref2(&id, &g, &g, &u, &u, &c, BUDGET)
        .unwrap()
        .is_pass());
    let h = IntvPred::Sometime(x_is(true));
    let v = check_ref2(&IntvRel::Lit(true), &h, &h, &u, &u, &c, BUDGET).unwrap();
    let w = v.witness().expect("unrelated streams");
    assert!(replay_ref2(&IntvRel::Lit(true), &h, &h, &c, BUDGET, w).unwrap());
}

#[test]
fn forward_simulation_of_identical_toys() {
    let s = toy(
        "S",
        IntvPred::or(IntvPred::ne_always(m_is(1)), IntvPred::ne_always(m_is(2))),
        IntvPred::ne_always(m_is(0)),
    );
    let c = closed(2);
    let r = IntvRel::ne_always(id_m());
    let report = check_forward_simulation(&r, &s, &s, &c, BUDGET).unwrap();
    assert!(report.is_pass(), "{report:?}");

    let report = check_forward_simulation(&IntvRel::Lit(true), &s, &s, &c, BUDGET).unwrap();
    assert!(report.initialisation.is_pass());
    let w = report.finalisation.witness().expect("unrelated finalisations");
    assert_eq!(report.verdict().witness().unwrap().clause, "finalisation");
    assert!(replay_finalisation(&IntvRel::Lit(true), &s, &s, &c, BUDGET, w).unwrap());
}

#[test]
fn initialisation_failure_replays() {
    let abs = toy(
        "A",
        IntvPred::ne_always(m_is(1)),
        IntvPred::ne_always(m_is(0)),
    );
    let conc = toy(
        "C",
        IntvPred::ne_always(m_is(1)),
        IntvPred::ne_always(m_is(2)),
    );
    let c = closed(2);
    let r = IntvRel::ne_always(id_m());
    let v = check_initialisation(&r, &abs, &conc, &c, BUDGET).unwrap();
    let w = v.witness().expect("initial values differ");
    assert!(replay_initialisation(&r, &abs, &conc, &c, BUDGET, w).unwrap());
}

#[test]
fn horizon_minimization_keeps_smallest_failure() {
    let u = xu();
    let h = IntvPred::ne_always(x_is(false));
    let g = IntvPred::ne(IntvPred::Sometime(x_is(true)));
    let id = IntvRel::Always(StateRel::identity_on(["x".to_string()]));
    let v = minimize_horizon(&closed(3), |c| {
        check_simulates(&id, &g, &h, &u, &u, c, BUDGET)
    })
    .unwrap();
    assert_eq!(v.witness().unwrap().horizon, 1);
}

#[test]
fn overlapping_universes_are_rejected() {
    let r = SystemSpec::new(
        "bad",
        rep_m(),
        rep_m(),
        Init::Uniform(IntvPred::Lit(true)),
        BTreeMap::from([("p".to_string(), IntvPred::Lit(true))]),
        None,
        final_m(),
    );
    assert!(r.is_err());
}

#[test]
fn pointwise_finalisation_agrees_with_general_search() {
    let abs = toy(
        "A",
        IntvPred::ne_always(m_is(1)),
        IntvPred::ne_always(m_is(0)),
    );
    let c = closed(2);
    let shift = StateRel::cmp(
        crate::expr::Operand::Var(crate::expr::RelVar::left("m")),
        CmpOp::Lt,
        crate::expr::Operand::Var(crate::expr::RelVar::right("m")),
    );
    for r in [
        IntvRel::ne_always(id_m()),
        IntvRel::Lit(true),
        IntvRel::Always(shift.clone()),
        IntvRel::and(IntvRel::ne_always(shift), IntvRel::Always(id_m())),
    ] {
        let fast = check_finalisation(&r, &abs, &abs, &c, BUDGET).unwrap();
        let general = IntvRel::or(r.clone(), IntvRel::Lit(false));
        let slow = check_finalisation(&general, &abs, &abs, &c, BUDGET).unwrap();
        assert_eq!(fast, slow, "{r}");
    }
}

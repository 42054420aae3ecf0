mod common;

use common::*;
use ivdr_core::refine::{
    check_data_refinement, check_finalisation, check_forward_simulation, check_initialisation,
    check_ref2, check_simulates, check_vdash, replay_simulation,
};
use ivdr_core::{Carrier, IntvPred, IntvRel};

fn carrier() -> Carrier {
    Carrier::closed(3).unwrap()
}

fn conc_behaviour() -> IntvPred {
    IntvPred::and(conc_ip(), rely())
}

#[test]
fn main_simulation_obligation() {
    let v = check_simulates(
        &ne_uv(),
        &abs_ip(),
        &conc_behaviour(),
        &abs_vars(),
        &conc_vars(),
        &carrier(),
        BUDGET,
    )
    .unwrap();
    assert!(v.is_pass(), "{v:?}");
}

#[test]
fn initialisation_and_finalisation() {
    let (a, c) = (abstract_system(), concrete_system(false));
    assert!(check_initialisation(&ne_uv(), &a, &c, &carrier(), BUDGET)
        .unwrap()
        .is_pass());
    assert!(check_finalisation(&ne_uv(), &a, &c, &carrier(), BUDGET)
        .unwrap()
        .is_pass());
}

#[test]
fn decomposed_obligations() {
    let c = carrier();
    assert!(check_vdash(&conc_behaviour(), &ne_uv(), &abs_vars(), &conc_vars(), &c, BUDGET)
        .unwrap()
        .is_pass());
    let v = check_ref2(
        &ne_uv(),
        &conc_behaviour(),
        &abs_ip(),
        &abs_vars(),
        &conc_vars(),
        &c,
        BUDGET,
    )
    .unwrap();
    assert!(v.is_pass(), "{v:?}");
    for (h, g) in [
        (cq(IntvPred::Sometime), aq(IntvPred::Sometime)),
        (cp(IntvPred::Sometime, false), ap(IntvPred::Sometime)),
    ] {
        let h = IntvPred::and(h, rely());
        let v = check_ref2(&ne_uv(), &h, &g, &abs_vars(), &conc_vars(), &c, BUDGET).unwrap();
        assert!(v.is_pass(), "{g}: {v:?}");
    }
}

#[test]
fn forward_simulation_of_the_systems() {
    let report = check_forward_simulation(
        &ne_uv(),
        &abstract_system(),
        &concrete_system(false),
        &carrier(),
        BUDGET,
    )
    .unwrap();
    assert!(report.is_pass(), "{report:?}");
}

#[test]
fn mutated_system_fails_forward_simulation() {
    let (a, m) = (abstract_system(), concrete_system(true));
    let report = check_forward_simulation(&ne_uv(), &a, &m, &carrier(), BUDGET).unwrap();
    let w = report.simulation.witness().expect("swapped assignments break simulation");
    assert!(replay_simulation(
        &ne_uv(),
        Some(&a.behaviour()),
        &m.behaviour(),
        &abs_vars(),
        &carrier(),
        BUDGET,
        w
    )
    .unwrap());
}

#[test]
fn concrete_refines_abstract() {
    let v = check_data_refinement(
        &abstract_system(),
        &concrete_system(false),
        &carrier(),
        BUDGET,
    )
    .unwrap();
    assert!(v.is_pass(), "{v:?}");
}

#[test]
fn unrelated_streams_break_finalisation() {
    let report = check_forward_simulation(
        &IntvRel::Lit(true),
        &abstract_system(),
        &concrete_system(false),
        &carrier(),
        BUDGET,
    )
    .unwrap();
    assert_eq!(report.verdict().witness().unwrap().clause, "finalisation");
}

#[test]
fn abstract_system_observes_every_pair() {
    let set = ivdr_core::refine::obs_set(&abstract_system(), &carrier(), BUDGET).unwrap();
    assert_eq!(set.len(), 9);
}

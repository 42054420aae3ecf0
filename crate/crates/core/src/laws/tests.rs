use std::sync::Arc;

use super::*;
use crate::pred::IntvPred;
use crate::state::VarUniverse;

fn u() -> Arc<VarUniverse> {
    Arc::new(
        VarUniverse::builder()
            .boolean("a")
            .var("b", crate::state::Domain::ints(0..=2))
            .build()
            .unwrap(),
    )
}

#[test]
fn generation_is_deterministic() {
    let a: Vec<IntvPred> = generate_terms(u(), 3, 7).take(50).collect();
    let b: Vec<IntvPred> = generate_terms(u(), 3, 7).take(50).collect();
    let c: Vec<IntvPred> = generate_terms(u(), 3, 8).take(50).collect();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn depth_zero_yields_atoms() {
    assert!(generate_terms(u(), 0, 1).take(200).all(|g| g.depth() == 1));
    assert!(generate_relations(u(), u(), 0, 1)
        .take(200)
        .all(|r| r.depth() <= 3));
}

#[test]
fn generator_covers_every_constructor() {
    let terms: Vec<IntvPred> = generate_terms(u(), 3, 11).take(1000).collect();
    let text: String = terms.iter().map(|g| format!("{g}\n")).collect();
    for needle in [";", "ω", "⊖", "NE"] {
        assert!(text.contains(needle), "no {needle} in 1000 samples");
    }
    assert!(terms.iter().any(|g| !g.is_local()));
    let mut local = Gen::new(11, 0).local();
    assert!((0..1000).all(|_| local.pred(&u(), 3).is_local()));
}

#[test]
fn unknown_law_is_an_error() {
    assert!(matches!(
        run_law("no-such-law", 1, 0),
        Err(Error::UnknownLaw(_))
    ));
}

#[test]
fn zero_instances_is_inconclusive() {
    let r = run_law("refl", 0, 0).unwrap();
    assert_eq!(r.status, Status::Inconclusive);
    assert_eq!(r.tried, 0);
}

#[test]
fn catalog_ids_are_unique() {
    let ids: std::collections::BTreeSet<&str> = catalog().iter().map(|e| e.id).collect();
    assert_eq!(ids.len(), catalog().len());
}

#[test]
fn runs_are_reproducible() {
    let a = run_law("chop-units", 40, 3).unwrap();
    let b = run_law("chop-units", 40, 3).unwrap();
    assert_eq!((a.tried, a.exercised, a.failures), (b.tried, b.exercised, b.failures));
    assert_eq!(a.status, Status::Pass);
}

#[test]
fn negative_control_finds_a_witness() {
    let r = run_law("possibly-not-sometime", 1000, 0).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.failures, 1);
    assert!(r.witnesses[0].witness.is_some());
}

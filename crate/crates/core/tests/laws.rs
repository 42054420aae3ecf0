use ivdr_core::laws::{catalog, run_all, run_law, Polarity, Status};

#[test]
fn zero_budget_leaves_every_law_inconclusive() {
    let report = run_all(0, 0).unwrap();
    assert!(report
        .reports
        .iter()
        .all(|r| r.status == Status::Inconclusive));
}

#[test]
fn negative_controls_find_witnesses() {
    for law in catalog()
        .into_iter()
        .filter(|l| l.polarity == Polarity::Counterexample)
    {
        let r = run_law(law.id, 1000, 9).unwrap();
        assert_eq!(r.status, Status::Pass, "{}", law.id);
        assert_eq!(r.witnesses.len(), 1);
    }
}

#[test]
fn verdicts_are_stable_across_seeds() {
    for id in ["trans", "seq-comp", "disjointness-or", "stability", "soundness"] {
        for seed in 0..5 {
            let r = run_law(id, 150, seed).unwrap();
            assert_eq!(r.status, Status::Pass, "{id} seed {seed}");
            assert!(r.exercised > 0);
        }
    }
}

#[test]
fn iteration_fails_only_on_the_empty_interval() {
    let r = run_law("iteration", 300, 4).unwrap();
    assert_eq!(r.status, Status::Fail);
    for w in &r.witnesses {
        let w = w.witness.as_ref().unwrap();
        assert_eq!(w.get_interval("Δ"), Some(ivdr_core::Interval::Empty));
    }
    assert_eq!(run_law("iteration-from-empty", 300, 4).unwrap().status, Status::Pass);
}

#[test]
fn disjunction_needs_both_premises() {
    let r = run_law("disjunction", 1000, 4).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert_eq!(run_law("disjunction-both", 300, 4).unwrap().status, Status::Pass);
}

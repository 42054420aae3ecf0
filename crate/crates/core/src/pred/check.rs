use std::sync::Arc;

use crate::error::Result;
use crate::expr::StatePred;
use crate::pred::{IntvPred, PredEvaluator};
use crate::search::par_min;
use crate::state::{StreamSpace, VarUniverse};
use crate::time::Carrier;
use crate::verdict::{Verdict, Witness};

/// Validity of `g1 ⟹ g2` over every interval and every stream. The reported
/// counterexample has the shortest interval, then the first stream in
/// enumeration order.
pub fn check_valid_implication(
    g1: &IntvPred,
    g2: &IntvPred,
    universe: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
) -> Result<Verdict> {
    search_implication(g1, g2, universe, carrier, budget, "implication")
}

pub fn check_equivalent(
    g1: &IntvPred,
    g2: &IntvPred,
    universe: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
) -> Result<Verdict> {
    let v = search_implication(
        g1,
        g2,
        universe,
        carrier,
        budget,
        "equivalence (left to right)",
    )?;
    if !v.is_pass() {
        return Ok(v);
    }
    search_implication(
        g2,
        g1,
        universe,
        carrier,
        budget,
        "equivalence (right to left)",
    )
}

/// `g ⟹ (g ; g)`
pub fn check_splits(
    g: &IntvPred,
    universe: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
) -> Result<Verdict> {
    let gg = IntvPred::chop(g.clone(), g.clone());
    search_implication(g, &gg, universe, carrier, budget, "splits")
}

/// `(g ; g^ω) ⟹ g`
pub fn check_joins(
    g: &IntvPred,
    universe: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
) -> Result<Verdict> {
    let ggw = IntvPred::chop(g.clone(), IntvPred::omega(g.clone()));
    search_implication(&ggw, g, universe, carrier, budget, "joins")
}

/// Guard evaluation reads the guard in some apparent state.
pub fn normalize_guard(c: StatePred) -> IntvPred {
    IntvPred::Possibly(c)
}

fn search_implication(
    g1: &IntvPred,
    g2: &IntvPred,
    universe: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
    clause: &str,
) -> Result<Verdict> {
    let space = StreamSpace::new(universe.clone(), *carrier)?;
    let n = space.check_budget(carrier.horizon(), budget, "streams")?;
    let mut ev = PredEvaluator::new(universe.clone(), *carrier);
    let a = ev.add(g1)?;
    let b = ev.add(g2)?;
    let table = ev.table().clone();
    let found = par_min(
        n,
        || (ev.session(), space.base()),
        |(session, s), i| {
            *s = space.stream_at(i);
            session.reset();
            (0..table.len())
                .filter(|&ix| session.eval(a, ix, s) && !session.eval(b, ix, s))
                .map(|ix| (table.intervals[ix].len(), i, ix))
                .min()
                .map(|k| (k, s.clone()))
        },
    );
    Ok(Verdict::from_witness(found.map(|((_, _, ix), s)| {
        Witness::new(clause, carrier.horizon())
            .stream("s", &s)
            .interval("Δ", table.intervals[ix])
    })))
}

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rel::{IntvRel, RelEvaluator, RelSession};
use crate::search::par_min;
use crate::state::{Stream, StreamSpace, VarUniverse};
use crate::time::{Carrier, IntervalTable};
use crate::verdict::{Verdict, Witness};

/// Witness order: interval length, then stream indices, then interval index.
type Rank = (usize, u128, u128, usize);

/// Validity of `r1 ⟹ r2` over every interval and every pair of streams.
pub fn check_rel_implication(
    r1: &IntvRel,
    r2: &IntvRel,
    left: &Arc<VarUniverse>,
    right: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
) -> Result<Verdict> {
    let mut ev = RelEvaluator::new(left.clone(), right.clone(), *carrier, budget);
    let a = ev.add(r1)?;
    let b = ev.add(r2)?;
    pairwise(
        &ev,
        left,
        right,
        carrier,
        budget,
        "implication",
        |session, table, y, z| {
            (0..table.len())
                .filter(|&ix| session.eval(a, ix, y, z) && !session.eval(b, ix, y, z))
                .collect()
        },
    )
}

/// `(R ; R^ω) ⟹ R`, where `R^ω` is the greatest fixed point of
/// `Z = empty ∨ (infinite ∧ R) ∨ (R ; Z)` for each fixed pair of streams.
pub fn rel_joins(
    r: &IntvRel,
    left: &Arc<VarUniverse>,
    right: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
) -> Result<Verdict> {
    let mut ev = RelEvaluator::new(left.clone(), right.clone(), *carrier, budget);
    let id = ev.add(r)?;
    pairwise(
        &ev,
        left,
        right,
        carrier,
        budget,
        "joins",
        |session, table, y, z| {
            let n = table.len();
            let rv: Vec<bool> = (0..n).map(|ix| session.eval(id, ix, y, z)).collect();
            let (w, _) = table.omega(&rv);
            (0..n)
                .filter(|&ix| {
                    let chop = table.splits[ix].iter().any(|&(a, b)| rv[a] && w[b])
                        || (table.infinite[ix] && rv[ix]);
                    chop && !rv[ix]
                })
                .collect()
        },
    )
}

/// Enumerates all `(y, z)` pairs; `failing` lists the interval indices that
/// violate the property for one pair.
fn pairwise(
    ev: &RelEvaluator,
    left: &Arc<VarUniverse>,
    right: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
    clause: &str,
    failing: impl Fn(&mut RelSession<'_>, &IntervalTable, &Stream, &Stream) -> Vec<usize> + Sync + Send,
) -> Result<Verdict> {
    let ys = StreamSpace::new(left.clone(), *carrier)?;
    let zs = StreamSpace::new(right.clone(), *carrier)?;
    let ny = ys.count().unwrap_or(u128::MAX);
    let nz = zs.count().unwrap_or(u128::MAX);
    let total = ny.saturating_mul(nz);
    if total > budget {
        return Err(Error::BudgetExceeded {
            what: "stream pairs".into(),
            size: total.to_string(),
            budget,
        });
    }
    let table = ev.table().clone();
    let found = par_min(
        nz,
        || ev.session(),
        |session, zi| {
            let z = zs.stream_at(zi);
            let mut best: Option<(Rank, (Stream, Stream))> = None;
            for yi in 0..ny {
                let y = ys.stream_at(yi);
                session.reset();
                for ix in failing(session, &table, &y, &z) {
                    let key = (table.intervals[ix].len(), zi, yi, ix);
                    if best.as_ref().is_none_or(|(k, _)| key < *k) {
                        best = Some((key, (y.clone(), z.clone())));
                    }
                }
            }
            best
        },
    );
    Ok(Verdict::from_witness(found.map(
        |((_, _, _, ix), (y, z))| {
            Witness::new(clause, carrier.horizon())
                .stream("y", &y)
                .stream("z", &z)
                .interval("Δ", table.intervals[ix])
        },
    )))
}

//! Re-derivation of reported failures from their witnesses, using the
//! one-shot evaluators rather than the searches that produced them.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::Side;
use crate::pred::{eval, IntvPred};
use crate::refine::{obs_set, ObsPair, SystemSpec};
use crate::rel::{eval_rel, IntvRel};
use crate::state::{State, Stream, StreamSpace, Value, VarUniverse};
use crate::time::{Carrier, Interval};
use crate::verdict::Witness;

fn stream<'w>(w: &'w Witness, role: &str) -> Result<&'w Stream> {
    w.get_stream(role)
        .ok_or_else(|| Error::InvalidSystem(format!("witness has no stream `{role}`")))
}

fn interval(w: &Witness, role: &str) -> Result<Interval> {
    w.get_interval(role)
        .ok_or_else(|| Error::InvalidSystem(format!("witness has no interval `{role}`")))
}

fn state(w: &Witness, role: &str, universe: &VarUniverse) -> Result<State> {
    let map: &BTreeMap<String, Value> = w
        .get_state(role)
        .ok_or_else(|| Error::InvalidSystem(format!("witness has no state `{role}`")))?;
    let pairs: Vec<(&str, Value)> = map.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    universe.state_from_values(&pairs)
}

fn time(w: &Witness, role: &str) -> Result<usize> {
    match interval(w, role)?.bounds() {
        Some((t, _)) => Ok(t),
        None => Err(Error::InvalidSystem(format!("`{role}` is not a time point"))),
    }
}

fn final_holds(spec: &SystemSpec, rep: &[u8], obs: &[u8]) -> Result<bool> {
    let rel = spec.finalisation.resolve_in(&spec.rep, &spec.obs)?;
    Ok(rel.eval_with(&|(side, i)| match side {
        Side::Left => spec.rep.value(rep, i),
        Side::Right => spec.obs.value(obs, i),
    }))
}

/// Some `y` equal to `base` on `fixed` with `ref(Δ, y, z)` and `g(Δ, y)`,
/// searching every other time point.
#[allow(clippy::too_many_arguments)]
fn exists_y(
    r: &IntvRel,
    g: Option<&IntvPred>,
    base: &Stream,
    fixed: Interval,
    iv: Interval,
    z: &Stream,
    carrier: &Carrier,
    budget: u128,
) -> Result<bool> {
    let ys = StreamSpace::new(base.universe_arc().clone(), *carrier)?;
    let vary: Vec<usize> = carrier.points().filter(|&t| !fixed.contains(t)).collect();
    ys.check_budget(vary.len(), budget, "abstract streams")?;
    let mut found = false;
    let mut err = None;
    ys.for_each_on(base, &vary, |y| {
        let ok = eval_rel(r, iv, y, z, carrier, budget).and_then(|ok| match (ok, g) {
            (true, Some(g)) => eval(g, iv, y, carrier),
            _ => Ok(ok),
        });
        match ok {
            Ok(true) => {
                found = true;
                false
            }
            Ok(false) => true,
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Whether a `simulation` or `vdash` witness still violates the condition:
/// the antecedent holds and no continuation of `y0` satisfies the consequent.
#[allow(clippy::too_many_arguments)]
pub fn replay_simulation(
    r: &IntvRel,
    g: Option<&IntvPred>,
    h: &IntvPred,
    left: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
    w: &Witness,
) -> Result<bool> {
    let (z, y0) = (stream(w, "z")?, stream(w, "y0")?);
    let (iv, d0) = (interval(w, "Δ")?, interval(w, "Δ0")?);
    if y0.universe() != left.as_ref() {
        return Err(Error::UniverseMismatch("y0 is not over the abstract universe".into()));
    }
    if !eval_rel(r, d0, y0, z, carrier, budget)? || !eval(h, iv, z, carrier)? {
        return Ok(false);
    }
    Ok(!exists_y(r, g, y0, d0, iv, z, carrier, budget)?)
}

/// Whether an `initialisation` witness still violates the condition.
pub fn replay_initialisation(
    r: &IntvRel,
    abs: &SystemSpec,
    conc: &SystemSpec,
    carrier: &Carrier,
    budget: u128,
    w: &Witness,
) -> Result<bool> {
    let z = stream(w, "z")?;
    let iv = interval(w, "Δ")?;
    let sigma = state(w, "σ", &abs.obs)?;
    if !eval(&conc.init_for(&sigma), iv, z, carrier)? {
        return Ok(false);
    }
    let base = StreamSpace::new(abs.rep.clone(), *carrier)?.base();
    let ai = abs.init_for(&sigma);
    Ok(!exists_y(
        r,
        Some(&ai),
        &base,
        Interval::Empty,
        iv,
        z,
        carrier,
        budget,
    )?)
}

/// Whether a `finalisation` witness still violates the condition.
pub fn replay_finalisation(
    r: &IntvRel,
    abs: &SystemSpec,
    conc: &SystemSpec,
    carrier: &Carrier,
    budget: u128,
    w: &Witness,
) -> Result<bool> {
    let (y, z) = (stream(w, "y")?, stream(w, "z")?);
    let iv = interval(w, "Δ")?;
    let t = time(w, "t")?;
    let sigma = state(w, "σ", &abs.obs)?;
    Ok(iv.contains(t)
        && eval_rel(r, iv, y, z, carrier, budget)?
        && final_holds(conc, z.at(t), &sigma.0)?
        && !final_holds(abs, y.at(t), &sigma.0)?)
}

/// Whether a `ref2` witness still violates `ref ∧ h⇃2 ⟹ g⇃1`.
pub fn replay_ref2(
    r: &IntvRel,
    h: &IntvPred,
    g: &IntvPred,
    carrier: &Carrier,
    budget: u128,
    w: &Witness,
) -> Result<bool> {
    let (y, z) = (stream(w, "y")?, stream(w, "z")?);
    let iv = interval(w, "Δ")?;
    Ok(eval_rel(r, iv, y, z, carrier, budget)?
        && eval(h, iv, z, carrier)?
        && !eval(g, iv, y, carrier)?)
}

/// Whether a `data-refinement` witness is a concrete observation the
/// abstract system cannot make.
pub fn replay_data_refinement(
    abs: &SystemSpec,
    conc: &SystemSpec,
    carrier: &Carrier,
    budget: u128,
    w: &Witness,
) -> Result<bool> {
    let z = stream(w, "z")?;
    let iv = interval(w, "Δ")?;
    let t = time(w, "t")?;
    let pair = ObsPair {
        pre: state(w, "ρ", &conc.obs)?,
        post: state(w, "ρ'", &conc.obs)?,
    };
    let produced = iv.contains(t)
        && eval(&IntvPred::prev(conc.init_for(&pair.pre)), iv, z, carrier)?
        && eval(&conc.behaviour(), iv, z, carrier)?
        && final_holds(conc, z.at(t), &pair.post.0)?;
    Ok(produced && !obs_set(abs, carrier, budget)?.contains(&pair))
}

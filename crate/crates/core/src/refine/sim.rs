use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{Side, StateRel};
use crate::pred::{IntvPred, NodeId};
use crate::refine::obs::Finaliser;
use crate::refine::SystemSpec;
use crate::rel::{IntvRel, RelEvaluator, RelNodeId, RelSession};
use crate::search::par_min;
use crate::state::{Stream, StreamSpace, VarUniverse};
use crate::time::{Carrier, Interval, IntervalTable, Time};
use crate::verdict::{Verdict, Witness};

/// The state relation `r` when `ref` is `□r`, `NE □r` or a conjunction of
/// such terms.
fn pointwise(r: &IntvRel) -> Option<StateRel> {
    match r {
        IntvRel::Lit(true) => Some(StateRel::Const(true)),
        IntvRel::Always(sr) => Some(sr.clone()),
        IntvRel::NonEmpty(a) => pointwise(a),
        IntvRel::And(a, b) => Some(StateRel::and(pointwise(a)?, pointwise(b)?)),
        _ => None,
    }
}

/// Outcome of the three forward-simulation clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForwardSimReport {
    pub simulation: Verdict,
    pub initialisation: Verdict,
    pub finalisation: Verdict,
}

impl ForwardSimReport {
    pub fn is_pass(&self) -> bool {
        self.simulation.is_pass() && self.initialisation.is_pass() && self.finalisation.is_pass()
    }

    /// The first failing clause, in the order simulation, initialisation,
    /// finalisation.
    pub fn verdict(&self) -> Verdict {
        [&self.simulation, &self.initialisation, &self.finalisation]
            .into_iter()
            .find(|v| !v.is_pass())
            .cloned()
            .unwrap_or(Verdict::Pass)
    }
}

/// Interval indices ordered by length, then by table position.
pub(crate) fn by_size(table: &IntervalTable) -> Vec<usize> {
    let mut order: Vec<usize> = (0..table.len()).collect();
    order.sort_by_key(|&ix| (table.intervals[ix].len(), ix));
    order
}

fn points(iv: Interval) -> Vec<Time> {
    iv.points().collect()
}

fn all_points(carrier: &Carrier) -> Vec<Time> {
    carrier.points().collect()
}

fn outside(carrier: &Carrier, iv: Interval) -> Vec<Time> {
    carrier.points().filter(|&t| !iv.contains(t)).collect()
}

fn spaces(
    left: &Arc<VarUniverse>,
    right: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
) -> Result<(StreamSpace, StreamSpace)> {
    let ys = StreamSpace::new(left.clone(), *carrier)?;
    let zs = StreamSpace::new(right.clone(), *carrier)?;
    ys.check_budget(carrier.horizon(), budget, "abstract streams")?;
    zs.check_budget(carrier.horizon(), budget, "concrete streams")?;
    Ok((ys, zs))
}

fn count(space: &StreamSpace, n: usize) -> u128 {
    space.count_on(n).expect("checked against the budget")
}

/// Some `y` agreeing with `base` off `vary` such that `ref(Δ, y, z)` and
/// `g(Δ, y)`.
#[allow(clippy::too_many_arguments)]
fn exists_y(
    s: &mut RelSession<'_>,
    ys: &StreamSpace,
    base: &Stream,
    vary: &[Time],
    r: RelNodeId,
    g: Option<NodeId>,
    ix: usize,
    z: &Stream,
) -> bool {
    !ys.for_each_on(base, vary, |y| {
        s.reset_left();
        !(s.eval(r, ix, y, z) && g.is_none_or(|g| s.left().eval(g, ix, y)))
    })
}

/// Shared search behind the simulation condition and `h ⊩ ref`.
#[allow(clippy::too_many_arguments)]
fn simulation_search(
    r: &IntvRel,
    g: Option<&IntvPred>,
    h: &IntvPred,
    left: &Arc<VarUniverse>,
    right: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
    clause: &str,
) -> Result<Verdict> {
    let (ys, zs) = spaces(left, right, carrier, budget)?;
    let mut ev = RelEvaluator::new(left.clone(), right.clone(), *carrier, budget);
    let rid = ev.add(r)?;
    let gid = g.map(|g| ev.add_left(g)).transpose()?;
    let hid = ev.add_right(h)?;
    let table = ev.table().clone();
    let ref_local = r.is_local();
    // With a local relation and a local g the existential only depends on
    // z and Δ: y varies on Δ and its values on Δ0 are irrelevant.
    let cached = ref_local && g.is_none_or(|g| g.is_local());
    let nz = count(&zs, carrier.horizon());
    let ybase = ys.base();

    for ix in by_size(&table) {
        let iv = table.intervals[ix];
        let mut pre = table.preceders[ix].clone();
        pre.sort_by_key(|&p| (table.intervals[p].len(), p));
        let found = par_min(
            nz,
            || ev.session(),
            |s, zi| {
                let z = zs.stream_at(zi);
                s.reset();
                if !s.right().eval(hid, ix, &z) {
                    return None;
                }
                if cached && exists_y(s, &ys, &ybase, &points(iv), rid, gid, ix, &z) {
                    return None;
                }
                for &p in &pre {
                    let d0 = table.intervals[p];
                    let (on, off) = (points(d0), outside(carrier, d0));
                    // y0 off Δ0 only matters to a non-local antecedent; the
                    // existential overwrites it anyway
                    let hidden = if ref_local { 0 } else { off.len() };
                    let mut y0 = ybase.clone();
                    for ai in 0..count(&ys, on.len()) {
                        ys.write_on(&mut y0, &on, ai);
                        let holds = (0..count(&ys, hidden)).any(|bi| {
                            ys.write_on(&mut y0, &off[..hidden], bi);
                            s.reset_left();
                            s.eval(rid, p, &y0, &z)
                        });
                        if holds && (cached || !exists_y(s, &ys, &y0, &off, rid, gid, ix, &z)) {
                            return Some((zi, (z, y0, d0)));
                        }
                    }
                }
                None
            },
        );
        if let Some((_, (z, y0, d0))) = found {
            return Ok(Verdict::Fail(Box::new(
                Witness::new(clause, carrier.horizon())
                    .stream("z", &z)
                    .stream("y0", &y0)
                    .interval("Δ", iv)
                    .interval("Δ0", d0),
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// `h` simulates `g` with respect to `ref`: whenever `ref` holds on some
/// `Δ0 ∝ Δ` and `h` on `Δ`, the abstract stream can be continued on `Δ` so
/// that `ref` and `g` hold there.
pub fn check_simulates(
    r: &IntvRel,
    g: &IntvPred,
    h: &IntvPred,
    left: &Arc<VarUniverse>,
    right: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
) -> Result<Verdict> {
    simulation_search(r, Some(g), h, left, right, carrier, budget, "simulation")
}

/// `h ⊩ ref`: the simulation condition without the abstract predicate.
pub fn check_vdash(
    h: &IntvPred,
    r: &IntvRel,
    left: &Arc<VarUniverse>,
    right: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
) -> Result<Verdict> {
    simulation_search(r, None, h, left, right, carrier, budget, "vdash")
}

/// `ref ∧ h⇃2 ⟹ g⇃1` over all intervals and stream pairs.
pub fn check_ref2(
    r: &IntvRel,
    h: &IntvPred,
    g: &IntvPred,
    left: &Arc<VarUniverse>,
    right: &Arc<VarUniverse>,
    carrier: &Carrier,
    budget: u128,
) -> Result<Verdict> {
    let (ys, zs) = spaces(left, right, carrier, budget)?;
    let mut ev = RelEvaluator::new(left.clone(), right.clone(), *carrier, budget);
    let rid = ev.add(r)?;
    let gid = ev.add_left(g)?;
    let hid = ev.add_right(h)?;
    let table = ev.table().clone();
    let z_local = r.is_local() && h.is_local();
    let y_local = r.is_local() && g.is_local();
    let (ybase, zbase) = (ys.base(), zs.base());

    for ix in by_size(&table) {
        let iv = table.intervals[ix];
        let zvary = if z_local {
            points(iv)
        } else {
            all_points(carrier)
        };
        let yvary = if y_local {
            points(iv)
        } else {
            all_points(carrier)
        };
        let ny = count(&ys, yvary.len());
        let found = par_min(
            count(&zs, zvary.len()),
            || ev.session(),
            |s, zi| {
                let mut z = zbase.clone();
                zs.write_on(&mut z, &zvary, zi);
                s.reset();
                if !s.right().eval(hid, ix, &z) {
                    return None;
                }
                let mut y = ybase.clone();
                for yi in 0..ny {
                    ys.write_on(&mut y, &yvary, yi);
                    s.reset_left();
                    if !s.left().eval(gid, ix, &y) && s.eval(rid, ix, &y, &z) {
                        return Some(((zi, yi), (y, z)));
                    }
                }
                None
            },
        );
        if let Some((_, (y, z))) = found {
            return Ok(Verdict::Fail(Box::new(
                Witness::new("ref2", carrier.horizon())
                    .stream("y", &y)
                    .stream("z", &z)
                    .interval("Δ", iv),
            )));
        }
    }
    Ok(Verdict::Pass)
}

fn same_observables(abs: &SystemSpec, conc: &SystemSpec) -> Result<()> {
    if abs.obs != conc.obs {
        return Err(Error::UniverseMismatch(format!(
            "systems {} and {} observe different variables",
            abs.name, conc.name
        )));
    }
    Ok(())
}

/// Every concrete initialisation can be matched by an abstract one related
/// through `ref`, for each observable start state.
pub fn check_initialisation(
    r: &IntvRel,
    abs: &SystemSpec,
    conc: &SystemSpec,
    carrier: &Carrier,
    budget: u128,
) -> Result<Verdict> {
    same_observables(abs, conc)?;
    let (ys, zs) = spaces(&abs.rep, &conc.rep, carrier, budget)?;
    let mut ev = RelEvaluator::new(abs.rep.clone(), conc.rep.clone(), *carrier, budget);
    let rid = ev.add(r)?;
    // Start states sharing both initialisations are checked once.
    let mut groups: Vec<(crate::state::State, NodeId, NodeId, bool)> = Vec::new();
    let mut seen = Vec::new();
    for sigma in abs.obs.all_states() {
        let (ai, ci) = (abs.init_for(&sigma), conc.init_for(&sigma));
        if seen.contains(&(ai.clone(), ci.clone())) {
            continue;
        }
        let local = r.is_local() && ai.is_local();
        let aid = ev.add_left(&ai)?;
        let cid = ev.add_right(&ci)?;
        groups.push((sigma, aid, cid, local));
        seen.push((ai, ci));
    }
    let table = ev.table().clone();
    let nz = count(&zs, carrier.horizon());
    let ybase = ys.base();

    for ix in by_size(&table) {
        let iv = table.intervals[ix];
        for (sigma, aid, cid, local) in &groups {
            let vary = if *local {
                points(iv)
            } else {
                all_points(carrier)
            };
            let found = par_min(
                nz,
                || ev.session(),
                |s, zi| {
                    let z = zs.stream_at(zi);
                    s.reset();
                    if !s.right().eval(*cid, ix, &z) {
                        return None;
                    }
                    let ok = exists_y(s, &ys, &ybase, &vary, rid, Some(*aid), ix, &z);
                    (!ok).then_some((zi, z))
                },
            );
            if let Some((_, z)) = found {
                return Ok(Verdict::Fail(Box::new(
                    Witness::new("initialisation", carrier.horizon())
                        .stream("z", &z)
                        .interval("Δ", iv)
                        .state("σ", abs.obs.state_map(&sigma.0)),
                )));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Whenever `ref` holds on `Δ`, every observable state the concrete
/// finalisation yields at a point of `Δ` is also yielded by the abstract
/// finalisation there.
pub fn check_finalisation(
    r: &IntvRel,
    abs: &SystemSpec,
    conc: &SystemSpec,
    carrier: &Carrier,
    budget: u128,
) -> Result<Verdict> {
    same_observables(abs, conc)?;
    let (ys, zs) = spaces(&abs.rep, &conc.rep, carrier, budget)?;
    let mut ev = RelEvaluator::new(abs.rep.clone(), conc.rep.clone(), *carrier, budget);
    let rid = ev.add(r)?;
    let table = ev.table().clone();
    let af = Finaliser::new(abs)?;
    let cf = Finaliser::new(conc)?;
    let a_targets: Vec<Vec<bool>> = ys.states().iter().map(|st| af.targets(&st.0)).collect();
    let c_targets: Vec<Vec<bool>> = zs.states().iter().map(|st| cf.targets(&st.0)).collect();
    // First observable state the concrete side allows and the abstract
    // side does not, per pair of state indices.
    let clash_of = |zst: usize, yst: usize| -> Option<usize> {
        c_targets[zst]
            .iter()
            .zip(&a_targets[yst])
            .position(|(&c, &a)| c && !a)
    };
    let (ny_states, nz_states) = (ys.states().len(), zs.states().len());
    let table_size = ny_states.saturating_mul(nz_states);
    let clash_table: Option<Vec<Option<usize>>> = (table_size <= 1 << 24).then(|| {
        (0..table_size)
            .map(|k| clash_of(k / ny_states, k % ny_states))
            .collect()
    });
    let clash = |zst: usize, yst: usize| match &clash_table {
        Some(tab) => tab[zst * ny_states + yst],
        None => clash_of(zst, yst),
    };
    let (ybase, zbase) = (ys.base(), zs.base());

    // A pointwise relation holds on a one-point interval exactly when its
    // state relation holds there, so any related clashing pair of states
    // already fails on [0,0].
    if let Some(pw) = pointwise(r) {
        let pw = pw.resolve_in(&abs.rep, &conc.rep)?;
        let first = table.index_of(Interval::point(0));
        for (zst, zstate) in zs.states().iter().enumerate() {
            for (yst, ystate) in ys.states().iter().enumerate() {
                let Some(sigma) = clash(zst, yst) else {
                    continue;
                };
                let related = pw.eval_with(&|(side, i)| match side {
                    Side::Left => abs.rep.value(&ystate.0, i),
                    Side::Right => conc.rep.value(&zstate.0, i),
                });
                if related {
                    let (mut y, mut z) = (ybase.clone(), zbase.clone());
                    ys.write_on(&mut y, &[0], yst as u128);
                    zs.write_on(&mut z, &[0], zst as u128);
                    return Ok(Verdict::Fail(Box::new(
                        Witness::new("finalisation", carrier.horizon())
                            .stream("y", &y)
                            .stream("z", &z)
                            .interval("Δ", table.intervals[first])
                            .interval("t", Interval::point(0))
                            .state("σ", abs.obs.state_map(&cf.obs_states()[sigma].0)),
                    )));
                }
            }
        }
        return Ok(Verdict::Pass);
    }

    let local = r.is_local();
    for ix in by_size(&table) {
        let iv = table.intervals[ix];
        if iv.is_empty() {
            continue;
        }
        let vary = if local {
            points(iv)
        } else {
            all_points(carrier)
        };
        let inside: Vec<(usize, Time)> = vary
            .iter()
            .enumerate()
            .filter(|(_, t)| iv.contains(**t))
            .map(|(k, &t)| (k, t))
            .collect();
        let ny = count(&ys, vary.len());
        let found = par_min(
            count(&zs, vary.len()),
            || ev.session(),
            |s, zi| {
                let mut zdig = vec![0usize; vary.len()];
                let mut rest = zi;
                for d in zdig.iter_mut().rev() {
                    *d = (rest % nz_states as u128) as usize;
                    rest /= nz_states as u128;
                }
                let mut z: Option<Stream> = None;
                let mut ydig = vec![0usize; vary.len()];
                for yi in 0..ny {
                    if yi > 0 {
                        for d in ydig.iter_mut().rev() {
                            *d += 1;
                            if *d < ny_states {
                                break;
                            }
                            *d = 0;
                        }
                    }
                    let Some((t, sigma)) = inside
                        .iter()
                        .find_map(|&(k, t)| clash(zdig[k], ydig[k]).map(|o| (t, o)))
                    else {
                        continue;
                    };
                    let z = z.get_or_insert_with(|| {
                        let mut z = zbase.clone();
                        zs.write_on(&mut z, &vary, zi);
                        s.reset();
                        z
                    });
                    let mut y = ybase.clone();
                    ys.write_on(&mut y, &vary, yi);
                    s.reset_left();
                    if s.eval(rid, ix, &y, z) {
                        return Some(((zi, yi), (y, z.clone(), t, sigma)));
                    }
                }
                None
            },
        );
        if let Some((_, (y, z, t, sigma))) = found {
            return Ok(Verdict::Fail(Box::new(
                Witness::new("finalisation", carrier.horizon())
                    .stream("y", &y)
                    .stream("z", &z)
                    .interval("Δ", iv)
                    .interval("t", Interval::point(t))
                    .state("σ", abs.obs.state_map(&cf.obs_states()[sigma].0)),
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// All three forward-simulation clauses for `ref` from `abs` to `conc`.
pub fn check_forward_simulation(
    r: &IntvRel,
    abs: &SystemSpec,
    conc: &SystemSpec,
    carrier: &Carrier,
    budget: u128,
) -> Result<ForwardSimReport> {
    same_observables(abs, conc)?;
    Ok(ForwardSimReport {
        simulation: check_simulates(
            r,
            &abs.behaviour(),
            &conc.behaviour(),
            &abs.rep,
            &conc.rep,
            carrier,
            budget,
        )?,
        initialisation: check_initialisation(r, abs, conc, carrier, budget)?,
        finalisation: check_finalisation(r, abs, conc, carrier, budget)?,
    })
}

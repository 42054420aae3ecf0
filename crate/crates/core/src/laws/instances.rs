use std::collections::BTreeMap;
use std::sync::Arc;

use super::gen::{map_vars, Gen};
use super::Outcome;
use crate::error::Result;
use crate::expr::{BoolExpr, CmpOp, Operand, RelVar, StatePred, StateRel};
use crate::pred::{check_equivalent, check_joins, check_splits, check_valid_implication, IntvPred};
use crate::refine::{check_data_refinement, check_forward_simulation, check_ref2, check_simulates};
use crate::refine::{check_vdash, Init, SystemSpec};
use crate::rel::{check_rel_implication, rel_joins, IntvRel};
use crate::state::VarUniverse;
use crate::time::Carrier;
use crate::verdict::Verdict;

const BUDGET: u128 = 1 << 20;
const MAX_STATES: usize = 9;
const MAX_STREAMS: u128 = 729;

type U = Arc<VarUniverse>;

fn conclude(v: Verdict, describe: impl FnOnce() -> String) -> Outcome {
    match v {
        Verdict::Pass => Outcome::Held,
        Verdict::Fail(w) => Outcome::Violated {
            description: describe(),
            witness: Some(*w),
        },
    }
}

fn carrier_text(c: &Carrier) -> String {
    format!(
        "H={}{}",
        c.horizon(),
        if c.is_open_ended() { " open" } else { "" }
    )
}

/// A copy of `u` with its variables renamed position by position.
fn twin(u: &VarUniverse, names: &[&str]) -> U {
    let vars = (0..u.len())
        .map(|i| (names[i].to_string(), u.domain(i).clone()))
        .collect();
    Arc::new(VarUniverse::new(vars).expect("distinct names"))
}

fn renamer(from: &VarUniverse, to: &VarUniverse) -> impl Fn(&str) -> String {
    let map: BTreeMap<String, String> = from
        .names()
        .zip(to.names())
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    move |v: &str| map.get(v).cloned().unwrap_or_else(|| v.to_string())
}

fn rename_pred(g: &IntvPred, from: &VarUniverse, to: &VarUniverse) -> IntvPred {
    let f = renamer(from, to);
    g.rename(&f)
}

/// `⋀ L.x = R.x'` over positionally matched variables.
fn link(left: &VarUniverse, right: &VarUniverse) -> StateRel {
    left.names()
        .zip(right.names())
        .map(|(a, b)| {
            BoolExpr::cmp(
                Operand::Var(RelVar::left(a)),
                CmpOp::Eq,
                Operand::Var(RelVar::right(b)),
            )
        })
        .reduce(BoolExpr::and)
        .unwrap_or(BoolExpr::Const(true))
}

/// A relation that is often the natural one between twins.
fn twin_rel(g: &mut Gen, left: &VarUniverse, right: &VarUniverse, depth: usize) -> IntvRel {
    match g.below(5) {
        0 => IntvRel::Always(link(left, right)),
        1 | 2 => IntvRel::ne_always(link(left, right)),
        3 => IntvRel::Lit(true),
        _ => g.rel(left, right, depth),
    }
}

/// Predicates over twin universes: the same shape on both sides, sometimes
/// strengthened on the right.
fn twin_preds(g: &mut Gen, left: &VarUniverse, right: &VarUniverse, depth: usize) -> (IntvPred, IntvPred) {
    let base = g.pred(left, depth);
    let mut other = if g.coin(0.7) {
        rename_pred(&base, left, right)
    } else {
        g.pred(right, depth)
    };
    if g.coin(0.3) {
        other = IntvPred::and(other, g.pred(right, 0));
    }
    (base, other)
}

fn maybe_ne(g: &mut Gen, p: IntvPred) -> IntvPred {
    if g.coin(0.5) {
        IntvPred::ne(p)
    } else {
        p
    }
}

fn pass(v: Result<Verdict>) -> Result<bool> {
    Ok(v?.is_pass())
}

fn vdash(h: &IntvPred, r: &IntvRel, y: &U, z: &U, c: &Carrier) -> Result<Verdict> {
    check_vdash(h, r, y, z, c, BUDGET)
}

/// Abstract universe over `a,b`, its concrete twin over `c,d`, and a carrier.
fn pair(g: &mut Gen) -> (U, U, Carrier) {
    let y = g.universe(&["a", "b"], MAX_STATES);
    let z = twin(&y, &["c", "d"]);
    let c = g.carrier(&[&y, &z], MAX_STREAMS);
    (y, z, c)
}

pub(super) fn refl(g: &mut Gen) -> Result<Outcome> {
    let u = g.universe(&["a", "b"], MAX_STATES);
    let c = g.carrier(&[&u], MAX_STREAMS);
    let depth = g.below(4);
    let p = g.pred(&u, depth);
    let id = IntvRel::Always(StateRel::identity_on(u.names().map(str::to_string)));
    let v = check_simulates(&id, &p, &p, &u, &u, &c, BUDGET)?;
    Ok(conclude(v, || format!("g = {p}, {}", carrier_text(&c))))
}

pub(super) fn trans(g: &mut Gen) -> Result<Outcome> {
    let x = g.universe(&["e"], 3);
    let y = twin(&x, &["a"]);
    let z = twin(&x, &["c"]);
    let c = g.carrier(&[&x], 27);
    g.local_only = true;
    let depth = g.below(2);
    let (f, gy) = twin_preds(g, &x, &y, depth);
    let h = if g.coin(0.7) {
        rename_pred(&gy, &y, &z)
    } else {
        g.pred(&z, depth)
    };
    let r1 = twin_rel(g, &x, &y, 1);
    let r2 = twin_rel(g, &y, &z, 1);
    g.local_only = false;
    if !pass(check_simulates(&r1, &f, &gy, &x, &y, &c, BUDGET))?
        || !pass(check_simulates(&r2, &gy, &h, &y, &z, &c, BUDGET))?
    {
        return Ok(Outcome::Vacuous);
    }
    let r = IntvRel::compose(r1.clone(), r2.clone(), y.clone());
    let v = check_simulates(&r, &f, &h, &x, &z, &c, BUDGET)?;
    Ok(conclude(v, || {
        format!(
            "f = {f}, g = {gy}, h = {h}, ref1 = {r1}, ref2 = {r2}, {}",
            carrier_text(&c)
        )
    }))
}

pub(super) fn decomp(g: &mut Gen) -> Result<Outcome> {
    let (y, z, c) = pair(g);
    let depth = g.below(3);
    let (gy, h) = twin_preds(g, &y, &z, depth);
    let h = maybe_ne(g, h);
    let r = twin_rel(g, &y, &z, 1);
    if !pass(vdash(&h, &r, &y, &z, &c))? || !pass(check_ref2(&r, &h, &gy, &y, &z, &c, BUDGET))? {
        return Ok(Outcome::Vacuous);
    }
    let v = check_simulates(&r, &gy, &h, &y, &z, &c, BUDGET)?;
    Ok(conclude(v, || {
        format!("g = {gy}, h = {h}, ref = {r}, {}", carrier_text(&c))
    }))
}

fn local_ref(g: &mut Gen, y: &VarUniverse, z: &VarUniverse) -> IntvRel {
    let keep = g.local_only;
    g.local_only = true;
    let r = twin_rel(g, y, z, 1);
    g.local_only = keep;
    r
}

pub(super) fn seq_comp(g: &mut Gen) -> Result<Outcome> {
    let (y, z, c) = pair(g);
    let r = local_ref(g, &y, &z);
    let depth = g.below(3);
    let g1 = g.pred(&z, depth);
    let g1 = maybe_ne(g, g1);
    let g2 = g.pred(&z, depth);
    let g2 = maybe_ne(g, g2);
    if !pass(vdash(&g1, &r, &y, &z, &c))?
        || !pass(vdash(&g2, &r, &y, &z, &c))?
        || !pass(rel_joins(&r, &y, &z, &c, BUDGET))?
    {
        return Ok(Outcome::Vacuous);
    }
    let v = vdash(&IntvPred::chop(g1.clone(), g2.clone()), &r, &y, &z, &c)?;
    Ok(conclude(v, || {
        format!("g1 = {g1}, g2 = {g2}, ref = {r}, {}", carrier_text(&c))
    }))
}

fn iterate(g: &mut Gen, from_empty: bool) -> Result<Outcome> {
    let (y, z, c) = pair(g);
    let r = local_ref(g, &y, &z);
    let depth = g.below(3);
    let p = g.pred(&z, depth);
    let p = maybe_ne(g, p);
    if !pass(vdash(&p, &r, &y, &z, &c))?
        || !pass(rel_joins(&r, &y, &z, &c, BUDGET))?
        || (from_empty && !pass(vdash(&IntvPred::Empty, &r, &y, &z, &c))?)
    {
        return Ok(Outcome::Vacuous);
    }
    let v = vdash(&IntvPred::omega(p.clone()), &r, &y, &z, &c)?;
    Ok(conclude(v, || {
        format!("g = {p}, ref = {r}, {}", carrier_text(&c))
    }))
}

pub(super) fn iteration(g: &mut Gen) -> Result<Outcome> {
    iterate(g, false)
}

pub(super) fn iteration_from_empty(g: &mut Gen) -> Result<Outcome> {
    iterate(g, true)
}

pub(super) fn weaken(g: &mut Gen) -> Result<Outcome> {
    let (y, z, c) = pair(g);
    let r = twin_rel(g, &y, &z, 1);
    let depth = g.below(3);
    let g2 = g.pred(&z, depth);
    let g1 = if g.coin(0.7) {
        IntvPred::and(g2.clone(), g.pred(&z, depth))
    } else {
        g.pred(&z, depth)
    };
    if !pass(vdash(&g2, &r, &y, &z, &c))?
        || !pass(check_valid_implication(&g1, &g2, &z, &c, BUDGET))?
    {
        return Ok(Outcome::Vacuous);
    }
    let v = vdash(&g1, &r, &y, &z, &c)?;
    Ok(conclude(v, || {
        format!("g1 = {g1}, g2 = {g2}, ref = {r}, {}", carrier_text(&c))
    }))
}

fn disjoin(g: &mut Gen, both: bool) -> Result<Outcome> {
    let (y, z, c) = pair(g);
    let r1 = twin_rel(g, &y, &z, 1);
    let r2 = twin_rel(g, &y, &z, 1);
    let depth = g.below(3);
    let p = g.pred(&z, depth);
    let (h1, h2) = (
        pass(vdash(&p, &r1, &y, &z, &c))?,
        pass(vdash(&p, &r2, &y, &z, &c))?,
    );
    if !(if both { h1 && h2 } else { h1 || h2 }) {
        return Ok(Outcome::Vacuous);
    }
    let v = vdash(&p, &IntvRel::or(r1.clone(), r2.clone()), &y, &z, &c)?;
    Ok(conclude(v, || {
        format!("g = {p}, ref1 = {r1}, ref2 = {r2}, {}", carrier_text(&c))
    }))
}

pub(super) fn disjunction(g: &mut Gen) -> Result<Outcome> {
    disjoin(g, false)
}

pub(super) fn disjunction_both(g: &mut Gen) -> Result<Outcome> {
    disjoin(g, true)
}

fn disjointness(g: &mut Gen, both: fn(IntvRel, IntvRel) -> IntvRel) -> Result<Outcome> {
    let w = g.universe(&["a"], 3);
    let x = g.universe(&["b"], 3);
    let y: U = Arc::new(w.union(&x)?);
    let z = g.universe(&["c", "d"], MAX_STATES);
    let c = g.carrier(&[&y, &z], MAX_STREAMS);
    let keep = g.local_only;
    g.local_only = true;
    let rw = g.rel(&w, &z, 1);
    let rx = g.rel(&x, &z, 1);
    g.local_only = keep;
    let depth = g.below(3);
    let g1 = g.pred(&z, depth);
    let g1 = maybe_ne(g, g1);
    let g2 = g.pred(&z, depth);
    if !pass(vdash(&g1, &rw, &w, &z, &c))? || !pass(vdash(&g2, &rx, &x, &z, &c))? {
        return Ok(Outcome::Vacuous);
    }
    let conj = IntvPred::and(g1.clone(), g2.clone());
    let v = vdash(&conj, &both(rw.clone(), rx.clone()), &y, &z, &c)?;
    Ok(conclude(v, || {
        format!(
            "g1 = {g1}, g2 = {g2}, refW = {rw}, refX = {rx}, {}",
            carrier_text(&c)
        )
    }))
}

pub(super) fn disjointness_and(g: &mut Gen) -> Result<Outcome> {
    disjointness(g, IntvRel::and)
}

pub(super) fn disjointness_or(g: &mut Gen) -> Result<Outcome> {
    disjointness(g, IntvRel::or)
}

/// Mostly predicates that split (or join), some arbitrary.
fn structured(g: &mut Gen, u: &VarUniverse) -> IntvPred {
    match g.below(6) {
        0 => IntvPred::Always(g.state_pred(u)),
        1 => IntvPred::Definitely(g.state_pred(u)),
        2 => IntvPred::ne_always(g.state_pred(u)),
        3 => IntvPred::and(
            IntvPred::Always(g.state_pred(u)),
            IntvPred::Definitely(g.state_pred(u)),
        ),
        _ => {
            let depth = g.below(3);
            g.pred(u, depth)
        }
    }
}

fn weaker(g: &mut Gen, u: &VarUniverse, p: &IntvPred) -> IntvPred {
    let depth = g.below(2);
    let q = g.pred(u, depth);
    if g.coin(0.7) {
        IntvPred::or(p.clone(), q)
    } else {
        q
    }
}

fn single(g: &mut Gen) -> (U, Carrier) {
    let u = g.universe(&["a", "b"], MAX_STATES);
    let c = g.carrier(&[&u], MAX_STREAMS);
    (u, c)
}

pub(super) fn splits_chop(g: &mut Gen) -> Result<Outcome> {
    let (u, c) = single(g);
    let p = structured(g, &u);
    let g1 = weaker(g, &u, &p);
    let g2 = weaker(g, &u, &p);
    if !pass(check_splits(&p, &u, &c, BUDGET))?
        || !pass(check_valid_implication(&p, &g1, &u, &c, BUDGET))?
        || !pass(check_valid_implication(&p, &g2, &u, &c, BUDGET))?
    {
        return Ok(Outcome::Vacuous);
    }
    let v = check_valid_implication(&p, &IntvPred::chop(g1.clone(), g2.clone()), &u, &c, BUDGET)?;
    Ok(conclude(v, || {
        format!("g = {p}, g1 = {g1}, g2 = {g2}, {}", carrier_text(&c))
    }))
}

pub(super) fn joins_chop(g: &mut Gen) -> Result<Outcome> {
    let (u, c) = single(g);
    let p = structured(g, &u);
    if !pass(check_joins(&p, &u, &c, BUDGET))? {
        return Ok(Outcome::Vacuous);
    }
    let depth = g.below(2);
    let g1 = g.pred(&u, depth);
    let g2 = g.pred(&u, depth);
    let lhs = IntvPred::chop(
        IntvPred::and(p.clone(), g1.clone()),
        IntvPred::and(p.clone(), g2.clone()),
    );
    let rhs = IntvPred::and(p.clone(), IntvPred::chop(g1.clone(), g2.clone()));
    let v = check_valid_implication(&lhs, &rhs, &u, &c, BUDGET)?;
    Ok(conclude(v, || {
        format!("g = {p}, g1 = {g1}, g2 = {g2}, {}", carrier_text(&c))
    }))
}

pub(super) fn splits_omega(g: &mut Gen) -> Result<Outcome> {
    let (u, c) = single(g);
    let p = structured(g, &u);
    if !pass(check_splits(&p, &u, &c, BUDGET))? {
        return Ok(Outcome::Vacuous);
    }
    let v = check_valid_implication(&p, &IntvPred::omega(p.clone()), &u, &c, BUDGET)?;
    Ok(conclude(v, || format!("g = {p}, {}", carrier_text(&c))))
}

pub(super) fn chop_units(g: &mut Gen) -> Result<Outcome> {
    let (u, c) = single(g);
    let depth = g.below(4);
    let p = g.pred(&u, depth);
    let left = IntvPred::chop(IntvPred::Empty, p.clone());
    let right = IntvPred::chop(p.clone(), IntvPred::Empty);
    let mut v = check_equivalent(&left, &p, &u, &c, BUDGET)?;
    if v.is_pass() {
        v = check_equivalent(&right, &p, &u, &c, BUDGET)?;
    }
    Ok(conclude(v, || format!("g = {p}, {}", carrier_text(&c))))
}

pub(super) fn chop_assoc(g: &mut Gen) -> Result<Outcome> {
    let (u, c) = single(g);
    let depth = g.below(3);
    let [g1, g2, g3] = [(); 3].map(|_| g.pred(&u, depth));
    let left = IntvPred::chop(IntvPred::chop(g1.clone(), g2.clone()), g3.clone());
    let right = IntvPred::chop(g1.clone(), IntvPred::chop(g2.clone(), g3.clone()));
    let v = check_equivalent(&left, &right, &u, &c, BUDGET)?;
    Ok(conclude(v, || {
        format!("g1 = {g1}, g2 = {g2}, g3 = {g3}, {}", carrier_text(&c))
    }))
}

fn iff(a: IntvPred, b: IntvPred) -> IntvPred {
    IntvPred::and(
        IntvPred::implies(a.clone(), b.clone()),
        IntvPred::implies(b, a),
    )
}

pub(super) fn stability(g: &mut Gen) -> Result<Outcome> {
    let (u, c) = single(g);
    let s = g.state_pred(&u);
    let mut frame = IntvPred::Always(s.clone()).free_vars();
    let names: Vec<String> = frame.iter().cloned().collect();
    if let Some(v) = names.get(g.below(names.len().max(1))) {
        frame.remove(v);
    }
    let stable = IntvPred::StableSet(frame);
    let both = IntvPred::and(
        iff(IntvPred::Definitely(s.clone()), IntvPred::Always(s.clone())),
        iff(IntvPred::Possibly(s.clone()), IntvPred::Sometime(s.clone())),
    );
    let v = check_valid_implication(&stable, &both, &u, &c, BUDGET)?;
    Ok(conclude(v, || format!("c = {s}, {stable}, {}", carrier_text(&c))))
}

fn pointwise(g: &mut Gen, wrap: fn(StatePred) -> (IntvPred, IntvPred)) -> Result<(Verdict, String)> {
    let (u, c) = single(g);
    let s = g.state_pred(&u);
    let (a, b) = wrap(s.clone());
    let v = check_valid_implication(&a, &b, &u, &c, BUDGET)?;
    Ok((v, format!("c = {s}, {}", carrier_text(&c))))
}

pub(super) fn definitely_always(g: &mut Gen) -> Result<Outcome> {
    let (v, d) = pointwise(g, |s| (IntvPred::Definitely(s.clone()), IntvPred::Always(s)))?;
    Ok(conclude(v, || d))
}

pub(super) fn sometime_possibly(g: &mut Gen) -> Result<Outcome> {
    let (v, d) = pointwise(g, |s| (IntvPred::Sometime(s.clone()), IntvPred::Possibly(s)))?;
    Ok(conclude(v, || d))
}

pub(super) fn always_not_definitely(g: &mut Gen) -> Result<Outcome> {
    let (v, d) = pointwise(g, |s| (IntvPred::Always(s.clone()), IntvPred::Definitely(s)))?;
    Ok(conclude(v, || d))
}

pub(super) fn possibly_not_sometime(g: &mut Gen) -> Result<Outcome> {
    let (v, d) = pointwise(g, |s| (IntvPred::Possibly(s.clone()), IntvPred::Sometime(s)))?;
    Ok(conclude(v, || d))
}

pub(super) fn seq_comp_no_joins(g: &mut Gen) -> Result<Outcome> {
    let (y, z, c) = pair(g);
    let keep = g.local_only;
    g.local_only = true;
    let depth = g.below(3);
    let g1 = g.pred(&z, depth);
    let g2 = g.pred(&z, depth);
    let r = match g.below(3) {
        0 => IntvRel::Proj2(IntvPred::or(g1.clone(), g2.clone())),
        1 => IntvRel::Proj2(g.pred(&z, 2)),
        _ => g.rel(&y, &z, 2),
    };
    g.local_only = keep;
    if !pass(vdash(&g1, &r, &y, &z, &c))? || !pass(vdash(&g2, &r, &y, &z, &c))? {
        return Ok(Outcome::Vacuous);
    }
    let v = vdash(&IntvPred::chop(g1.clone(), g2.clone()), &r, &y, &z, &c)?;
    Ok(conclude(v, || {
        format!("g1 = {g1}, g2 = {g2}, ref = {r}, {}", carrier_text(&c))
    }))
}

pub(super) fn ref_weakening(g: &mut Gen) -> Result<Outcome> {
    let (y, z, c) = pair(g);
    let r1 = if g.coin(0.2) {
        IntvRel::Lit(false)
    } else {
        twin_rel(g, &y, &z, 1)
    };
    let r3 = g.rel(&y, &z, 1);
    let r2 = if g.coin(0.7) {
        IntvRel::or(r1.clone(), r3)
    } else {
        r3
    };
    let depth = g.below(3);
    let p = g.pred(&z, depth);
    if !pass(vdash(&p, &r1, &y, &z, &c))?
        || !pass(check_rel_implication(&r1, &r2, &y, &z, &c, BUDGET))?
    {
        return Ok(Outcome::Vacuous);
    }
    let v = vdash(&p, &r2, &y, &z, &c)?;
    Ok(conclude(v, || {
        format!("g = {p}, ref1 = {r1}, ref2 = {r2}, {}", carrier_text(&c))
    }))
}

fn obs_rel(g: &mut Gen, rep: &VarUniverse, obs: &VarUniverse) -> StateRel {
    let atom = g.rel_atom(rep, obs);
    if g.coin(0.5) {
        atom
    } else {
        BoolExpr::or(atom, g.rel_atom(rep, obs))
    }
}

fn rename_rel(r: &StateRel, f: &dyn Fn(&str) -> String) -> StateRel {
    map_vars(r, |v: &RelVar| RelVar {
        side: v.side,
        name: f(&v.name),
    })
}

pub(super) fn soundness(g: &mut Gen) -> Result<Outcome> {
    let obs: U = Arc::new(
        VarUniverse::builder()
            .boolean("o")
            .build()
            .expect("one variable"),
    );
    let y = g.universe(&["a", "b"], MAX_STATES);
    let twins = g.coin(0.6);
    let z = if twins {
        twin(&y, &["c", "d"])
    } else {
        g.universe(&["c", "d"], MAX_STATES)
    };
    let c = g.carrier(&[&y, &z], MAX_STREAMS);

    let keep = g.local_only;
    g.local_only = true;
    let ai = g.pred(&y, 1);
    g.local_only = keep;
    let nops = 1 + g.below(2);
    let aops: BTreeMap<String, IntvPred> = (0..nops)
        .map(|i| {
            let depth = g.below(3);
            (format!("p{i}"), g.pred(&y, depth))
        })
        .collect();
    let af = obs_rel(g, &y, &obs);
    let abs = SystemSpec::new("A", obs.clone(), y.clone(), Init::Uniform(ai.clone()), aops.clone(), None, af.clone())?;

    let (conc, r) = if twins {
        let f = renamer(&y, &z);
        let strengthen = |p: IntvPred, g: &mut Gen| {
            if g.coin(0.3) {
                IntvPred::and(p, g.pred(&z, 0))
            } else {
                p
            }
        };
        let ci = strengthen(ai.rename(&f), g);
        let cops = aops
            .iter()
            .map(|(k, p)| (k.clone(), strengthen(p.rename(&f), g)))
            .collect();
        let cf = rename_rel(&af, &f);
        let conc = SystemSpec::new("C", obs.clone(), z.clone(), Init::Uniform(ci), cops, None, cf)?;
        (conc, twin_rel(g, &y, &z, 1))
    } else {
        let ci = g.pred(&z, 1);
        let cops = (0..nops)
            .map(|i| {
                let depth = g.below(3);
                (format!("p{i}"), g.pred(&z, depth))
            })
            .collect();
        let cf = obs_rel(g, &z, &obs);
        let conc = SystemSpec::new("C", obs.clone(), z.clone(), Init::Uniform(ci), cops, None, cf)?;
        (conc, g.rel(&y, &z, 1))
    };

    if !check_forward_simulation(&r, &abs, &conc, &c, BUDGET)?.is_pass() {
        return Ok(Outcome::Vacuous);
    }
    let v = check_data_refinement(&abs, &conc, &c, BUDGET)?;
    Ok(conclude(v, || {
        format!(
            "A = {{init {}, ops {:?}}}, C = {{init {}, ops {:?}}}, ref = {r}, {}",
            ai,
            aops.values().map(ToString::to_string).collect::<Vec<_>>(),
            conc.init_for(&obs.all_states()[0]),
            conc.ops.values().map(ToString::to_string).collect::<Vec<_>>(),
            carrier_text(&c)
        )
    }))
}

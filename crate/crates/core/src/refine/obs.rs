use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expr::Side;
use crate::pred::{IntvPred, PredEvaluator};
use crate::refine::SystemSpec;
use crate::search::par_min;
use crate::state::{State, Stream, StreamSpace, VarUniverse};
use crate::time::{Carrier, Interval};
use crate::verdict::{Verdict, Witness};

/// An observable start state and an observable end state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObsPair {
    pub pre: State,
    pub post: State,
}

/// Finalisation compiled to a lookup: which observable states a
/// representation state finalises to.
pub(crate) struct Finaliser {
    rep: std::sync::Arc<VarUniverse>,
    obs_states: Vec<State>,
    rel: crate::expr::BoolExpr<(Side, usize)>,
    obs: std::sync::Arc<VarUniverse>,
}

impl Finaliser {
    pub(crate) fn new(spec: &SystemSpec) -> Result<Self> {
        Ok(Self {
            rep: spec.rep.clone(),
            obs_states: spec.obs.all_states(),
            rel: spec.finalisation.resolve_in(&spec.rep, &spec.obs)?,
            obs: spec.obs.clone(),
        })
    }

    pub(crate) fn obs_states(&self) -> &[State] {
        &self.obs_states
    }

    pub(crate) fn holds(&self, rep_state: &[u8], obs_index: usize) -> bool {
        let o = &self.obs_states[obs_index].0;
        self.rel.eval_with(&|(side, i)| match side {
            Side::Left => self.rep.value(rep_state, i),
            Side::Right => self.obs.value(o, i),
        })
    }

    /// Observable states `rep_state` finalises to, as a membership vector.
    pub(crate) fn targets(&self, rep_state: &[u8]) -> Vec<bool> {
        (0..self.obs_states.len()).map(|k| self.holds(rep_state, k)).collect()
    }
}

fn obs_states_checked(spec: &SystemSpec, budget: u128) -> Result<()> {
    let n = spec.obs.state_count().unwrap_or(u128::MAX);
    if n > budget || n > 1 << 16 {
        return Err(Error::BudgetExceeded {
            what: "observable states".into(),
            size: n.to_string(),
            budget: budget.min(1 << 16),
        });
    }
    Ok(())
}

struct ObsSearch {
    space: StreamSpace,
    ev: PredEvaluator,
    behaviour: usize,
    /// Node of `⊖init(ρ)` for every observable state `ρ`.
    pre_init: Vec<usize>,
    fin: Finaliser,
}

impl ObsSearch {
    fn new(spec: &SystemSpec, carrier: &Carrier, budget: u128) -> Result<(Self, u128)> {
        obs_states_checked(spec, budget)?;
        let space = StreamSpace::new(spec.rep.clone(), *carrier)?;
        let n = space.check_budget(carrier.horizon(), budget, "representation streams")?;
        let mut ev = PredEvaluator::new(spec.rep.clone(), *carrier);
        let behaviour = ev.add(&spec.behaviour())?;
        let fin = Finaliser::new(spec)?;
        let pre_init = fin
            .obs_states()
            .iter()
            .map(|rho| ev.add(&IntvPred::prev(spec.init_for(rho))))
            .collect::<Result<_>>()?;
        Ok((
            Self {
                space,
                ev,
                behaviour,
                pre_init,
                fin,
            },
            n,
        ))
    }

    /// Calls `f(Δ index, ρ index, t, ρ' index)` for every observation made
    /// by stream `z`.
    fn observe(
        &self,
        session: &mut crate::pred::Session<'_>,
        z: &Stream,
        mut f: impl FnMut(usize, usize, usize, usize),
    ) {
        session.reset();
        let table = self.ev.table();
        let no = self.fin.obs_states().len();
        for ix in 0..table.len() {
            let iv = table.intervals[ix];
            if iv.is_empty() || !session.eval(self.behaviour, ix, z) {
                continue;
            }
            for rho in 0..no {
                if !session.eval(self.pre_init[rho], ix, z) {
                    continue;
                }
                for t in iv.points() {
                    for post in 0..no {
                        if self.fin.holds(z.at(t), post) {
                            f(ix, rho, t, post);
                        }
                    }
                }
            }
        }
    }
}

/// All observable start/end pairs of a system, by exhaustive enumeration of
/// representation streams and intervals.
pub fn obs_set(spec: &SystemSpec, carrier: &Carrier, budget: u128) -> Result<BTreeSet<ObsPair>> {
    let (search, n) = ObsSearch::new(spec, carrier, budget)?;
    let states = search.fin.obs_states();
    let idx = u64::try_from(n).expect("stream count fits in u64");
    let pairs: BTreeSet<(usize, usize)> = (0..idx)
        .into_par_iter()
        .map_init(
            || search.ev.session(),
            |session, i| {
                let z = search.space.stream_at(i as u128);
                let mut out = BTreeSet::new();
                search.observe(session, &z, |_, rho, _, post| {
                    out.insert((rho, post));
                });
                out
            },
        )
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(pairs
        .into_iter()
        .map(|(a, b)| ObsPair {
            pre: states[a].clone(),
            post: states[b].clone(),
        })
        .collect())
}

/// A concrete execution producing `pair`: the smallest interval, then the
/// first stream, interval and time point.
pub(crate) fn find_observation(
    spec: &SystemSpec,
    carrier: &Carrier,
    budget: u128,
    pair: &ObsPair,
) -> Result<Option<(Stream, Interval, usize)>> {
    let (search, n) = ObsSearch::new(spec, carrier, budget)?;
    let states = search.fin.obs_states();
    let want_pre = states.iter().position(|s| *s == pair.pre);
    let want_post = states.iter().position(|s| *s == pair.post);
    let (Some(want_pre), Some(want_post)) = (want_pre, want_post) else {
        return Ok(None);
    };
    let table = search.ev.table().clone();
    let found = par_min(
        n,
        || search.ev.session(),
        |session, i| {
            let z = search.space.stream_at(i);
            let mut best: Option<(usize, usize, usize)> = None;
            search.observe(session, &z, |ix, rho, t, post| {
                if rho == want_pre && post == want_post {
                    let key = (table.intervals[ix].len(), ix, t);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            });
            best.map(|(len, ix, t)| ((len, i, ix, t), z))
        },
    );
    Ok(found.map(|((_, _, ix, t), z)| (z, table.intervals[ix], t)))
}

/// `obs(concrete) ⊆ obs(abstract)`. A failure names an observation of the
/// concrete system that the abstract system cannot make, with a concrete
/// execution producing it.
pub fn check_data_refinement(
    abs: &SystemSpec,
    conc: &SystemSpec,
    carrier: &Carrier,
    budget: u128,
) -> Result<Verdict> {
    if abs.obs != conc.obs {
        return Err(Error::UniverseMismatch(format!(
            "systems {} and {} observe different variables",
            abs.name, conc.name
        )));
    }
    let a = obs_set(abs, carrier, budget)?;
    let c = obs_set(conc, carrier, budget)?;
    let Some(missing) = c.difference(&a).next() else {
        return Ok(Verdict::Pass);
    };
    let (z, iv, t) = find_observation(conc, carrier, budget, missing)?
        .expect("observation of the concrete system is reproducible");
    Ok(Verdict::Fail(Box::new(
        Witness::new("data-refinement", carrier.horizon())
            .stream("z", &z)
            .interval("Δ", iv)
            .interval("t", Interval::point(t))
            .state("ρ", conc.obs.state_map(&missing.pre.0))
            .state("ρ'", conc.obs.state_map(&missing.post.0)),
    )))
}

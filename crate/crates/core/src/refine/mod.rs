//! Systems, observation sets, data refinement and forward simulation.

mod obs;
mod replay;
mod sim;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::StateRel;
use crate::pred::{IntvPred, PredEvaluator};
use crate::state::{State, VarUniverse};
use crate::time::Carrier;
use crate::verdict::Verdict;

pub use obs::{check_data_refinement, obs_set, ObsPair};
pub use replay::{
    replay_data_refinement, replay_finalisation, replay_initialisation, replay_ref2,
    replay_simulation,
};
pub use sim::{
    check_finalisation, check_forward_simulation, check_initialisation, check_ref2,
    check_simulates, check_vdash, ForwardSimReport,
};

/// Initialisation of a system: the interval predicate that holds over the
/// initialising interval, given the observable start state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Init {
    /// The same predicate for every observable state.
    Uniform(IntvPred),
    /// One predicate per observable state; missing states cannot start.
    Table(BTreeMap<State, IntvPred>),
}

/// A system tuple over observable variables `obs` and representation
/// variables `rep`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    pub name: String,
    pub obs: Arc<VarUniverse>,
    pub rep: Arc<VarUniverse>,
    pub init: Init,
    pub ops: BTreeMap<String, IntvPred>,
    /// Environment assumption conjoined with the processes.
    pub rely: Option<IntvPred>,
    /// Finalisation, relating a representation state (left) to an
    /// observable state (right).
    pub finalisation: StateRel,
}

impl SystemSpec {
    pub fn new(
        name: &str,
        obs: Arc<VarUniverse>,
        rep: Arc<VarUniverse>,
        init: Init,
        ops: BTreeMap<String, IntvPred>,
        rely: Option<IntvPred>,
        finalisation: StateRel,
    ) -> Result<Self> {
        let spec = Self {
            name: name.to_string(),
            obs,
            rep,
            init,
            ops,
            rely,
            finalisation,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Error::InvalidSystem(format!("{}: {msg}", self.name));
        if !self.obs.is_disjoint(&self.rep) {
            return Err(bad(
                "observable and representation variables overlap".into(),
            ));
        }
        if self.ops.is_empty() {
            return Err(bad("a system needs at least one process".into()));
        }
        let mut ev = PredEvaluator::new(self.rep.clone(), Carrier::closed(1)?);
        for g in self.ops.values().chain(self.rely.iter()) {
            ev.add(g)?;
        }
        match &self.init {
            Init::Uniform(g) => {
                ev.add(g)?;
            }
            Init::Table(t) => {
                for (rho, g) in t {
                    if rho.0.len() != self.obs.len() {
                        return Err(bad("initialisation keyed by a malformed state".into()));
                    }
                    ev.add(g)?;
                }
            }
        }
        self.finalisation.resolve_in(&self.rep, &self.obs)?;
        Ok(())
    }

    /// Conjunction of all processes and the rely condition.
    pub fn behaviour(&self) -> IntvPred {
        IntvPred::all(self.ops.values().cloned().chain(self.rely.clone()))
    }

    pub fn init_for(&self, rho: &State) -> IntvPred {
        match &self.init {
            Init::Uniform(g) => g.clone(),
            Init::Table(t) => t.get(rho).cloned().unwrap_or(IntvPred::Lit(false)),
        }
    }
}

/// Re-runs a failing check at every smaller horizon and keeps the failure
/// with the smallest one.
pub fn minimize_horizon(
    carrier: &Carrier,
    check: impl Fn(&Carrier) -> Result<Verdict>,
) -> Result<Verdict> {
    let v = check(carrier)?;
    if v.is_pass() {
        return Ok(v);
    }
    for h in 1..carrier.horizon() {
        let smaller = check(&carrier.with_horizon(h)?)?;
        if !smaller.is_pass() {
            return Ok(smaller);
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests;

//! Randomised checking of algebraic laws over small universes and carriers.
//!
//! Every instance draws its terms from its own seeded stream, so a report
//! can be reproduced from the seed and the instance number alone.

pub mod gen;
mod instances;
#[cfg(test)]
mod tests;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::verdict::Witness;

pub use gen::{generate_relations, generate_terms, Gen, Weights};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    /// Expected to hold on every instance.
    Law,
    /// Expected to fail on some instance; the run stops at the first one.
    Counterexample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LawEntry {
    pub id: &'static str,
    pub statement: &'static str,
    pub source: &'static str,
    pub polarity: Polarity,
}

/// What one instance found.
pub(crate) enum Outcome {
    /// The side conditions did not hold.
    Vacuous,
    Held,
    Violated {
        description: String,
        witness: Option<Witness>,
    },
}

type Instance = fn(&mut Gen) -> Result<Outcome>;

#[derive(Debug, Clone)]
pub struct LawWitness {
    pub instance: u64,
    pub description: String,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone)]
pub struct LawReport {
    pub law: LawEntry,
    pub seed: u64,
    pub tried: u64,
    /// Instances whose side conditions held.
    pub exercised: u64,
    pub failures: u64,
    pub witnesses: Vec<LawWitness>,
    pub status: Status,
}

#[derive(Debug, Clone)]
pub struct CatalogReport {
    pub reports: Vec<LawReport>,
}

impl CatalogReport {
    pub fn is_pass(&self) -> bool {
        self.reports.iter().all(|r| r.status == Status::Pass)
    }

    pub fn get(&self, id: &str) -> Option<&LawReport> {
        self.reports.iter().find(|r| r.law.id == id)
    }
}

const KEEP_WITNESSES: usize = 3;

static CATALOG: &[(LawEntry, Instance)] = &[
    (
        LawEntry {
            id: "refl",
            statement: "g ⊑_□id g",
            source: "Reflexivity",
            polarity: Polarity::Law,
        },
        instances::refl,
    ),
    (
        LawEntry {
            id: "trans",
            statement: "f ⊑_ref1 g ∧ g ⊑_ref2 h ⟹ f ⊑_(ref1∘ref2) h, ref1 local",
            source: "Transitivity",
            polarity: Polarity::Law,
        },
        instances::trans,
    ),
    (
        LawEntry {
            id: "decomp",
            statement: "h ⊩ ref ∧ (ref ∧ h⇃2 ⟹ g⇃1) ⟹ g ⊑_ref h",
            source: "Decomposition",
            polarity: Polarity::Law,
        },
        instances::decomp,
    ),
    (
        LawEntry {
            id: "seq-comp",
            statement: "ref joins ∧ g1 ⊩ ref ∧ g2 ⊩ ref ⟹ g1;g2 ⊩ ref, ref local",
            source: "Sequential composition",
            polarity: Polarity::Law,
        },
        instances::seq_comp,
    ),
    (
        LawEntry {
            id: "iteration",
            statement: "ref joins ∧ g ⊩ ref ⟹ g^ω ⊩ ref, ref local",
            source: "Iteration",
            polarity: Polarity::Law,
        },
        instances::iteration,
    ),
    (
        LawEntry {
            id: "iteration-from-empty",
            statement: "ref joins ∧ g ⊩ ref ∧ empty ⊩ ref ⟹ g^ω ⊩ ref, ref local",
            source: "Iteration, with the zero-fold unfolding as a premise",
            polarity: Polarity::Law,
        },
        instances::iteration_from_empty,
    ),
    (
        LawEntry {
            id: "weaken",
            statement: "g2 ⊩ ref ∧ (g1 ⟹ g2) ⟹ g1 ⊩ ref",
            source: "Weaken",
            polarity: Polarity::Law,
        },
        instances::weaken,
    ),
    (
        LawEntry {
            id: "disjunction",
            statement: "g ⊩ ref1 ∨ g ⊩ ref2 ⟹ g ⊩ ref1 ∨ ref2",
            source: "Disjunction",
            polarity: Polarity::Law,
        },
        instances::disjunction,
    ),
    (
        LawEntry {
            id: "disjunction-both",
            statement: "g ⊩ ref1 ∧ g ⊩ ref2 ⟹ g ⊩ ref1 ∨ ref2",
            source: "Disjunction, with both premises",
            polarity: Polarity::Law,
        },
        instances::disjunction_both,
    ),
    (
        LawEntry {
            id: "disjointness-and",
            statement: "g1 ⊩ refW ∧ g2 ⊩ refX ⟹ g1 ∧ g2 ⊩ refW ∧ refX, W and X disjoint",
            source: "Disjointness",
            polarity: Polarity::Law,
        },
        instances::disjointness_and,
    ),
    (
        LawEntry {
            id: "disjointness-or",
            statement: "g1 ⊩ refW ∧ g2 ⊩ refX ⟹ g1 ∧ g2 ⊩ refW ∨ refX, W and X disjoint",
            source: "Disjointness",
            polarity: Polarity::Law,
        },
        instances::disjointness_or,
    ),
    (
        LawEntry {
            id: "splits-chop",
            statement: "g splits ∧ (g ⟹ g1) ∧ (g ⟹ g2) ⟹ (g ⟹ g1;g2)",
            source: "Splitting",
            polarity: Polarity::Law,
        },
        instances::splits_chop,
    ),
    (
        LawEntry {
            id: "joins-chop",
            statement: "g joins ⟹ ((g ∧ g1);(g ∧ g2) ⟹ g ∧ (g1;g2))",
            source: "Joining",
            polarity: Polarity::Law,
        },
        instances::joins_chop,
    ),
    (
        LawEntry {
            id: "splits-omega",
            statement: "g splits ⟹ (g ⟹ g^ω)",
            source: "Splitting",
            polarity: Polarity::Law,
        },
        instances::splits_omega,
    ),
    (
        LawEntry {
            id: "chop-units",
            statement: "empty;g ≡ g ≡ g;empty",
            source: "Chop",
            polarity: Polarity::Law,
        },
        instances::chop_units,
    ),
    (
        LawEntry {
            id: "chop-assoc",
            statement: "(g1;g2);g3 ≡ g1;(g2;g3)",
            source: "Chop",
            polarity: Polarity::Law,
        },
        instances::chop_assoc,
    ),
    (
        LawEntry {
            id: "stability",
            statement: "stable(vars(c) \\ {v}) ⟹ (⊡*c ≡ □c) ∧ (⟡*c ≡ ◇c)",
            source: "Stability",
            polarity: Polarity::Law,
        },
        instances::stability,
    ),
    (
        LawEntry {
            id: "definitely-always",
            statement: "⊡*c ⟹ □c",
            source: "Apparent states",
            polarity: Polarity::Law,
        },
        instances::definitely_always,
    ),
    (
        LawEntry {
            id: "sometime-possibly",
            statement: "◇c ⟹ ⟡*c",
            source: "Apparent states",
            polarity: Polarity::Law,
        },
        instances::sometime_possibly,
    ),
    (
        LawEntry {
            id: "soundness",
            statement: "forward simulation from A to C ⟹ C data-refines A, AI local",
            source: "Soundness",
            polarity: Polarity::Law,
        },
        instances::soundness,
    ),
    (
        LawEntry {
            id: "seq-comp-no-joins",
            statement: "g1 ⊩ ref ∧ g2 ⊩ ref ⟹ g1;g2 ⊩ ref fails without the joins condition",
            source: "Sequential composition",
            polarity: Polarity::Counterexample,
        },
        instances::seq_comp_no_joins,
    ),
    (
        LawEntry {
            id: "always-not-definitely",
            statement: "□c ⟹ ⊡*c fails",
            source: "Apparent states",
            polarity: Polarity::Counterexample,
        },
        instances::always_not_definitely,
    ),
    (
        LawEntry {
            id: "possibly-not-sometime",
            statement: "⟡*c ⟹ ◇c fails",
            source: "Apparent states",
            polarity: Polarity::Counterexample,
        },
        instances::possibly_not_sometime,
    ),
    (
        LawEntry {
            id: "ref-weakening",
            statement: "g ⊩ ref1 ∧ (ref1 ⟹ ref2) ⟹ g ⊩ ref2 fails",
            source: "Weaken",
            polarity: Polarity::Counterexample,
        },
        instances::ref_weakening,
    ),
];

pub fn catalog() -> Vec<LawEntry> {
    CATALOG.iter().map(|(e, _)| *e).collect()
}

fn law_seed(seed: u64, position: usize) -> u64 {
    seed ^ (position as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Size of a law run and of the terms it draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawConfig {
    pub instances: u64,
    pub seed: u64,
    pub max_depth: usize,
    pub max_horizon: usize,
}

impl LawConfig {
    pub fn new(instances: u64, seed: u64) -> Self {
        Self {
            instances,
            seed,
            max_depth: 3,
            max_horizon: 3,
        }
    }
}

/// Runs `instances` random instances of law `id`.
pub fn run_law(id: &str, instances: u64, seed: u64) -> Result<LawReport> {
    run_law_with(id, &LawConfig::new(instances, seed))
}

pub fn run_law_with(id: &str, cfg: &LawConfig) -> Result<LawReport> {
    let (instances, seed) = (cfg.instances, cfg.seed);
    let position = CATALOG
        .iter()
        .position(|(e, _)| e.id == id)
        .ok_or_else(|| Error::UnknownLaw(id.to_string()))?;
    let (law, check) = CATALOG[position];
    let s = law_seed(seed, position);
    let one = |i: u64| -> Result<(u64, Outcome)> {
        let mut g = Gen::new(s, i);
        g.max_depth = cfg.max_depth;
        g.max_horizon = cfg.max_horizon.max(1);
        Ok((i, check(&mut g)?))
    };
    let outcomes: Vec<(u64, Outcome)> = match law.polarity {
        Polarity::Law => (0..instances)
            .into_par_iter()
            .map(one)
            .collect::<Result<_>>()?,
        Polarity::Counterexample => {
            let mut out = Vec::new();
            for i in 0..instances {
                let (i, o) = one(i)?;
                let hit = matches!(o, Outcome::Violated { .. });
                out.push((i, o));
                if hit {
                    break;
                }
            }
            out
        }
    };
    Ok(summarise(law, seed, outcomes))
}

fn summarise(law: LawEntry, seed: u64, outcomes: Vec<(u64, Outcome)>) -> LawReport {
    let tried = outcomes.len() as u64;
    let mut exercised = 0;
    let mut failures = 0;
    let mut witnesses = Vec::new();
    for (instance, o) in outcomes {
        match o {
            Outcome::Vacuous => {}
            Outcome::Held => exercised += 1,
            Outcome::Violated {
                description,
                witness,
            } => {
                exercised += 1;
                failures += 1;
                if witnesses.len() < KEEP_WITNESSES {
                    witnesses.push(LawWitness {
                        instance,
                        description,
                        witness,
                    });
                }
            }
        }
    }
    let status = match law.polarity {
        _ if exercised == 0 => Status::Inconclusive,
        Polarity::Law if failures > 0 => Status::Fail,
        Polarity::Law => Status::Pass,
        Polarity::Counterexample if failures > 0 => Status::Pass,
        Polarity::Counterexample => Status::Fail,
    };
    LawReport {
        law,
        seed,
        tried,
        exercised,
        failures,
        witnesses,
        status,
    }
}

/// Every law in the catalog, in catalog order.
pub fn run_all(instances: u64, seed: u64) -> Result<CatalogReport> {
    run_all_with(&LawConfig::new(instances, seed))
}

pub fn run_all_with(cfg: &LawConfig) -> Result<CatalogReport> {
    let reports = CATALOG
        .iter()
        .map(|(e, _)| run_law_with(e.id, cfg))
        .collect::<Result<_>>()?;
    Ok(CatalogReport { reports })
}

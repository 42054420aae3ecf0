//! Running checks and rendering their verdicts as text or JSON.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Instant;

use ivdr_core::pred::{check_equivalent, check_joins, check_splits, check_valid_implication};
use ivdr_core::refine::{
    check_data_refinement, check_finalisation, check_forward_simulation, check_initialisation,
    check_ref2, check_simulates, check_vdash, minimize_horizon,
};
use ivdr_core::{Carrier, Error, Interval, Value, Verdict, Witness};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::elab::{Check, CheckKind, Model};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// The search space exceeded the budget.
    Refused,
    Error,
}

/// A value as it appears in a report: booleans and integers natively, the
/// sentinels as the strings `-inf` and `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JsonValue(pub Value);

impl Serialize for JsonValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Value::Bool(b) => s.serialize_bool(b),
            Value::Int(n) => s.serialize_i64(n),
            Value::NegInf => s.serialize_str("-inf"),
            Value::PosInf => s.serialize_str("+inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInterval(pub Interval);

impl Serialize for JsonInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.bounds() {
            None => s.serialize_str("empty"),
            Some(b) => b.serialize(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StreamColumn {
    pub var: String,
    pub values: Vec<JsonValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoleState {
    pub role: String,
    pub values: BTreeMap<String, JsonValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub clause: String,
    pub horizon: usize,
    pub streams: Vec<StreamColumn>,
    pub intervals: Vec<JsonInterval>,
    pub interval_roles: Vec<String>,
    pub states: Vec<RoleState>,
}

impl From<&Witness> for Counterexample {
    fn from(w: &Witness) -> Self {
        Self {
            clause: w.clause.clone(),
            horizon: w.horizon,
            streams: w
                .columns()
                .into_iter()
                .map(|(var, values)| StreamColumn {
                    var,
                    values: values.into_iter().map(JsonValue).collect(),
                })
                .collect(),
            intervals: w.intervals.iter().map(|(_, iv)| JsonInterval(*iv)).collect(),
            interval_roles: w.intervals.iter().map(|(r, _)| r.clone()).collect(),
            states: w
                .states
                .iter()
                .map(|(role, st)| RoleState {
                    role: role.clone(),
                    values: st.iter().map(|(k, v)| (k.clone(), JsonValue(*v))).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectiveReport {
    pub name: String,
    pub kind: String,
    pub verdict: Outcome,
    pub runtime_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub version: u32,
    pub file: String,
    pub directives: Vec<DirectiveReport>,
}

impl Report {
    /// 3 if any check was refused, otherwise 2 if any errored, otherwise 1
    /// if any failed, otherwise 0.
    pub fn exit_code(&self) -> i32 {
        let any = |o: Outcome| self.directives.iter().any(|d| d.verdict == o);
        if any(Outcome::Refused) {
            3
        } else if any(Outcome::Error) {
            2
        } else if any(Outcome::Fail) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.directives {
            let verdict = match d.verdict {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Refused => "REFUSED",
                Outcome::Error => "ERROR",
            };
            let _ = write!(out, "{verdict:<8}{} ({})", d.name, d.kind);
            if let Some(ms) = d.runtime_ms {
                let _ = write!(out, " [{ms} ms]");
            }
            out.push('\n');
            if let Some(e) = &d.error {
                let _ = writeln!(out, "        {e}");
            }
            if let Some(c) = &d.counterexample {
                let _ = writeln!(out, "        clause {} at horizon {}", c.clause, c.horizon);
                for (role, iv) in c.interval_roles.iter().zip(&c.intervals) {
                    let _ = writeln!(out, "        {role} = {}", iv.0);
                }
                for st in &c.states {
                    let parts: Vec<String> = st
                        .values
                        .iter()
                        .map(|(k, v)| format!("{k}={}", v.0))
                        .collect();
                    let _ = writeln!(out, "        {} = {{{}}}", st.role, parts.join(", "));
                }
                for col in &c.streams {
                    let vals: Vec<String> = col.values.iter().map(|v| v.0.to_string()).collect();
                    let _ = writeln!(out, "        {} = [{}]", col.var, vals.join(", "));
                }
            }
        }
        out
    }
}

/// Runs one check, keeping the failure found at the smallest horizon.
pub fn run_check(kind: &CheckKind, carrier: &Carrier, budget: u128) -> ivdr_core::Result<Verdict> {
    minimize_horizon(carrier, |c| match kind {
        CheckKind::Refinement { abs, conc } => check_data_refinement(abs, conc, c, budget),
        CheckKind::ForwardSim { rel, abs, conc } => {
            check_forward_simulation(rel, abs, conc, c, budget).map(|r| r.verdict())
        }
        CheckKind::Simulates {
            rel,
            abs,
            conc,
            left,
            right,
        } => check_simulates(rel, abs, conc, left, right, c, budget),
        CheckKind::Vdash {
            rel,
            conc,
            left,
            right,
        } => check_vdash(conc, rel, left, right, c, budget),
        CheckKind::Ref2 {
            rel,
            abs,
            conc,
            left,
            right,
        } => check_ref2(rel, conc, abs, left, right, c, budget),
        CheckKind::Initialisation { rel, abs, conc } => {
            check_initialisation(rel, abs, conc, c, budget)
        }
        CheckKind::Finalisation { rel, abs, conc } => {
            check_finalisation(rel, abs, conc, c, budget)
        }
        CheckKind::Implies { a, b, universe } => check_valid_implication(a, b, universe, c, budget),
        CheckKind::Equivalent { a, b, universe } => check_equivalent(a, b, universe, c, budget),
        CheckKind::Splits { g, universe } => check_splits(g, universe, c, budget),
        CheckKind::Joins { g, universe } => check_joins(g, universe, c, budget),
    })
}

fn report_one(check: &Check, carrier: &Carrier, budget: u128, timings: bool) -> DirectiveReport {
    let start = Instant::now();
    let result = run_check(&check.kind, carrier, budget);
    let runtime_ms = timings.then(|| start.elapsed().as_millis() as u64);
    let (verdict, counterexample, error) = match result {
        Ok(Verdict::Pass) => (Outcome::Pass, None, None),
        Ok(Verdict::Fail(w)) => (Outcome::Fail, Some(Counterexample::from(&*w)), None),
        Err(e @ Error::BudgetExceeded { .. }) => (Outcome::Refused, None, Some(e.to_string())),
        Err(e) => (Outcome::Error, None, Some(e.to_string())),
    };
    DirectiveReport {
        name: check.name.clone(),
        kind: check.kind.label().to_string(),
        verdict,
        runtime_ms,
        counterexample,
        error,
    }
}

/// Runs every check of `model` in parallel; the report lists them in file
/// order.
pub fn run_model(model: &Model, file: &str, budget: u128, timings: bool) -> Report {
    let directives = model
        .checks
        .par_iter()
        .map(|c| report_one(c, &model.carrier, budget, timings))
        .collect();
    Report {
        version: REPORT_VERSION,
        file: file.to_string(),
        directives,
    }
}

use std::collections::BTreeMap;

use crate::state::{Stream, Value};
use crate::time::Interval;

/// Everything needed to replay a failed check: the streams, intervals and
/// states that were quantified over, labelled by their role in the failed
/// clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub clause: String,
    pub horizon: usize,
    pub streams: Vec<(String, Stream)>,
    pub intervals: Vec<(String, Interval)>,
    pub states: Vec<(String, BTreeMap<String, Value>)>,
}

impl Witness {
    pub fn new(clause: &str, horizon: usize) -> Self {
        Self {
            clause: clause.to_string(),
            horizon,
            streams: Vec::new(),
            intervals: Vec::new(),
            states: Vec::new(),
        }
    }

    pub fn stream(mut self, role: &str, s: &Stream) -> Self {
        self.streams.push((role.to_string(), s.clone()));
        self
    }

    pub fn interval(mut self, role: &str, iv: Interval) -> Self {
        self.intervals.push((role.to_string(), iv));
        self
    }

    pub fn state(mut self, role: &str, st: BTreeMap<String, Value>) -> Self {
        self.states.push((role.to_string(), st));
        self
    }

    pub fn get_stream(&self, role: &str) -> Option<&Stream> {
        self.streams.iter().find(|(r, _)| r == role).map(|(_, s)| s)
    }

    pub fn get_interval(&self, role: &str) -> Option<Interval> {
        self.intervals
            .iter()
            .find(|(r, _)| r == role)
            .map(|(_, i)| *i)
    }

    pub fn get_state(&self, role: &str) -> Option<&BTreeMap<String, Value>> {
        self.states.iter().find(|(r, _)| r == role).map(|(_, s)| s)
    }

    /// Flat view used by reports: one entry per stream variable, named
    /// `role.var`.
    pub fn columns(&self) -> Vec<(String, Vec<Value>)> {
        let mut out = Vec::new();
        for (role, s) in &self.streams {
            for (i, name) in s.universe().names().enumerate() {
                out.push((format!("{role}.{name}"), s.values_of(i)));
            }
        }
        out
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "clause {} (horizon {})", self.clause, self.horizon)?;
        for (role, iv) in &self.intervals {
            write!(f, "\n  {role} = {iv}")?;
        }
        for (role, st) in &self.states {
            let parts: Vec<String> = st.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "\n  {role} = {{{}}}", parts.join(", "))?;
        }
        for (role, s) in &self.streams {
            write!(f, "\n  {role} = {}", s.display())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Box<Witness>),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub fn from_witness(w: Option<Witness>) -> Self {
        match w {
            None => Verdict::Pass,
            Some(w) => Verdict::Fail(Box::new(w)),
        }
    }
}

//! Values, variable universes, states and streams.
//!
//! States and streams store per-variable domain indices rather than values;
//! the owning [`VarUniverse`] maps indices back to [`Value`]s. Domains are
//! kept sorted, so index order coincides with value order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::time::{Carrier, Interval, Time};

/// A domain value. The derived order puts `NegInf` below and `PosInf` above
/// every other value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Value {
    NegInf,
    Bool(bool),
    Int(i64),
    PosInf,
}

impl Value {
    pub fn kind(&self) -> ValueKind {
        match self {
            Value::Bool(_) => ValueKind::Bool,
            _ => ValueKind::Num,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::NegInf => write!(f, "-inf"),
            Value::PosInf => write!(f, "+inf"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(i) => write!(f, "{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueKind {
    Bool,
    Num,
}

/// An ordered, finite, nonempty list of values of a single kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Domain(Vec<Value>);

impl Domain {
    pub fn new(mut values: Vec<Value>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidUniverse("empty domain".into()));
        }
        values.sort();
        values.dedup();
        let kind = values[0].kind();
        if values.iter().any(|v| v.kind() != kind) {
            return Err(Error::InvalidUniverse(
                "domain mixes boolean and numeric values".into(),
            ));
        }
        if values.len() > u8::MAX as usize {
            return Err(Error::InvalidUniverse(
                "domain has more than 255 values".into(),
            ));
        }
        Ok(Domain(values))
    }

    pub fn boolean() -> Self {
        Domain(vec![Value::Bool(false), Value::Bool(true)])
    }

    pub fn ints(range: std::ops::RangeInclusive<i64>) -> Self {
        Domain(range.map(Value::Int).collect())
    }

    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn kind(&self) -> ValueKind {
        self.0[0].kind()
    }

    pub fn index_of(&self, v: Value) -> Option<u8> {
        self.0.binary_search(&v).ok().map(|i| i as u8)
    }

    pub fn get(&self, idx: u8) -> Value {
        self.0[idx as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarDecl {
    pub name: String,
    pub domain: Domain,
}

/// An ordered list of uniquely named variables with finite domains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarUniverse {
    vars: Vec<VarDecl>,
}

impl VarUniverse {
    pub fn new(vars: Vec<(String, Domain)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (name, _) in &vars {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidUniverse(format!(
                    "variable `{name}` declared twice"
                )));
            }
        }
        Ok(Self {
            vars: vars
                .into_iter()
                .map(|(name, domain)| VarDecl { name, domain })
                .collect(),
        })
    }

    pub fn empty() -> Self {
        Self { vars: Vec::new() }
    }

    pub fn builder() -> UniverseBuilder {
        UniverseBuilder::default()
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[VarDecl] {
        &self.vars
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.iter().map(|v| v.name.as_str())
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn resolve(&self, name: &str) -> Result<usize> {
        self.position(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn domain(&self, var: usize) -> &Domain {
        &self.vars[var].domain
    }

    pub fn name(&self, var: usize) -> &str {
        &self.vars[var].name
    }

    pub fn contains(&self, name: &str) -> bool {
        self.position(name).is_some()
    }

    pub fn is_disjoint(&self, other: &VarUniverse) -> bool {
        self.names().all(|n| !other.contains(n))
    }

    /// Number of distinct states, `None` on overflow.
    pub fn state_count(&self) -> Option<u128> {
        self.vars
            .iter()
            .try_fold(1u128, |acc, v| acc.checked_mul(v.domain.len() as u128))
    }

    /// Union of two disjoint universes, `self` first.
    pub fn union(&self, other: &VarUniverse) -> Result<VarUniverse> {
        if let Some(clash) = self.names().find(|n| other.contains(n)) {
            return Err(Error::UniverseMismatch(format!(
                "variable `{clash}` occurs in both universes"
            )));
        }
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        Ok(VarUniverse { vars })
    }

    /// The sub-universe made of the named variables, in this universe's order.
    pub fn restrict(&self, names: &BTreeSet<String>) -> Result<VarUniverse> {
        for n in names {
            self.resolve(n)?;
        }
        Ok(VarUniverse {
            vars: self
                .vars
                .iter()
                .filter(|v| names.contains(&v.name))
                .cloned()
                .collect(),
        })
    }

    /// Decodes the `index`-th state in lexicographic order (first variable
    /// most significant).
    pub fn state_at(&self, mut index: u128) -> State {
        let mut vals = vec![0u8; self.vars.len()];
        for (slot, v) in vals.iter_mut().zip(&self.vars).rev() {
            let n = v.domain.len() as u128;
            *slot = (index % n) as u8;
            index /= n;
        }
        State(vals)
    }

    pub fn all_states(&self) -> Vec<State> {
        let n = self.state_count().expect("state space overflow");
        (0..n).map(|i| self.state_at(i)).collect()
    }

    pub fn state_from_values(&self, values: &[(&str, Value)]) -> Result<State> {
        let mut out = vec![None; self.vars.len()];
        for (name, val) in values {
            let i = self.resolve(name)?;
            let idx =
                self.vars[i]
                    .domain
                    .index_of(*val)
                    .ok_or_else(|| Error::ValueOutOfDomain {
                        var: name.to_string(),
                        value: val.to_string(),
                    })?;
            out[i] = Some(idx);
        }
        let vals = out
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::InvalidUniverse(format!("no value given for `{}`", self.vars[i].name))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(State(vals))
    }

    pub fn value(&self, state: &[u8], var: usize) -> Value {
        self.vars[var].domain.get(state[var])
    }

    pub fn display_state(&self, state: &[u8]) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(state)
            .map(|(v, &i)| format!("{}={}", v.name, v.domain.get(i)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn state_map(&self, state: &[u8]) -> BTreeMap<String, Value> {
        self.vars
            .iter()
            .zip(state)
            .map(|(v, &i)| (v.name.clone(), v.domain.get(i)))
            .collect()
    }
}

#[derive(Default)]
pub struct UniverseBuilder {
    vars: Vec<(String, Domain)>,
}

impl UniverseBuilder {
    pub fn var(mut self, name: &str, domain: Domain) -> Self {
        self.vars.push((name.to_string(), domain));
        self
    }

    pub fn boolean(self, name: &str) -> Self {
        self.var(name, Domain::boolean())
    }

    pub fn build(self) -> Result<VarUniverse> {
        VarUniverse::new(self.vars)
    }
}

/// A total assignment of domain indices to the variables of a universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct State(pub Vec<u8>);

impl State {
    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }
}

/// One state per carrier time point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stream {
    universe: Arc<VarUniverse>,
    horizon: usize,
    cells: Vec<u8>,
}

impl Stream {
    pub fn new(universe: Arc<VarUniverse>, states: Vec<State>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidCarrier(
                "a stream needs at least one state".into(),
            ));
        }
        let mut cells = Vec::with_capacity(states.len() * universe.len());
        for s in &states {
            if s.0.len() != universe.len() {
                return Err(Error::UniverseMismatch(
                    "state width differs from universe".into(),
                ));
            }
            for (i, &v) in s.0.iter().enumerate() {
                if (v as usize) >= universe.domain(i).len() {
                    return Err(Error::ValueOutOfDomain {
                        var: universe.name(i).to_string(),
                        value: format!("#{v}"),
                    });
                }
            }
            cells.extend_from_slice(&s.0);
        }
        Ok(Self {
            horizon: states.len(),
            universe,
            cells,
        })
    }

    /// Builds a stream from per-variable value sequences.
    pub fn from_columns(
        universe: Arc<VarUniverse>,
        columns: &[(&str, Vec<Value>)],
    ) -> Result<Self> {
        let horizon = columns.first().map(|c| c.1.len()).unwrap_or(1);
        let mut states = Vec::with_capacity(horizon);
        for t in 0..horizon {
            let vals: Vec<(&str, Value)> = columns
                .iter()
                .map(|(n, vs)| {
                    vs.get(t)
                        .copied()
                        .map(|v| (*n, v))
                        .ok_or_else(|| Error::InvalidCarrier(format!("column `{n}` is too short")))
                })
                .collect::<Result<_>>()?;
            states.push(universe.state_from_values(&vals)?);
        }
        Stream::new(universe, states)
    }

    pub fn constant(universe: Arc<VarUniverse>, state: State, horizon: usize) -> Result<Self> {
        Stream::new(universe, vec![state; horizon])
    }

    pub fn universe(&self) -> &VarUniverse {
        &self.universe
    }

    pub fn universe_arc(&self) -> &Arc<VarUniverse> {
        &self.universe
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn at(&self, t: Time) -> &[u8] {
        let w = self.universe.len();
        &self.cells[t * w..(t + 1) * w]
    }

    pub fn state(&self, t: Time) -> State {
        State(self.at(t).to_vec())
    }

    pub fn value(&self, t: Time, var: usize) -> Value {
        self.universe.value(self.at(t), var)
    }

    pub(crate) fn cell(&self, t: Time, var: usize) -> u8 {
        self.cells[t * self.universe.len() + var]
    }

    pub(crate) fn set_state(&mut self, t: Time, state: &[u8]) {
        let w = self.universe.len();
        self.cells[t * w..(t + 1) * w].copy_from_slice(state);
    }

    pub fn values_of(&self, var: usize) -> Vec<Value> {
        (0..self.horizon).map(|t| self.value(t, var)).collect()
    }

    pub fn check_carrier(&self, carrier: &Carrier) -> Result<()> {
        if self.horizon != carrier.horizon() {
            return Err(Error::CarrierMismatch {
                expected: carrier.horizon(),
                found: self.horizon,
            });
        }
        Ok(())
    }

    /// `iv ◁ self = iv ◁ other`.
    pub fn matches(&self, other: &Stream, iv: Interval) -> Result<bool> {
        if self.universe != other.universe || self.horizon != other.horizon {
            return Err(Error::UniverseMismatch(
                "matches needs streams over the same universe and carrier".into(),
            ));
        }
        Ok(iv.points().all(|t| self.at(t) == other.at(t)))
    }

    /// Pointwise union of streams over disjoint universes.
    pub fn join(&self, other: &Stream) -> Result<Stream> {
        if self.horizon != other.horizon {
            return Err(Error::CarrierMismatch {
                expected: self.horizon,
                found: other.horizon,
            });
        }
        let universe = Arc::new(self.universe.union(&other.universe)?);
        let states = (0..self.horizon)
            .map(|t| {
                let mut s = self.at(t).to_vec();
                s.extend_from_slice(other.at(t));
                State(s)
            })
            .collect();
        Stream::new(universe, states)
    }

    /// Projection onto a sub-universe given by name.
    pub fn restrict(&self, names: &BTreeSet<String>) -> Result<Stream> {
        let sub = Arc::new(self.universe.restrict(names)?);
        let positions: Vec<usize> = sub
            .names()
            .map(|n| self.universe.position(n).expect("restricted name"))
            .collect();
        let states = (0..self.horizon)
            .map(|t| State(positions.iter().map(|&p| self.cell(t, p)).collect()))
            .collect();
        Stream::new(sub, states)
    }

    /// States assembled by reading every variable at some point of `iv`.
    pub fn apparent(&self, iv: Interval) -> BTreeSet<State> {
        if iv.is_empty() {
            return BTreeSet::new();
        }
        let observed: Vec<Vec<u8>> = (0..self.universe.len())
            .map(|v| observed_values(self, iv, v))
            .collect();
        let mut out = BTreeSet::new();
        let mut cur = vec![0u8; observed.len()];
        product(&observed, 0, &mut cur, &mut |s| {
            out.insert(State(s.to_vec()));
            true
        });
        out
    }

    pub fn display(&self) -> String {
        let rows: Vec<String> = (0..self.horizon)
            .map(|t| format!("{t}:{}", self.universe.display_state(self.at(t))))
            .collect();
        rows.join(" ")
    }
}

/// Sorted, deduplicated domain indices of `var` over the points of `iv`.
pub(crate) fn observed_values(s: &Stream, iv: Interval, var: usize) -> Vec<u8> {
    let mut seen = [false; 256];
    let mut out = Vec::new();
    for t in iv.points() {
        let v = s.cell(t, var);
        if !seen[v as usize] {
            seen[v as usize] = true;
            out.push(v);
        }
    }
    out.sort_unstable();
    out
}

/// Visits the cartesian product of `choices`; stops early when `f` returns
/// false. Returns false if stopped.
pub(crate) fn product(
    choices: &[Vec<u8>],
    depth: usize,
    cur: &mut Vec<u8>,
    f: &mut dyn FnMut(&[u8]) -> bool,
) -> bool {
    if depth == choices.len() {
        return f(cur);
    }
    for &c in &choices[depth] {
        cur[depth] = c;
        if !product(choices, depth + 1, cur, f) {
            return false;
        }
    }
    true
}

/// Enumeration of all streams of a universe over a carrier, optionally
/// varying only a subset of time points around a fixed base stream.
#[derive(Debug, Clone)]
pub struct StreamSpace {
    universe: Arc<VarUniverse>,
    carrier: Carrier,
    states: Vec<State>,
}

impl StreamSpace {
    pub fn new(universe: Arc<VarUniverse>, carrier: Carrier) -> Result<Self> {
        let n = universe
            .state_count()
            .ok_or_else(|| Error::BudgetExceeded {
                what: "states".into(),
                size: "overflow".into(),
                budget: u128::MAX,
            })?;
        if n > 1 << 20 {
            return Err(Error::BudgetExceeded {
                what: "states of one time point".into(),
                size: n.to_string(),
                budget: 1 << 20,
            });
        }
        let states = universe.all_states();
        Ok(Self {
            universe,
            carrier,
            states,
        })
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.universe
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    /// Number of streams that vary on `points` time points.
    pub fn count_on(&self, points: usize) -> Option<u128> {
        (self.states.len() as u128).checked_pow(points as u32)
    }

    pub fn count(&self) -> Option<u128> {
        self.count_on(self.carrier.horizon())
    }

    pub fn check_budget(&self, points: usize, budget: u128, what: &str) -> Result<u128> {
        match self.count_on(points) {
            Some(n) if n <= budget => Ok(n),
            n => Err(Error::BudgetExceeded {
                what: what.to_string(),
                size: n
                    .map(|n| n.to_string())
                    .unwrap_or_else(|| "overflow".into()),
                budget,
            }),
        }
    }

    pub fn base(&self) -> Stream {
        Stream::constant(
            self.universe.clone(),
            self.states[0].clone(),
            self.carrier.horizon(),
        )
        .expect("base stream")
    }

    /// The `index`-th stream; time point 0 is the most significant digit.
    pub fn stream_at(&self, index: u128) -> Stream {
        let mut s = self.base();
        self.write_on(&mut s, &self.carrier.points().collect::<Vec<_>>(), index);
        s
    }

    /// Overwrites `target` on `points` with the `index`-th assignment (first
    /// listed point most significant).
    pub fn write_on(&self, target: &mut Stream, points: &[Time], mut index: u128) {
        let n = self.states.len() as u128;
        for &t in points.iter().rev() {
            target.set_state(t, &self.states[(index % n) as usize].0);
            index /= n;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Stream> + '_ {
        let n = self.count().expect("stream space overflow");
        (0..n).map(move |i| self.stream_at(i))
    }

    /// Calls `f` on every variation of `base` on `points`, stopping when `f`
    /// returns false. Returns whether the walk completed.
    pub fn for_each_on(
        &self,
        base: &Stream,
        points: &[Time],
        mut f: impl FnMut(&Stream) -> bool,
    ) -> bool {
        let mut s = base.clone();
        let n = self.count_on(points.len()).expect("stream space overflow");
        for i in 0..n {
            self.write_on(&mut s, points, i);
            if !f(&s) {
                return false;
            }
        }
        true
    }
}

/// Counts `(∏ |domain|)^horizon` and refuses when over `budget`.
pub fn enumerate_streams(
    universe: &Arc<VarUniverse>,
    carrier: Carrier,
    budget: u128,
) -> Result<Vec<Stream>> {
    let space = StreamSpace::new(universe.clone(), carrier)?;
    space.check_budget(carrier.horizon(), budget, "streams")?;
    Ok(space.iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uv() -> Arc<VarUniverse> {
        Arc::new(
            VarUniverse::builder()
                .var("u", Domain::ints(0..=1))
                .var("v", Domain::ints(0..=1))
                .build()
                .unwrap(),
        )
    }

    fn example_stream() -> Stream {
        Stream::from_columns(
            uv(),
            &[
                ("u", vec![Value::Int(0), Value::Int(1), Value::Int(1)]),
                ("v", vec![Value::Int(0), Value::Int(0), Value::Int(1)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn apparent_states_of_the_two_assignment_stream() {
        let s = example_stream();
        let u = s.universe().clone();
        let got = s.apparent(Interval::Range { lo: 0, hi: 2 });
        let expected: BTreeSet<State> = [(0, 0), (1, 1), (0, 1), (1, 0)]
            .into_iter()
            .map(|(a, b)| {
                u.state_from_values(&[("u", Value::Int(a)), ("v", Value::Int(b))])
                    .unwrap()
            })
            .collect();
        assert_eq!(got, expected);
        assert_eq!(s.apparent(Interval::point(1)), BTreeSet::from([s.state(1)]));
        assert!(s.apparent(Interval::Empty).is_empty());
    }

    #[test]
    fn apparent_of_constant_stream_is_singleton() {
        let u = uv();
        let st = u.state_at(2);
        let s = Stream::constant(u, st.clone(), 4).unwrap();
        assert_eq!(
            s.apparent(Interval::Range { lo: 1, hi: 3 }),
            BTreeSet::from([st])
        );
    }

    #[test]
    fn matches_examples() {
        let y = example_stream();
        let mut z = y.clone();
        assert!(y.matches(&y, Interval::Range { lo: 0, hi: 2 }).unwrap());
        z.set_state(0, &[1, 0]);
        assert!(y.matches(&z, Interval::Empty).unwrap());
        assert!(!y.matches(&z, Interval::point(0)).unwrap());
        assert!(y.matches(&z, Interval::Range { lo: 1, hi: 2 }).unwrap());
    }

    #[test]
    fn matches_rejects_other_universe() {
        let y = example_stream();
        let w = Arc::new(VarUniverse::builder().boolean("w").build().unwrap());
        let s = Stream::constant(w.clone(), w.state_at(0), 3).unwrap();
        assert!(y.matches(&s, Interval::Empty).is_err());
    }

    #[test]
    fn join_and_restrict() {
        let w = Arc::new(VarUniverse::builder().boolean("w").build().unwrap());
        let x = Arc::new(VarUniverse::builder().boolean("x").build().unwrap());
        let s1 = StreamSpace::new(w.clone(), Carrier::closed(3).unwrap())
            .unwrap()
            .stream_at(5);
        let s2 = StreamSpace::new(x.clone(), Carrier::closed(3).unwrap())
            .unwrap()
            .stream_at(2);
        let j = s1.join(&s2).unwrap();
        assert_eq!(j.universe().names().collect::<Vec<_>>(), vec!["w", "x"]);
        assert_eq!(j.restrict(&BTreeSet::from(["w".to_string()])).unwrap(), s1);
        assert_eq!(j.restrict(&BTreeSet::from(["x".to_string()])).unwrap(), s2);
        assert!(s1.join(&s1).is_err());

        let empty = Arc::new(VarUniverse::empty());
        let e = Stream::constant(empty, State(vec![]), 3).unwrap();
        assert_eq!(s1.join(&e).unwrap(), s1);
    }

    #[test]
    fn stream_counts() {
        let c2 = Carrier::closed(2).unwrap();
        let one = Arc::new(VarUniverse::builder().boolean("a").build().unwrap());
        assert_eq!(enumerate_streams(&one, c2, 1000).unwrap().len(), 4);
        let two = Arc::new(
            VarUniverse::builder()
                .boolean("a")
                .boolean("b")
                .build()
                .unwrap(),
        );
        assert_eq!(enumerate_streams(&two, c2, 1000).unwrap().len(), 16);

        let fig1 = Arc::new(
            VarUniverse::builder()
                .boolean("grd")
                .boolean("b")
                .var("m", Domain::ints(0..=2))
                .build()
                .unwrap(),
        );
        let space = StreamSpace::new(fig1.clone(), Carrier::closed(3).unwrap()).unwrap();
        // product-count oracle: (2 * 2 * 3)^3
        assert_eq!(space.count(), Some(12u128.pow(3)));
        let all: BTreeSet<_> = space.iter().map(|s| s.cells.clone()).collect();
        assert_eq!(all.len(), 1728);
        assert!(matches!(
            enumerate_streams(&fig1, Carrier::closed(3).unwrap(), 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let two = Arc::new(
            VarUniverse::builder()
                .boolean("a")
                .boolean("b")
                .build()
                .unwrap(),
        );
        let space = StreamSpace::new(two, Carrier::closed(2).unwrap()).unwrap();
        let streams: Vec<_> = space.iter().map(|s| s.cells.clone()).collect();
        let mut sorted = streams.clone();
        sorted.sort();
        assert_eq!(streams, sorted);
    }

    #[test]
    fn domains_sort_with_sentinels_at_the_ends() {
        let d = Domain::new(vec![
            Value::PosInf,
            Value::Int(1),
            Value::NegInf,
            Value::Int(0),
        ])
        .unwrap();
        assert_eq!(
            d.values(),
            &[Value::NegInf, Value::Int(0), Value::Int(1), Value::PosInf]
        );
        assert!(Domain::new(vec![Value::Bool(true), Value::Int(0)]).is_err());
        assert!(Domain::new(vec![]).is_err());
    }

    #[test]
    fn duplicate_variables_rejected() {
        assert!(VarUniverse::builder()
            .boolean("a")
            .boolean("a")
            .build()
            .is_err());
    }
}

//! Seeded random generation of universes, state expressions, interval
//! predicates and interval relations.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{BoolExpr, CmpOp, Operand, RelVar, StatePred, StateRel};
use crate::pred::IntvPred;
use crate::rel::IntvRel;
use crate::state::{Domain, Value, ValueKind, VarUniverse};
use crate::time::Carrier;

/// Relative weights of the compound constructors. Atoms share the
/// remaining probability mass evenly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weights {
    pub atom: u32,
    pub and: u32,
    pub or: u32,
    pub not: u32,
    pub nonempty: u32,
    pub chop: u32,
    pub omega: u32,
    pub prev: u32,
    pub history: u32,
}

impl Default for Weights {
    fn default() -> Self {
        Self {
            atom: 6,
            and: 3,
            or: 3,
            not: 2,
            nonempty: 2,
            chop: 3,
            omega: 1,
            prev: 1,
            history: 1,
        }
    }
}

/// Generator state: one ChaCha stream per instance so instances are
/// reproducible independently of each other.
pub struct Gen {
    rng: ChaCha8Rng,
    pub weights: Weights,
    /// Leave out the operators that look before the interval.
    pub local_only: bool,
    /// Caps the depth of every generated predicate and relation.
    pub max_depth: usize,
    /// Caps the horizon of generated carriers.
    pub max_horizon: usize,
}

impl Gen {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self {
            rng,
            weights: Weights::default(),
            local_only: false,
            max_depth: 3,
            max_horizon: 3,
        }
    }

    pub fn local(mut self) -> Self {
        self.local_only = true;
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// A universe with 1 or 2 variables named from `names`, each boolean or a
    /// small integer range, with at most `max_states` states.
    pub fn universe(&mut self, names: &[&str], max_states: usize) -> Arc<VarUniverse> {
        loop {
            let n = self.rng.gen_range(1..=names.len().min(2));
            let vars: Vec<(String, Domain)> = names[..n]
                .iter()
                .map(|name| {
                    let d = if self.coin(0.6) {
                        Domain::boolean()
                    } else {
                        Domain::ints(0..=self.rng.gen_range(1..=2))
                    };
                    (name.to_string(), d)
                })
                .collect();
            let states: usize = vars.iter().map(|(_, d)| d.len()).product();
            if states <= max_states {
                return Arc::new(VarUniverse::new(vars).expect("distinct names"));
            }
        }
    }

    /// A carrier whose stream spaces over `universes` stay within
    /// `max_streams` each.
    pub fn carrier(&mut self, universes: &[&VarUniverse], max_streams: u128) -> Carrier {
        let states = universes
            .iter()
            .map(|u| u.state_count().unwrap_or(u128::MAX))
            .max()
            .unwrap_or(1);
        let mut h = 1;
        while h < self.max_horizon && states.saturating_pow(h as u32 + 1) <= max_streams {
            h += 1;
        }
        let h = self.rng.gen_range(1..=h);
        let open = self.coin(0.3);
        Carrier::new(h, open).expect("nonzero horizon")
    }

    fn value_of(&mut self, d: &Domain) -> Value {
        *d.values().choose(&mut self.rng).expect("nonempty domain")
    }

    /// An atomic comparison or boolean read over `u`.
    pub fn state_atom(&mut self, u: &VarUniverse) -> StatePred {
        if self.coin(0.05) {
            return BoolExpr::Const(self.coin(0.5));
        }
        let i = self.below(u.len());
        let (name, d) = (u.name(i).to_string(), u.domain(i).clone());
        match d.kind() {
            ValueKind::Bool => {
                let x = StatePred::var(&name);
                if self.coin(0.5) {
                    x
                } else {
                    BoolExpr::not(x)
                }
            }
            _ => {
                let others: Vec<usize> = (0..u.len())
                    .filter(|&j| j != i && u.domain(j).kind() != ValueKind::Bool)
                    .collect();
                let op = *[CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Le]
                    .choose(&mut self.rng)
                    .unwrap();
                if !others.is_empty() && self.coin(0.3) {
                    let j = *others.choose(&mut self.rng).unwrap();
                    StatePred::vars_cmp(&name, op, u.name(j))
                } else {
                    StatePred::var_cmp(&name, op, self.value_of(&d))
                }
            }
        }
    }

    /// A state predicate of at most one connective.
    pub fn state_pred(&mut self, u: &VarUniverse) -> StatePred {
        match self.below(5) {
            0 => BoolExpr::and(self.state_atom(u), self.state_atom(u)),
            1 => BoolExpr::or(self.state_atom(u), self.state_atom(u)),
            _ => self.state_atom(u),
        }
    }

    fn pred_atom(&mut self, u: &VarUniverse) -> IntvPred {
        match self.below(9) {
            0 | 1 => IntvPred::Always(self.state_pred(u)),
            2 => IntvPred::Sometime(self.state_pred(u)),
            3 => IntvPred::Definitely(self.state_pred(u)),
            4 => IntvPred::Possibly(self.state_pred(u)),
            5 => IntvPred::Empty,
            6 => IntvPred::Lit(self.coin(0.5)),
            7 => IntvPred::Finite,
            _ => IntvPred::Infinite,
        }
    }

    fn history_atom(&mut self, u: &VarUniverse) -> IntvPred {
        match self.below(3) {
            0 => IntvPred::PrevHolds(self.state_pred(u)),
            1 => IntvPred::Stable(u.name(self.below(u.len())).to_string()),
            _ => {
                let set: BTreeSet<String> = u
                    .names()
                    .filter(|_| self.rng.gen_bool(0.5))
                    .map(str::to_string)
                    .collect();
                IntvPred::StableSet(set)
            }
        }
    }

    /// An interval predicate over `u` of depth at most `depth + 1`; depth 0
    /// yields atoms only.
    pub fn pred(&mut self, u: &VarUniverse, depth: usize) -> IntvPred {
        let depth = depth.min(self.max_depth);
        if depth == 0 {
            return self.pred_atom(u);
        }
        let w = self.weights;
        let (prev, history) = if self.local_only {
            (0, 0)
        } else {
            (w.prev, w.history)
        };
        let table = [
            w.atom, w.and, w.or, w.not, w.nonempty, w.chop, w.omega, prev, history,
        ];
        let total: u32 = table.iter().sum();
        let mut pick = self.rng.gen_range(0..total);
        let mut k = 0;
        while pick >= table[k] {
            pick -= table[k];
            k += 1;
        }
        let d = depth - 1;
        match k {
            0 => self.pred_atom(u),
            1 => IntvPred::and(self.pred(u, d), self.pred(u, d)),
            2 => IntvPred::or(self.pred(u, d), self.pred(u, d)),
            3 => IntvPred::not(self.pred(u, d)),
            4 => IntvPred::ne(self.pred(u, d)),
            5 => IntvPred::chop(self.pred(u, d), self.pred(u, d)),
            6 => IntvPred::omega(self.pred(u, d)),
            7 => IntvPred::prev(self.pred(u, d)),
            _ => self.history_atom(u),
        }
    }

    /// An atomic comparison between a left and a right variable, or a
    /// one-sided atom.
    pub fn rel_atom(&mut self, left: &VarUniverse, right: &VarUniverse) -> StateRel {
        let lift = |e: StatePred, side: fn(&str) -> RelVar| -> StateRel { map_vars(&e, move |v: &String| side(v)) };
        match self.below(6) {
            0 => lift(self.state_atom(left), RelVar::left),
            1 => lift(self.state_atom(right), RelVar::right),
            _ => {
                let pairs: Vec<(usize, usize)> = (0..left.len())
                    .flat_map(|i| (0..right.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| left.domain(i).kind() == right.domain(j).kind())
                    .collect();
                let Some(&(i, j)) = pairs.choose(&mut self.rng) else {
                    return lift(self.state_atom(left), RelVar::left);
                };
                let ops: &[CmpOp] = if left.domain(i).kind() == ValueKind::Bool {
                    &[CmpOp::Eq, CmpOp::Eq, CmpOp::Ne]
                } else {
                    &[CmpOp::Eq, CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Le]
                };
                let op = *ops.choose(&mut self.rng).unwrap();
                BoolExpr::cmp(
                    Operand::Var(RelVar::left(left.name(i))),
                    op,
                    Operand::Var(RelVar::right(right.name(j))),
                )
            }
        }
    }

    pub fn state_rel(&mut self, left: &VarUniverse, right: &VarUniverse) -> StateRel {
        match self.below(4) {
            0 => BoolExpr::and(self.rel_atom(left, right), self.rel_atom(left, right)),
            1 => BoolExpr::or(self.rel_atom(left, right), self.rel_atom(left, right)),
            _ => self.rel_atom(left, right),
        }
    }

    /// An interval relation of depth at most `depth + 1`. Projections carry
    /// predicates of depth at most 1.
    pub fn rel(&mut self, left: &VarUniverse, right: &VarUniverse, depth: usize) -> IntvRel {
        let atom = |g: &mut Gen| match g.below(8) {
            0..=3 => IntvRel::Always(g.state_rel(left, right)),
            4 => IntvRel::Lit(g.coin(0.7)),
            5 => IntvRel::Proj1(g.pred(left, 1)),
            _ => IntvRel::Proj2(g.pred(right, 1)),
        };
        let depth = depth.min(self.max_depth);
        if depth == 0 {
            return atom(self);
        }
        let d = depth - 1;
        match self.below(10) {
            0..=3 => atom(self),
            4 => IntvRel::and(self.rel(left, right, d), self.rel(left, right, d)),
            5 => IntvRel::or(self.rel(left, right, d), self.rel(left, right, d)),
            6 => IntvRel::not(self.rel(left, right, d)),
            7 | 8 => IntvRel::ne(self.rel(left, right, d)),
            _ => IntvRel::chop(self.rel(left, right, d), self.rel(left, right, d)),
        }
    }
}

/// Renames every variable of `e` through `f`.
pub fn map_vars<A, B>(e: &BoolExpr<A>, f: impl Fn(&A) -> B + Copy) -> BoolExpr<B> {
    let op = |o: &Operand<A>| match o {
        Operand::Var(v) => Operand::Var(f(v)),
        Operand::Const(c) => Operand::Const(*c),
    };
    match e {
        BoolExpr::Const(b) => BoolExpr::Const(*b),
        BoolExpr::Var(v) => BoolExpr::Var(f(v)),
        BoolExpr::Cmp(a, o, b) => BoolExpr::Cmp(op(a), *o, op(b)),
        BoolExpr::Not(a) => BoolExpr::not(map_vars(a, f)),
        BoolExpr::And(a, b) => BoolExpr::and(map_vars(a, f), map_vars(b, f)),
        BoolExpr::Or(a, b) => BoolExpr::or(map_vars(a, f), map_vars(b, f)),
        BoolExpr::Iff(a, b) => BoolExpr::iff(map_vars(a, f), map_vars(b, f)),
    }
}

/// A deterministic stream of interval predicates over `universe`.
pub fn generate_terms(
    universe: Arc<VarUniverse>,
    depth: usize,
    seed: u64,
) -> impl Iterator<Item = IntvPred> {
    let mut g = Gen::new(seed, 0);
    std::iter::repeat_with(move || g.pred(&universe, depth))
}

/// A deterministic stream of interval relations between `left` and `right`.
pub fn generate_relations(
    left: Arc<VarUniverse>,
    right: Arc<VarUniverse>,
    depth: usize,
    seed: u64,
) -> impl Iterator<Item = IntvRel> {
    let mut g = Gen::new(seed, 0);
    std::iter::repeat_with(move || g.rel(&left, &right, depth))
}

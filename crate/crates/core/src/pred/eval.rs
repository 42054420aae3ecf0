use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::BoolExpr;
use crate::pred::IntvPred;
use crate::state::{observed_values, product, Stream, VarUniverse};
use crate::time::{Carrier, Interval, IntervalTable};

pub type NodeId = usize;

type CExpr = BoolExpr<usize>;

#[derive(Debug, Clone)]
enum Node {
    Always(CExpr),
    Sometime(CExpr),
    Definitely(CExpr, Vec<usize>),
    Possibly(CExpr, Vec<usize>),
    Empty,
    Finite,
    Infinite,
    NonEmpty(NodeId),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Not(NodeId),
    Chop(NodeId, NodeId),
    Omega(NodeId),
    Prev(NodeId),
    PrevHolds(CExpr),
    Stable(Vec<usize>),
    Lit(bool),
}

/// Compiled, hash-consed interval predicates over one universe and carrier.
/// Evaluation happens in a [`Session`], which memoizes per stream.
#[derive(Debug, Clone)]
pub struct PredEvaluator {
    universe: Arc<VarUniverse>,
    table: Arc<IntervalTable>,
    nodes: Vec<Node>,
    ids: HashMap<IntvPred, NodeId>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalStats {
    /// Fixed-point computations performed.
    pub omega_runs: usize,
    /// Largest number of rounds any single fixed point needed to stabilize.
    pub omega_max_rounds: usize,
}

impl PredEvaluator {
    pub fn new(universe: Arc<VarUniverse>, carrier: Carrier) -> Self {
        Self::with_table(universe, Arc::new(IntervalTable::new(carrier)))
    }

    pub fn with_table(universe: Arc<VarUniverse>, table: Arc<IntervalTable>) -> Self {
        Self {
            universe,
            table,
            nodes: Vec::new(),
            ids: HashMap::new(),
        }
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.universe
    }

    pub fn table(&self) -> &Arc<IntervalTable> {
        &self.table
    }

    pub fn carrier(&self) -> &Carrier {
        &self.table.carrier
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Compiles `g`, reusing nodes for structurally equal subterms.
    pub fn add(&mut self, g: &IntvPred) -> Result<NodeId> {
        if let Some(&id) = self.ids.get(g) {
            return Ok(id);
        }
        let u = self.universe.clone();
        let apparent = |c: &crate::expr::StatePred| -> Result<(CExpr, Vec<usize>)> {
            let ce = c.resolve_in(&u)?;
            let mut vars: Vec<usize> = c
                .free_vars()
                .iter()
                .map(|n| u.resolve(n))
                .collect::<Result<_>>()?;
            vars.sort_unstable();
            Ok((ce, vars))
        };
        let node = match g {
            IntvPred::Always(c) => Node::Always(c.resolve_in(&u)?),
            IntvPred::Sometime(c) => Node::Sometime(c.resolve_in(&u)?),
            IntvPred::Definitely(c) => {
                let (ce, vars) = apparent(c)?;
                Node::Definitely(ce, vars)
            }
            IntvPred::Possibly(c) => {
                let (ce, vars) = apparent(c)?;
                Node::Possibly(ce, vars)
            }
            IntvPred::Empty => Node::Empty,
            IntvPred::Finite => Node::Finite,
            IntvPred::Infinite => Node::Infinite,
            IntvPred::Lit(b) => Node::Lit(*b),
            IntvPred::NonEmpty(a) => Node::NonEmpty(self.add(a)?),
            IntvPred::Not(a) => Node::Not(self.add(a)?),
            IntvPred::Omega(a) => Node::Omega(self.add(a)?),
            IntvPred::Prev(a) => Node::Prev(self.add(a)?),
            IntvPred::And(a, b) => Node::And(self.add(a)?, self.add(b)?),
            IntvPred::Or(a, b) => Node::Or(self.add(a)?, self.add(b)?),
            IntvPred::Chop(a, b) => Node::Chop(self.add(a)?, self.add(b)?),
            IntvPred::PrevHolds(c) => Node::PrevHolds(c.resolve_in(&u)?),
            IntvPred::Stable(v) => Node::Stable(vec![u.resolve(v)?]),
            IntvPred::StableSet(vs) => {
                Node::Stable(vs.iter().map(|v| u.resolve(v)).collect::<Result<_>>()?)
            }
        };
        let id = self.nodes.len();
        self.nodes.push(node);
        self.ids.insert(g.clone(), id);
        Ok(id)
    }

    pub fn session(&self) -> Session<'_> {
        Session {
            ev: self,
            memo: vec![0; self.nodes.len() * self.table.len()],
            stats: EvalStats::default(),
        }
    }

    pub fn check_stream(&self, s: &Stream) -> Result<()> {
        if s.universe() != &*self.universe {
            return Err(Error::UniverseMismatch(
                "stream universe differs from the predicate universe".into(),
            ));
        }
        s.check_carrier(&self.table.carrier)
    }
}

/// Memo table for evaluating one evaluator's nodes against one stream at a
/// time. Call [`Session::reset`] before switching streams.
pub struct Session<'e> {
    ev: &'e PredEvaluator,
    memo: Vec<u8>,
    stats: EvalStats,
}

const UNKNOWN: u8 = 0;
const FALSE: u8 = 1;
const TRUE: u8 = 2;

impl Session<'_> {
    pub fn reset(&mut self) {
        self.memo.fill(UNKNOWN);
    }

    pub fn stats(&self) -> EvalStats {
        self.stats
    }

    pub fn eval_at(&mut self, id: NodeId, iv: Interval, s: &Stream) -> bool {
        let ix = self.ev.table.index_of(iv);
        self.eval(id, ix, s)
    }

    /// Value of node `id` on the interval with table index `ix`.
    pub fn eval(&mut self, id: NodeId, ix: usize, s: &Stream) -> bool {
        let slot = id * self.ev.table.len() + ix;
        match self.memo[slot] {
            TRUE => return true,
            FALSE => return false,
            _ => {}
        }
        let ev = self.ev;
        let table = &*ev.table;
        let iv = table.intervals[ix];
        let u = &*ev.universe;
        let at = |c: &CExpr, t: usize| c.eval_with(&|i| u.value(s.at(t), i));
        let r = match &ev.nodes[id] {
            Node::Always(c) => iv.points().all(|t| at(c, t)),
            Node::Sometime(c) => iv.points().any(|t| at(c, t)),
            Node::Definitely(c, vars) => {
                iv.is_empty() || !exists_apparent(u, s, iv, c, vars, false)
            }
            Node::Possibly(c, vars) => !iv.is_empty() && exists_apparent(u, s, iv, c, vars, true),
            Node::Empty => iv.is_empty(),
            Node::Infinite => table.infinite[ix],
            Node::Finite => !iv.is_empty() && !table.infinite[ix],
            Node::Lit(b) => *b,
            Node::NonEmpty(a) => !iv.is_empty() && self.eval(*a, ix, s),
            Node::Not(a) => !self.eval(*a, ix, s),
            Node::And(a, b) => self.eval(*a, ix, s) && self.eval(*b, ix, s),
            Node::Or(a, b) => self.eval(*a, ix, s) || self.eval(*b, ix, s),
            Node::Chop(a, b) => {
                let (a, b) = (*a, *b);
                table.splits[ix]
                    .iter()
                    .any(|&(i1, i2)| self.eval(a, i1, s) && self.eval(b, i2, s))
                    || (table.infinite[ix] && self.eval(a, ix, s))
            }
            Node::Omega(g) => {
                let g = *g;
                self.fixpoint(id, g, s);
                return self.memo[slot] == TRUE;
            }
            Node::Prev(a) => {
                let a = *a;
                table.preceders[ix].iter().any(|&p| self.eval(a, p, s))
            }
            // prev.c: some nonempty interval ending right before Δ satisfies
            // □c, which holds iff the point just before Δ satisfies c.
            Node::PrevHolds(c) => match iv {
                Interval::Empty => table.carrier.points().any(|t| at(c, t)),
                Interval::Range { lo, .. } => lo > 0 && at(c, lo - 1),
            },
            // stable.v: v keeps over Δ the value it had just before Δ.
            Node::Stable(vars) => match iv {
                Interval::Empty => true,
                Interval::Range { lo, hi } => {
                    vars.is_empty()
                        || lo > 0
                            && vars.iter().all(|&v| {
                                let k = s.cell(lo - 1, v);
                                (lo..=hi).all(|t| s.cell(t, v) == k)
                            })
                }
            },
        };
        self.memo[slot] = if r { TRUE } else { FALSE };
        r
    }

    fn fixpoint(&mut self, id: NodeId, g: NodeId, s: &Stream) {
        let table = self.ev.table.clone();
        let n = table.len();
        let gv: Vec<bool> = (0..n).map(|i| self.eval(g, i, s)).collect();
        let (z, rounds) = table.omega(&gv);
        self.stats.omega_runs += 1;
        self.stats.omega_max_rounds = self.stats.omega_max_rounds.max(rounds);
        let base = id * n;
        for (i, v) in z.into_iter().enumerate() {
            self.memo[base + i] = if v { TRUE } else { FALSE };
        }
    }
}

/// Whether some apparent state over `iv` gives `c` the value `want`. Only
/// the variables `vars` read by `c` are varied.
fn exists_apparent(
    u: &VarUniverse,
    s: &Stream,
    iv: Interval,
    c: &CExpr,
    vars: &[usize],
    want: bool,
) -> bool {
    let choices: Vec<Vec<u8>> = vars.iter().map(|&v| observed_values(s, iv, v)).collect();
    let mut cur = vec![0u8; vars.len()];
    let mut found = false;
    product(&choices, 0, &mut cur, &mut |vals| {
        let r = c.eval_with(&|i| {
            let k = vars.binary_search(&i).expect("variable of c");
            u.domain(i).get(vals[k])
        });
        if r == want {
            found = true;
        }
        !found
    });
    found
}

/// One-shot evaluation of `g` on `(iv, s)`.
pub fn eval(g: &IntvPred, iv: Interval, s: &Stream, carrier: &Carrier) -> Result<bool> {
    carrier.check(iv)?;
    let mut ev = PredEvaluator::new(s.universe_arc().clone(), *carrier);
    ev.check_stream(s)?;
    let id = ev.add(g)?;
    let mut session = ev.session();
    Ok(session.eval_at(id, iv, s))
}

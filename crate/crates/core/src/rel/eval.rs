use std::sync::Arc;

use crate::error::Result;
use crate::expr::{BoolExpr, Side};
use crate::pred::{IntvPred, NodeId, PredEvaluator, Session};
use crate::rel::IntvRel;
use crate::state::{Stream, StreamSpace, VarUniverse};
use crate::time::{Carrier, Interval, IntervalTable};

pub type RelNodeId = usize;

#[derive(Debug, Clone)]
enum Node {
    Always(BoolExpr<(Side, usize)>),
    NonEmpty(RelNodeId),
    And(RelNodeId, RelNodeId),
    Or(RelNodeId, RelNodeId),
    Not(RelNodeId),
    Chop(RelNodeId, RelNodeId),
    Compose(Box<Composition>),
    Proj1(NodeId),
    Proj2(NodeId),
    Lit(bool),
}

#[derive(Debug, Clone)]
struct Composition {
    first: RelEvaluator,
    first_id: RelNodeId,
    second: RelEvaluator,
    second_id: RelNodeId,
    space: StreamSpace,
    local: bool,
}

/// Compiled interval relations between a left and a right universe. The
/// embedded predicate evaluators also accept extra predicates, so callers can
/// evaluate relations and projections against shared memo tables.
#[derive(Debug, Clone)]
pub struct RelEvaluator {
    left: PredEvaluator,
    right: PredEvaluator,
    nodes: Vec<Node>,
    budget: u128,
}

impl RelEvaluator {
    /// `budget` bounds the intermediate streams a composition may enumerate.
    pub fn new(
        left: Arc<VarUniverse>,
        right: Arc<VarUniverse>,
        carrier: Carrier,
        budget: u128,
    ) -> Self {
        let table = Arc::new(IntervalTable::new(carrier));
        Self {
            left: PredEvaluator::with_table(left, table.clone()),
            right: PredEvaluator::with_table(right, table),
            nodes: Vec::new(),
            budget,
        }
    }

    pub fn table(&self) -> &Arc<IntervalTable> {
        self.left.table()
    }

    pub fn carrier(&self) -> &Carrier {
        self.left.carrier()
    }

    pub fn left_universe(&self) -> &Arc<VarUniverse> {
        self.left.universe()
    }

    pub fn right_universe(&self) -> &Arc<VarUniverse> {
        self.right.universe()
    }

    pub fn add_left(&mut self, g: &IntvPred) -> Result<NodeId> {
        self.left.add(g)
    }

    pub fn add_right(&mut self, g: &IntvPred) -> Result<NodeId> {
        self.right.add(g)
    }

    pub fn add(&mut self, r: &IntvRel) -> Result<RelNodeId> {
        let node = match r {
            IntvRel::Always(sr) => {
                Node::Always(sr.resolve_in(self.left.universe(), self.right.universe())?)
            }
            IntvRel::Lit(b) => Node::Lit(*b),
            IntvRel::NonEmpty(a) => Node::NonEmpty(self.add(a)?),
            IntvRel::Not(a) => Node::Not(self.add(a)?),
            IntvRel::And(a, b) => Node::And(self.add(a)?, self.add(b)?),
            IntvRel::Or(a, b) => Node::Or(self.add(a)?, self.add(b)?),
            IntvRel::Chop(a, b) => Node::Chop(self.add(a)?, self.add(b)?),
            IntvRel::Proj1(g) => Node::Proj1(self.left.add(g)?),
            IntvRel::Proj2(g) => Node::Proj2(self.right.add(g)?),
            IntvRel::Compose { first, second, mid } => {
                let carrier = *self.carrier();
                let space = StreamSpace::new(mid.clone(), carrier)?;
                space.check_budget(carrier.horizon(), self.budget, "intermediate streams")?;
                let mut f = RelEvaluator::new(
                    self.left.universe().clone(),
                    mid.clone(),
                    carrier,
                    self.budget,
                );
                let first_id = f.add(first)?;
                let mut s = RelEvaluator::new(
                    mid.clone(),
                    self.right.universe().clone(),
                    carrier,
                    self.budget,
                );
                let second_id = s.add(second)?;
                Node::Compose(Box::new(Composition {
                    first: f,
                    first_id,
                    second: s,
                    second_id,
                    space,
                    local: first.is_local() && second.is_local(),
                }))
            }
        };
        self.nodes.push(node);
        Ok(self.nodes.len() - 1)
    }

    pub fn session(&self) -> RelSession<'_> {
        RelSession {
            ev: self,
            left: self.left.session(),
            right: self.right.session(),
            memo: vec![0; self.nodes.len() * self.table().len()],
        }
    }

    pub fn check_streams(&self, y: &Stream, z: &Stream) -> Result<()> {
        self.left.check_stream(y)?;
        self.right.check_stream(z)
    }
}

/// Memo tables for one `(y, z)` pair. Reset the side whose stream changes.
pub struct RelSession<'e> {
    ev: &'e RelEvaluator,
    left: Session<'e>,
    right: Session<'e>,
    memo: Vec<u8>,
}

impl<'e> RelSession<'e> {
    pub fn reset(&mut self) {
        self.left.reset();
        self.right.reset();
        self.memo.fill(0);
    }

    pub fn reset_left(&mut self) {
        self.left.reset();
        self.memo.fill(0);
    }

    pub fn reset_right(&mut self) {
        self.right.reset();
        self.memo.fill(0);
    }

    /// The predicate session over the left stream.
    pub fn left(&mut self) -> &mut Session<'e> {
        &mut self.left
    }

    pub fn right(&mut self) -> &mut Session<'e> {
        &mut self.right
    }

    pub fn eval_at(&mut self, id: RelNodeId, iv: Interval, y: &Stream, z: &Stream) -> bool {
        let ix = self.ev.table().index_of(iv);
        self.eval(id, ix, y, z)
    }

    pub fn eval(&mut self, id: RelNodeId, ix: usize, y: &Stream, z: &Stream) -> bool {
        let table = self.ev.table();
        let slot = id * table.len() + ix;
        match self.memo[slot] {
            2 => return true,
            1 => return false,
            _ => {}
        }
        let ev = self.ev;
        let iv = table.intervals[ix];
        let r = match &ev.nodes[id] {
            Node::Always(r) => {
                let (lu, ru) = (ev.left.universe(), ev.right.universe());
                iv.points().all(|t| {
                    r.eval_with(&|(side, i)| match side {
                        Side::Left => lu.value(y.at(t), i),
                        Side::Right => ru.value(z.at(t), i),
                    })
                })
            }
            Node::Lit(b) => *b,
            Node::NonEmpty(a) => !iv.is_empty() && self.eval(*a, ix, y, z),
            Node::Not(a) => !self.eval(*a, ix, y, z),
            Node::And(a, b) => self.eval(*a, ix, y, z) && self.eval(*b, ix, y, z),
            Node::Or(a, b) => self.eval(*a, ix, y, z) || self.eval(*b, ix, y, z),
            Node::Chop(a, b) => {
                let (a, b) = (*a, *b);
                table.splits[ix]
                    .iter()
                    .any(|&(i1, i2)| self.eval(a, i1, y, z) && self.eval(b, i2, y, z))
                    || (table.infinite[ix] && self.eval(a, ix, y, z))
            }
            Node::Proj1(g) => self.left.eval(*g, ix, y),
            Node::Proj2(g) => self.right.eval(*g, ix, z),
            Node::Compose(c) => {
                let points: Vec<usize> = if c.local {
                    iv.points().collect()
                } else {
                    table.carrier.points().collect()
                };
                let mut s1 = c.first.session();
                let mut s2 = c.second.session();
                let base = c.space.base();
                !c.space.for_each_on(&base, &points, |w| {
                    s1.reset_right();
                    s2.reset_left();
                    !(s1.eval(c.first_id, ix, y, w) && s2.eval(c.second_id, ix, w, z))
                })
            }
        };
        self.memo[slot] = if r { 2 } else { 1 };
        r
    }
}

/// One-shot evaluation of `r` on `(iv, y, z)`.
pub fn eval_rel(
    r: &IntvRel,
    iv: Interval,
    y: &Stream,
    z: &Stream,
    carrier: &Carrier,
    budget: u128,
) -> Result<bool> {
    carrier.check(iv)?;
    let mut ev = RelEvaluator::new(
        y.universe_arc().clone(),
        z.universe_arc().clone(),
        *carrier,
        budget,
    );
    ev.check_streams(y, z)?;
    let id = ev.add(r)?;
    let mut session = ev.session();
    Ok(session.eval_at(id, iv, y, z))
}

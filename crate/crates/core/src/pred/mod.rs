//! Interval predicates: syntax, a memoizing evaluator, a naive reference
//! evaluator and validity checkers.

mod check;
mod eval;
mod naive;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::StatePred;

pub use check::{
    check_equivalent, check_joins, check_splits, check_valid_implication, normalize_guard,
};
pub use eval::{eval, EvalStats, NodeId, PredEvaluator, Session};
pub use naive::eval_naive;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IntvPred {
    /// `□c`
    Always(StatePred),
    /// `◇c`
    Sometime(StatePred),
    /// `⊡*c`: `c` holds in every apparent state.
    Definitely(StatePred),
    /// `⟡*c`: `c` holds in some apparent state.
    Possibly(StatePred),
    Empty,
    Finite,
    Infinite,
    NonEmpty(Box<IntvPred>),
    And(Box<IntvPred>, Box<IntvPred>),
    Or(Box<IntvPred>, Box<IntvPred>),
    Not(Box<IntvPred>),
    Chop(Box<IntvPred>, Box<IntvPred>),
    Omega(Box<IntvPred>),
    /// `⊖g`: `g` holds on some interval immediately before.
    Prev(Box<IntvPred>),
    /// `prev.c`
    PrevHolds(StatePred),
    Stable(String),
    StableSet(BTreeSet<String>),
    Lit(bool),
}

impl IntvPred {
    pub fn ne(g: IntvPred) -> Self {
        IntvPred::NonEmpty(Box::new(g))
    }

    pub fn and(a: IntvPred, b: IntvPred) -> Self {
        IntvPred::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: IntvPred, b: IntvPred) -> Self {
        IntvPred::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(g: IntvPred) -> Self {
        IntvPred::Not(Box::new(g))
    }

    pub fn implies(a: IntvPred, b: IntvPred) -> Self {
        IntvPred::or(IntvPred::not(a), b)
    }

    pub fn chop(a: IntvPred, b: IntvPred) -> Self {
        IntvPred::Chop(Box::new(a), Box::new(b))
    }

    pub fn omega(g: IntvPred) -> Self {
        IntvPred::Omega(Box::new(g))
    }

    pub fn prev(g: IntvPred) -> Self {
        IntvPred::Prev(Box::new(g))
    }

    /// Conjunction of `parts`, `true` when there are none.
    pub fn all(parts: impl IntoIterator<Item = IntvPred>) -> Self {
        let mut it = parts.into_iter();
        match it.next() {
            None => IntvPred::Lit(true),
            Some(first) => it.fold(first, IntvPred::and),
        }
    }

    pub fn any(parts: impl IntoIterator<Item = IntvPred>) -> Self {
        let mut it = parts.into_iter();
        match it.next() {
            None => IntvPred::Lit(false),
            Some(first) => it.fold(first, IntvPred::or),
        }
    }

    /// `NE □c`, the shape produced by an assignment.
    pub fn ne_always(c: StatePred) -> Self {
        IntvPred::ne(IntvPred::Always(c))
    }

    pub fn children(&self) -> Vec<&IntvPred> {
        match self {
            IntvPred::NonEmpty(g) | IntvPred::Not(g) | IntvPred::Omega(g) | IntvPred::Prev(g) => {
                vec![g]
            }
            IntvPred::And(a, b) | IntvPred::Or(a, b) | IntvPred::Chop(a, b) => vec![a, b],
            _ => vec![],
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// A term is local when its value on `(Δ, s)` depends only on the states
    /// of `s` inside `Δ`. Only the operators looking before `Δ` break this.
    pub fn is_local(&self) -> bool {
        match self {
            IntvPred::Prev(_)
            | IntvPred::PrevHolds(_)
            | IntvPred::Stable(_)
            | IntvPred::StableSet(_) => false,
            other => other.children().iter().all(|c| c.is_local()),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            IntvPred::Always(c)
            | IntvPred::Sometime(c)
            | IntvPred::Definitely(c)
            | IntvPred::Possibly(c)
            | IntvPred::PrevHolds(c) => out.extend(c.free_vars()),
            IntvPred::Stable(v) => {
                out.insert(v.clone());
            }
            IntvPred::StableSet(vs) => out.extend(vs.iter().cloned()),
            other => {
                for c in other.children() {
                    c.collect_vars(out);
                }
            }
        }
    }

    /// Renames variables with `f`, leaving the structure unchanged.
    pub fn rename(&self, f: &dyn Fn(&str) -> String) -> IntvPred {
        let sp = |c: &StatePred| rename_state(c, f);
        match self {
            IntvPred::Always(c) => IntvPred::Always(sp(c)),
            IntvPred::Sometime(c) => IntvPred::Sometime(sp(c)),
            IntvPred::Definitely(c) => IntvPred::Definitely(sp(c)),
            IntvPred::Possibly(c) => IntvPred::Possibly(sp(c)),
            IntvPred::PrevHolds(c) => IntvPred::PrevHolds(sp(c)),
            IntvPred::Stable(v) => IntvPred::Stable(f(v)),
            IntvPred::StableSet(vs) => IntvPred::StableSet(vs.iter().map(|v| f(v)).collect()),
            IntvPred::Empty => IntvPred::Empty,
            IntvPred::Finite => IntvPred::Finite,
            IntvPred::Infinite => IntvPred::Infinite,
            IntvPred::Lit(b) => IntvPred::Lit(*b),
            IntvPred::NonEmpty(g) => IntvPred::ne(g.rename(f)),
            IntvPred::Not(g) => IntvPred::not(g.rename(f)),
            IntvPred::Omega(g) => IntvPred::omega(g.rename(f)),
            IntvPred::Prev(g) => IntvPred::prev(g.rename(f)),
            IntvPred::And(a, b) => IntvPred::and(a.rename(f), b.rename(f)),
            IntvPred::Or(a, b) => IntvPred::or(a.rename(f), b.rename(f)),
            IntvPred::Chop(a, b) => IntvPred::chop(a.rename(f), b.rename(f)),
        }
    }
}

pub(crate) fn rename_state(c: &StatePred, f: &dyn Fn(&str) -> String) -> StatePred {
    use crate::expr::{BoolExpr, Operand};
    let op = |o: &Operand<String>| match o {
        Operand::Var(v) => Operand::Var(f(v)),
        Operand::Const(k) => Operand::Const(*k),
    };
    match c {
        BoolExpr::Const(b) => BoolExpr::Const(*b),
        BoolExpr::Var(v) => BoolExpr::Var(f(v)),
        BoolExpr::Cmp(a, o, b) => BoolExpr::Cmp(op(a), *o, op(b)),
        BoolExpr::Not(e) => BoolExpr::not(rename_state(e, f)),
        BoolExpr::And(a, b) => BoolExpr::and(rename_state(a, f), rename_state(b, f)),
        BoolExpr::Or(a, b) => BoolExpr::or(rename_state(a, f), rename_state(b, f)),
        BoolExpr::Iff(a, b) => BoolExpr::iff(rename_state(a, f), rename_state(b, f)),
    }
}

impl fmt::Display for IntvPred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntvPred::Always(c) => write!(f, "□({c})"),
            IntvPred::Sometime(c) => write!(f, "◇({c})"),
            IntvPred::Definitely(c) => write!(f, "⊡*({c})"),
            IntvPred::Possibly(c) => write!(f, "⟡*({c})"),
            IntvPred::Empty => write!(f, "empty"),
            IntvPred::Finite => write!(f, "finite"),
            IntvPred::Infinite => write!(f, "infinite"),
            IntvPred::NonEmpty(g) => write!(f, "NE {g}"),
            IntvPred::And(a, b) => write!(f, "({a} ∧ {b})"),
            IntvPred::Or(a, b) => write!(f, "({a} ∨ {b})"),
            IntvPred::Not(g) => write!(f, "¬{g}"),
            IntvPred::Chop(a, b) => write!(f, "({a} ; {b})"),
            IntvPred::Omega(g) => write!(f, "({g})^ω"),
            IntvPred::Prev(g) => write!(f, "⊖{g}"),
            IntvPred::PrevHolds(c) => write!(f, "prev({c})"),
            IntvPred::Stable(v) => write!(f, "stable({v})"),
            IntvPred::StableSet(vs) => {
                let names: Vec<&str> = vs.iter().map(String::as_str).collect();
                write!(f, "stable{{{}}}", names.join(", "))
            }
            IntvPred::Lit(b) => write!(f, "{b}"),
        }
    }
}

#[cfg(test)]
mod tests;

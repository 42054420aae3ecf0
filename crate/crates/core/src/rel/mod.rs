//! Interval relations: predicates over an interval and a pair of streams,
//! one over the left (abstract) universe and one over the right (concrete)
//! universe.

mod check;
mod eval;

use std::fmt;
use std::sync::Arc;

use crate::expr::StateRel;
use crate::pred::IntvPred;
use crate::state::VarUniverse;

pub use check::{check_rel_implication, rel_joins};
pub use eval::{eval_rel, RelEvaluator, RelNodeId, RelSession};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IntvRel {
    /// `□r`
    Always(StateRel),
    NonEmpty(Box<IntvRel>),
    And(Box<IntvRel>, Box<IntvRel>),
    Or(Box<IntvRel>, Box<IntvRel>),
    Not(Box<IntvRel>),
    /// Both streams are split at the same point.
    Chop(Box<IntvRel>, Box<IntvRel>),
    /// `R1 ∘ R2`: some stream over `mid` links the left stream through `R1`
    /// to the right stream through `R2`.
    Compose {
        first: Box<IntvRel>,
        second: Box<IntvRel>,
        mid: Arc<VarUniverse>,
    },
    /// `g⇃1`: `g` on the left stream.
    Proj1(IntvPred),
    /// `g⇃2`: `g` on the right stream.
    Proj2(IntvPred),
    Lit(bool),
}

impl IntvRel {
    pub fn ne(r: IntvRel) -> Self {
        IntvRel::NonEmpty(Box::new(r))
    }

    /// `NE □r`
    pub fn ne_always(r: StateRel) -> Self {
        IntvRel::ne(IntvRel::Always(r))
    }

    pub fn and(a: IntvRel, b: IntvRel) -> Self {
        IntvRel::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: IntvRel, b: IntvRel) -> Self {
        IntvRel::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: IntvRel) -> Self {
        IntvRel::Not(Box::new(a))
    }

    pub fn chop(a: IntvRel, b: IntvRel) -> Self {
        IntvRel::Chop(Box::new(a), Box::new(b))
    }

    pub fn compose(first: IntvRel, second: IntvRel, mid: Arc<VarUniverse>) -> Self {
        IntvRel::Compose {
            first: Box::new(first),
            second: Box::new(second),
            mid,
        }
    }

    /// Whether the value on `(Δ, y, z)` depends only on `y` and `z` inside
    /// `Δ`.
    pub fn is_local(&self) -> bool {
        match self {
            IntvRel::Always(_) | IntvRel::Lit(_) => true,
            IntvRel::Proj1(g) | IntvRel::Proj2(g) => g.is_local(),
            IntvRel::NonEmpty(a) | IntvRel::Not(a) => a.is_local(),
            IntvRel::And(a, b) | IntvRel::Or(a, b) | IntvRel::Chop(a, b) => {
                a.is_local() && b.is_local()
            }
            IntvRel::Compose { first, second, .. } => first.is_local() && second.is_local(),
        }
    }

    pub fn depth(&self) -> usize {
        1 + match self {
            IntvRel::Always(_) | IntvRel::Lit(_) => 0,
            IntvRel::Proj1(g) | IntvRel::Proj2(g) => g.depth(),
            IntvRel::NonEmpty(a) | IntvRel::Not(a) => a.depth(),
            IntvRel::And(a, b) | IntvRel::Or(a, b) | IntvRel::Chop(a, b) => {
                a.depth().max(b.depth())
            }
            IntvRel::Compose { first, second, .. } => first.depth().max(second.depth()),
        }
    }
}

impl fmt::Display for IntvRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntvRel::Always(r) => write!(f, "□({r})"),
            IntvRel::NonEmpty(a) => write!(f, "NE {a}"),
            IntvRel::And(a, b) => write!(f, "({a} ∧ {b})"),
            IntvRel::Or(a, b) => write!(f, "({a} ∨ {b})"),
            IntvRel::Not(a) => write!(f, "¬{a}"),
            IntvRel::Chop(a, b) => write!(f, "({a} ; {b})"),
            IntvRel::Compose { first, second, .. } => write!(f, "({first} ∘ {second})"),
            IntvRel::Proj1(g) => write!(f, "({g})⇃1"),
            IntvRel::Proj2(g) => write!(f, "({g})⇃2"),
            IntvRel::Lit(b) => write!(f, "{b}"),
        }
    }
}

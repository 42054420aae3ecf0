//! State predicates and state relations.
//!
//! Both are boolean expression trees over comparisons; they differ only in
//! how variables are referenced. A [`StatePred`] names variables of one
//! universe, a [`StateRel`] tags every variable with the side (left/abstract
//! or right/concrete) it belongs to.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{Value, ValueKind, VarUniverse};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn holds(self, a: Value, b: Value) -> bool {
        match self {
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
        }
    }

    /// The complementary comparison under a total order.
    pub fn complement(self) -> CmpOp {
        match self {
            CmpOp::Eq => CmpOp::Ne,
            CmpOp::Ne => CmpOp::Eq,
            CmpOp::Lt => CmpOp::Ge,
            CmpOp::Le => CmpOp::Gt,
            CmpOp::Gt => CmpOp::Le,
            CmpOp::Ge => CmpOp::Lt,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Operand<V> {
    Var(V),
    Const(Value),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoolExpr<V> {
    Const(bool),
    /// A boolean variable read as a predicate.
    Var(V),
    Cmp(Operand<V>, CmpOp, Operand<V>),
    Not(Box<BoolExpr<V>>),
    And(Box<BoolExpr<V>>, Box<BoolExpr<V>>),
    Or(Box<BoolExpr<V>>, Box<BoolExpr<V>>),
    Iff(Box<BoolExpr<V>>, Box<BoolExpr<V>>),
}

pub type StatePred = BoolExpr<String>;
pub type StateRel = BoolExpr<RelVar>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelVar {
    pub side: Side,
    pub name: String,
}

impl RelVar {
    pub fn left(name: &str) -> Self {
        RelVar {
            side: Side::Left,
            name: name.to_string(),
        }
    }

    pub fn right(name: &str) -> Self {
        RelVar {
            side: Side::Right,
            name: name.to_string(),
        }
    }
}

impl<V> BoolExpr<V> {
    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BoolExpr<V>) -> Self {
        BoolExpr::Not(Box::new(e))
    }

    pub fn and(a: BoolExpr<V>, b: BoolExpr<V>) -> Self {
        BoolExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: BoolExpr<V>, b: BoolExpr<V>) -> Self {
        BoolExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn iff(a: BoolExpr<V>, b: BoolExpr<V>) -> Self {
        BoolExpr::Iff(Box::new(a), Box::new(b))
    }

    pub fn cmp(a: Operand<V>, op: CmpOp, b: Operand<V>) -> Self {
        BoolExpr::Cmp(a, op, b)
    }

    pub fn all(parts: impl IntoIterator<Item = BoolExpr<V>>) -> Self {
        let mut it = parts.into_iter();
        match it.next() {
            None => BoolExpr::Const(true),
            Some(first) => it.fold(first, BoolExpr::and),
        }
    }

    /// Logical complement; comparisons are flipped instead of wrapped.
    pub fn negated(self) -> Self {
        match self {
            BoolExpr::Const(b) => BoolExpr::Const(!b),
            BoolExpr::Cmp(a, op, b) => BoolExpr::Cmp(a, op.complement(), b),
            BoolExpr::Not(e) => *e,
            other => BoolExpr::Not(Box::new(other)),
        }
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a V>) {
        match self {
            BoolExpr::Const(_) => {}
            BoolExpr::Var(v) => out.push(v),
            BoolExpr::Cmp(a, _, b) => {
                for o in [a, b] {
                    if let Operand::Var(v) = o {
                        out.push(v);
                    }
                }
            }
            BoolExpr::Not(e) => e.collect_vars(out),
            BoolExpr::And(a, b) | BoolExpr::Or(a, b) | BoolExpr::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn referenced(&self) -> Vec<&V> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    /// Resolves variable references and type-checks comparisons.
    pub(crate) fn compile<S: Copy>(
        &self,
        resolve: &dyn Fn(&V) -> Result<(S, ValueKind)>,
        show: &dyn Fn(&V) -> String,
    ) -> Result<BoolExpr<S>> {
        let operand = |o: &Operand<V>| -> Result<(Operand<S>, ValueKind)> {
            match o {
                Operand::Const(c) => Ok((Operand::Const(*c), c.kind())),
                Operand::Var(v) => {
                    let (s, k) = resolve(v)?;
                    Ok((Operand::Var(s), k))
                }
            }
        };
        Ok(match self {
            BoolExpr::Const(b) => BoolExpr::Const(*b),
            BoolExpr::Var(v) => {
                let (s, k) = resolve(v)?;
                if k != ValueKind::Bool {
                    return Err(Error::IllTyped(format!(
                        "`{}` is not boolean and cannot be used as a predicate",
                        show(v)
                    )));
                }
                BoolExpr::Var(s)
            }
            BoolExpr::Cmp(a, op, b) => {
                let (ca, ka) = operand(a)?;
                let (cb, kb) = operand(b)?;
                if ka != kb {
                    return Err(Error::IllTyped(format!(
                        "comparison between a boolean and a number: {} {} {}",
                        show_operand(a, show),
                        op.symbol(),
                        show_operand(b, show)
                    )));
                }
                if ka == ValueKind::Bool && !matches!(op, CmpOp::Eq | CmpOp::Ne) {
                    return Err(Error::IllTyped(format!(
                        "ordering comparison `{}` on booleans",
                        op.symbol()
                    )));
                }
                BoolExpr::Cmp(ca, *op, cb)
            }
            BoolExpr::Not(e) => BoolExpr::not(e.compile(resolve, show)?),
            BoolExpr::And(a, b) => {
                BoolExpr::and(a.compile(resolve, show)?, b.compile(resolve, show)?)
            }
            BoolExpr::Or(a, b) => {
                BoolExpr::or(a.compile(resolve, show)?, b.compile(resolve, show)?)
            }
            BoolExpr::Iff(a, b) => {
                BoolExpr::iff(a.compile(resolve, show)?, b.compile(resolve, show)?)
            }
        })
    }
}

fn show_operand<V>(o: &Operand<V>, show: &dyn Fn(&V) -> String) -> String {
    match o {
        Operand::Var(v) => show(v),
        Operand::Const(c) => c.to_string(),
    }
}

impl<S: Copy> BoolExpr<S> {
    /// Evaluates a resolved expression; `get` reads the current value of a
    /// slot.
    #[inline]
    pub(crate) fn eval_with(&self, get: &impl Fn(S) -> Value) -> bool {
        match self {
            BoolExpr::Const(b) => *b,
            BoolExpr::Var(s) => get(*s) == Value::Bool(true),
            BoolExpr::Cmp(a, op, b) => {
                let va = match a {
                    Operand::Var(s) => get(*s),
                    Operand::Const(c) => *c,
                };
                let vb = match b {
                    Operand::Var(s) => get(*s),
                    Operand::Const(c) => *c,
                };
                op.holds(va, vb)
            }
            BoolExpr::Not(e) => !e.eval_with(get),
            BoolExpr::And(a, b) => a.eval_with(get) && b.eval_with(get),
            BoolExpr::Or(a, b) => a.eval_with(get) || b.eval_with(get),
            BoolExpr::Iff(a, b) => a.eval_with(get) == b.eval_with(get),
        }
    }
}

impl StatePred {
    pub fn var(name: &str) -> Self {
        BoolExpr::Var(name.to_string())
    }

    pub fn var_cmp(name: &str, op: CmpOp, value: Value) -> Self {
        BoolExpr::Cmp(Operand::Var(name.to_string()), op, Operand::Const(value))
    }

    pub fn vars_cmp(a: &str, op: CmpOp, b: &str) -> Self {
        BoolExpr::Cmp(Operand::Var(a.to_string()), op, Operand::Var(b.to_string()))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        self.referenced().into_iter().cloned().collect()
    }

    pub(crate) fn resolve_in(&self, universe: &VarUniverse) -> Result<BoolExpr<usize>> {
        self.compile(
            &|n: &String| {
                let i = universe.resolve(n)?;
                Ok((i, universe.domain(i).kind()))
            },
            &|n: &String| n.clone(),
        )
    }

    /// Evaluates on a state given as domain indices of `universe`.
    pub fn eval(&self, universe: &VarUniverse, state: &[u8]) -> Result<bool> {
        let c = self.resolve_in(universe)?;
        Ok(c.eval_with(&|i| universe.value(state, i)))
    }
}

impl StateRel {
    pub fn left_var(name: &str) -> Self {
        BoolExpr::Var(RelVar::left(name))
    }

    pub fn right_var(name: &str) -> Self {
        BoolExpr::Var(RelVar::right(name))
    }

    /// `left.name = right.name` for every variable shared by both universes.
    pub fn identity_on(names: impl IntoIterator<Item = String>) -> Self {
        BoolExpr::all(names.into_iter().map(|n| {
            BoolExpr::Cmp(
                Operand::Var(RelVar::left(&n)),
                CmpOp::Eq,
                Operand::Var(RelVar::right(&n)),
            )
        }))
    }

    pub fn vars_on(&self, side: Side) -> BTreeSet<String> {
        self.referenced()
            .into_iter()
            .filter(|v| v.side == side)
            .map(|v| v.name.clone())
            .collect()
    }

    pub(crate) fn resolve_in(
        &self,
        left: &VarUniverse,
        right: &VarUniverse,
    ) -> Result<BoolExpr<(Side, usize)>> {
        self.compile(
            &|v: &RelVar| {
                let u = match v.side {
                    Side::Left => left,
                    Side::Right => right,
                };
                let i = u.resolve(&v.name)?;
                Ok(((v.side, i), u.domain(i).kind()))
            },
            &|v: &RelVar| v.to_string(),
        )
    }

    pub fn eval(
        &self,
        left: &VarUniverse,
        lstate: &[u8],
        right: &VarUniverse,
        rstate: &[u8],
    ) -> Result<bool> {
        let c = self.resolve_in(left, right)?;
        Ok(c.eval_with(&|(side, i)| match side {
            Side::Left => left.value(lstate, i),
            Side::Right => right.value(rstate, i),
        }))
    }
}

impl fmt::Display for RelVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Left => write!(f, "L.{}", self.name),
            Side::Right => write!(f, "R.{}", self.name),
        }
    }
}

impl<V: fmt::Display> fmt::Display for Operand<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Var(v) => write!(f, "{v}"),
            Operand::Const(c) => write!(f, "{c}"),
        }
    }
}

impl<V: fmt::Display> fmt::Display for BoolExpr<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolExpr::Const(b) => write!(f, "{b}"),
            BoolExpr::Var(v) => write!(f, "{v}"),
            BoolExpr::Cmp(a, op, b) => write!(f, "{a} {} {b}", op.symbol()),
            BoolExpr::Not(e) => match **e {
                BoolExpr::Const(_) | BoolExpr::Var(_) => write!(f, "!{e}"),
                _ => write!(f, "!({e})"),
            },
            BoolExpr::And(a, b) => write!(f, "({a} && {b})"),
            BoolExpr::Or(a, b) => write!(f, "({a} || {b})"),
            BoolExpr::Iff(a, b) => write!(f, "({a} <=> {b})"),
        }
    }
}

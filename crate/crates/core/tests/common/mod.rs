#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use ivdr_core::{
    BoolExpr, CmpOp, Domain, Init, IntvPred, IntvRel, Operand, RelVar, StatePred, StateRel,
    SystemSpec, Value, VarUniverse,
};

pub const BUDGET: u128 = 50_000_000;

pub fn ext() -> Domain {
    Domain::new(vec![Value::NegInf, Value::Int(0), Value::Int(1), Value::PosInf]).unwrap()
}

pub fn obs() -> Arc<VarUniverse> {
    Arc::new(
        VarUniverse::builder()
            .var("M", Domain::ints(0..=2))
            .build()
            .unwrap(),
    )
}

pub fn abs_vars() -> Arc<VarUniverse> {
    Arc::new(
        VarUniverse::builder()
            .boolean("grd")
            .boolean("b")
            .var("m", Domain::ints(0..=2))
            .build()
            .unwrap(),
    )
}

pub fn conc_vars() -> Arc<VarUniverse> {
    Arc::new(
        VarUniverse::builder()
            .var("u", ext())
            .var("v", ext())
            .var("m", Domain::ints(0..=2))
            .build()
            .unwrap(),
    )
}

fn k(n: i64) -> Value {
    Value::Int(n)
}

fn is(x: &str, v: Value) -> StatePred {
    StatePred::var_cmp(x, CmpOp::Eq, v)
}

fn not(c: StatePred) -> StatePred {
    BoolExpr::not(c)
}

fn u_lt_v() -> StatePred {
    StatePred::vars_cmp("u", CmpOp::Lt, "v")
}

fn zero_lt_u() -> StatePred {
    StatePred::cmp(Operand::Const(k(0)), CmpOp::Lt, Operand::Var("u".into()))
}

/// `guard ; body` for both branches of an `if`.
fn branch(guard: fn(StatePred) -> IntvPred, c: StatePred, then: IntvPred, other: IntvPred) -> IntvPred {
    IntvPred::or(
        IntvPred::chop(guard(c.clone()), then),
        IntvPred::chop(guard(not(c)), other),
    )
}

fn possibly(c: StatePred) -> IntvPred {
    IntvPred::Possibly(c)
}

fn sometime(c: StatePred) -> IntvPred {
    IntvPred::Sometime(c)
}

pub fn ap(guard: fn(StatePred) -> IntvPred) -> IntvPred {
    branch(
        guard,
        StatePred::var("grd"),
        IntvPred::ne_always(is("m", k(1))),
        IntvPred::ne_always(is("m", k(2))),
    )
}

pub fn aq(guard: fn(StatePred) -> IntvPred) -> IntvPred {
    IntvPred::or(
        IntvPred::chop(guard(StatePred::var("b")), IntvPred::ne_always(StatePred::var("grd"))),
        guard(not(StatePred::var("b"))),
    )
}

/// `cp`; `swapped` exchanges the two assignments.
pub fn cp(guard: fn(StatePred) -> IntvPred, swapped: bool) -> IntvPred {
    let (a, b) = if swapped { (2, 1) } else { (1, 2) };
    branch(
        guard,
        u_lt_v(),
        IntvPred::ne_always(is("m", k(a))),
        IntvPred::ne_always(is("m", k(b))),
    )
}

pub fn cq(guard: fn(StatePred) -> IntvPred) -> IntvPred {
    branch(
        guard,
        zero_lt_u(),
        IntvPred::ne_always(is("v", Value::PosInf)),
        IntvPred::ne_always(is("v", Value::NegInf)),
    )
}

pub fn abs_ip() -> IntvPred {
    IntvPred::and(ap(sometime), aq(sometime))
}

pub fn conc_ip() -> IntvPred {
    IntvPred::and(cp(sometime, false), cq(sometime))
}

/// The concrete environment keeps `u` fixed at a finite value.
pub fn rely() -> IntvPred {
    IntvPred::any([k(0), k(1)].into_iter().chain([Value::NegInf]).map(|v| IntvPred::Always(is("u", v))))
}

pub fn uv() -> StateRel {
    let l = |x: &str| Operand::Var(RelVar::left(x));
    let r = |x: &str| Operand::Var(RelVar::right(x));
    BoolExpr::all([
        BoolExpr::iff(
            BoolExpr::Var(RelVar::left("grd")),
            BoolExpr::cmp(r("u"), CmpOp::Lt, r("v")),
        ),
        BoolExpr::iff(
            BoolExpr::Var(RelVar::left("b")),
            BoolExpr::cmp(Operand::Const(k(0)), CmpOp::Lt, r("u")),
        ),
        BoolExpr::cmp(l("m"), CmpOp::Eq, r("m")),
    ])
}

pub fn ne_uv() -> IntvRel {
    IntvRel::ne_always(uv())
}

fn final_m() -> StateRel {
    BoolExpr::cmp(
        Operand::Var(RelVar::left("m")),
        CmpOp::Eq,
        Operand::Var(RelVar::right("M")),
    )
}

pub fn abstract_system() -> SystemSpec {
    SystemSpec::new(
        "Abs",
        obs(),
        abs_vars(),
        Init::Uniform(IntvPred::ne_always(not(StatePred::var("grd")))),
        BTreeMap::from([("ap".into(), ap(possibly)), ("aq".into(), aq(possibly))]),
        None,
        final_m(),
    )
    .unwrap()
}

pub fn concrete_system(swapped: bool) -> SystemSpec {
    let init = BoolExpr::and(
        StatePred::vars_cmp("v", CmpOp::Le, "u"),
        StatePred::var_cmp("u", CmpOp::Lt, Value::PosInf),
    );
    SystemSpec::new(
        if swapped { "Mutated" } else { "Conc" },
        obs(),
        conc_vars(),
        Init::Uniform(IntvPred::ne_always(init)),
        BTreeMap::from([
            ("cp".into(), cp(possibly, swapped)),
            ("cq".into(), cq(possibly)),
        ]),
        Some(rely()),
        final_m(),
    )
    .unwrap()
}

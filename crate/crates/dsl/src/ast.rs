//! Syntax tree of a specification file.

use crate::error::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub carrier: CarrierDecl,
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarrierDecl {
    pub horizon: usize,
    pub open: bool,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Observable(VarDecl),
    Universe(UniverseDecl),
    System(SystemDecl),
    Pred(PredDecl),
    Relation(RelDecl),
    Directive(Directive),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lit {
    Bool(bool),
    Int(i64),
    NegInf,
    PosInf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainDecl {
    Bool,
    Range(i64, i64),
    Values(Vec<Lit>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub domain: DomainDecl,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniverseDecl {
    pub name: String,
    pub vars: Vec<VarDecl>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Process {
    pub name: String,
    pub body: Stmt,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemDecl {
    pub name: String,
    pub vars: Vec<VarDecl>,
    pub init: PExpr,
    pub processes: Vec<Process>,
    pub rely: Option<PExpr>,
    pub finalisation: Expr,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredDecl {
    pub name: String,
    pub over: String,
    pub body: PExpr,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelDecl {
    pub name: String,
    pub from: String,
    pub to: String,
    pub body: RExpr,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Directive {
    Refinement {
        abs: String,
        conc: String,
        span: Span,
    },
    ForwardSim {
        abs: String,
        conc: String,
        rel: String,
        span: Span,
    },
    Simulates {
        rel: String,
        abs: PArg,
        conc: PArg,
        span: Span,
    },
    Obligations {
        abs: String,
        conc: String,
        rel: String,
        items: Vec<Obligation>,
        span: Span,
    },
}

/// A predicate argument of a directive: a name, or a parenthesized
/// expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PArg {
    Name(QName),
    Expr(PExpr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obligation {
    pub label: String,
    pub kind: ObligationKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObligationKind {
    Simulates(PArg, PArg),
    Vdash(PArg),
    Ref2(PArg, PArg),
    Initialisation,
    Finalisation,
    Implies(QName, PArg),
    Equivalent(QName, PArg),
    Splits(QName),
    Joins(QName),
}

/// A possibly qualified name, `x` or `Sys.x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QName {
    pub qual: Option<String>,
    pub name: String,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    And,
    Or,
    Implies,
    Iff,
}

/// State expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Lit(Lit, Span),
    Var(QName),
    Not(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Cmp(CmpOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modality {
    Always,
    Sometime,
    Definitely,
    Possibly,
    PrevHolds,
}

/// Interval predicate expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PExpr {
    Modal(Modality, Expr),
    Stable(Vec<String>, Span),
    Empty,
    Finite,
    Infinite,
    Lit(bool),
    Ref(QName),
    Not(Box<PExpr>),
    NonEmpty(Box<PExpr>),
    Prev(Box<PExpr>),
    Omega(Box<PExpr>),
    Bin(BinOp, Box<PExpr>, Box<PExpr>),
    Chop(Box<PExpr>, Box<PExpr>),
}

/// Interval relation expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RExpr {
    Always(Expr),
    Lit(bool),
    Left(PExpr),
    Right(PExpr),
    Ref(QName),
    Not(Box<RExpr>),
    NonEmpty(Box<RExpr>),
    Bin(BinOp, Box<RExpr>, Box<RExpr>),
    Chop(Box<RExpr>, Box<RExpr>),
}

/// Program statements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Guard(Expr),
    Assign(QName, Lit),
    Skip,
    Seq(Box<Stmt>, Box<Stmt>),
    Choice(Box<Stmt>, Box<Stmt>),
    If(Expr, Box<Stmt>, Box<Stmt>),
    Loop(Box<Stmt>),
}

impl SpecFile {
    pub fn systems(&self) -> impl Iterator<Item = &SystemDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::System(s) => Some(s),
            _ => None,
        })
    }

    pub fn relations(&self) -> impl Iterator<Item = &RelDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Relation(r) => Some(r),
            _ => None,
        })
    }

    pub fn directives(&self) -> impl Iterator<Item = &Directive> {
        self.items.iter().filter_map(|i| match i {
            Item::Directive(d) => Some(d),
            _ => None,
        })
    }
}

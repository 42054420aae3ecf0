//! Name resolution and translation of a parsed file into checker inputs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use ivdr_core::pred::PredEvaluator;
use ivdr_core::rel::RelEvaluator;
use ivdr_core::{
    BoolExpr, Carrier, Domain, Init, IntvPred, IntvRel, Operand, RelVar, SystemSpec, Value,
    VarUniverse,
};

use crate::ast::{self, *};
use crate::error::{DslError, Pos, Span};

/// Everything a file declares, resolved.
#[derive(Debug, Clone)]
pub struct Model {
    pub carrier: Carrier,
    pub obs: Arc<VarUniverse>,
    /// Universe declarations and the representation universe of every system.
    pub universes: BTreeMap<String, Arc<VarUniverse>>,
    pub systems: BTreeMap<String, SystemSpec>,
    pub preds: BTreeMap<String, NamedPred>,
    pub relations: BTreeMap<String, NamedRel>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedPred {
    pub over: String,
    pub pred: IntvPred,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedRel {
    pub from: String,
    pub to: String,
    pub rel: IntvRel,
}

/// One unit of work with its own verdict.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
}

#[derive(Debug, Clone)]
pub enum CheckKind {
    Refinement {
        abs: SystemSpec,
        conc: SystemSpec,
    },
    ForwardSim {
        rel: IntvRel,
        abs: SystemSpec,
        conc: SystemSpec,
    },
    Simulates {
        rel: IntvRel,
        abs: IntvPred,
        conc: IntvPred,
        left: Arc<VarUniverse>,
        right: Arc<VarUniverse>,
    },
    Vdash {
        rel: IntvRel,
        conc: IntvPred,
        left: Arc<VarUniverse>,
        right: Arc<VarUniverse>,
    },
    Ref2 {
        rel: IntvRel,
        abs: IntvPred,
        conc: IntvPred,
        left: Arc<VarUniverse>,
        right: Arc<VarUniverse>,
    },
    Initialisation {
        rel: IntvRel,
        abs: SystemSpec,
        conc: SystemSpec,
    },
    Finalisation {
        rel: IntvRel,
        abs: SystemSpec,
        conc: SystemSpec,
    },
    Implies {
        a: IntvPred,
        b: IntvPred,
        universe: Arc<VarUniverse>,
    },
    Equivalent {
        a: IntvPred,
        b: IntvPred,
        universe: Arc<VarUniverse>,
    },
    Splits {
        g: IntvPred,
        universe: Arc<VarUniverse>,
    },
    Joins {
        g: IntvPred,
        universe: Arc<VarUniverse>,
    },
}

impl CheckKind {
    pub fn label(&self) -> &'static str {
        match self {
            CheckKind::Refinement { .. } => "refinement",
            CheckKind::ForwardSim { .. } => "forward-sim",
            CheckKind::Simulates { .. } => "simulates",
            CheckKind::Vdash { .. } => "vdash",
            CheckKind::Ref2 { .. } => "ref2",
            CheckKind::Initialisation { .. } => "initialisation",
            CheckKind::Finalisation { .. } => "finalisation",
            CheckKind::Implies { .. } => "implies",
            CheckKind::Equivalent { .. } => "equivalent",
            CheckKind::Splits { .. } => "splits",
            CheckKind::Joins { .. } => "joins",
        }
    }
}

impl Model {
    /// A predicate by name: a declared predicate, a system (its whole
    /// behaviour) or a process `Sys.p`. Returns the predicate and the
    /// universe it ranges over.
    pub fn lookup_pred(&self, name: &str) -> Option<(Arc<VarUniverse>, IntvPred)> {
        if let Some((sys, p)) = name.split_once('.') {
            let s = self.systems.get(sys)?;
            return Some((s.rep.clone(), s.ops.get(p)?.clone()));
        }
        if let Some(p) = self.preds.get(name) {
            return Some((self.universes[&p.over].clone(), p.pred.clone()));
        }
        let s = self.systems.get(name)?;
        Some((s.rep.clone(), s.behaviour()))
    }
}

/// Translates a statement into the interval predicate describing its
/// behaviour. `resolve` maps each assigned or read variable to its name in
/// the target universe.
pub fn compile_program(
    s: &Stmt,
    resolve: &dyn Fn(&QName) -> Result<String, DslError>,
) -> Result<IntvPred, DslError> {
    Ok(match s {
        Stmt::Guard(c) => IntvPred::Possibly(state_expr(c, resolve)?),
        Stmt::Assign(x, k) => {
            let x = resolve(x)?;
            let c = match k {
                ast::Lit::Bool(true) => BoolExpr::Var(x),
                ast::Lit::Bool(false) => BoolExpr::not(BoolExpr::Var(x)),
                k => BoolExpr::cmp(
                    Operand::Var(x),
                    ivdr_core::CmpOp::Eq,
                    Operand::Const(value(*k)),
                ),
            };
            IntvPred::ne_always(c)
        }
        Stmt::Skip => IntvPred::Empty,
        Stmt::Seq(a, b) => seq(compile_program(a, resolve)?, compile_program(b, resolve)?),
        Stmt::Choice(a, b) => IntvPred::or(compile_program(a, resolve)?, compile_program(b, resolve)?),
        Stmt::If(c, a, b) => {
            let c = state_expr(c, resolve)?;
            IntvPred::or(
                seq(IntvPred::Possibly(c.clone()), compile_program(a, resolve)?),
                seq(IntvPred::Possibly(BoolExpr::not(c)), compile_program(b, resolve)?),
            )
        }
        Stmt::Loop(a) => IntvPred::omega(compile_program(a, resolve)?),
    })
}

/// Chop, dropping an `empty` operand since it is a unit.
fn seq(a: IntvPred, b: IntvPred) -> IntvPred {
    match (a, b) {
        (IntvPred::Empty, g) | (g, IntvPred::Empty) => g,
        (a, b) => IntvPred::chop(a, b),
    }
}

pub fn value(l: ast::Lit) -> Value {
    match l {
        ast::Lit::Bool(b) => Value::Bool(b),
        ast::Lit::Int(n) => Value::Int(n),
        ast::Lit::NegInf => Value::NegInf,
        ast::Lit::PosInf => Value::PosInf,
    }
}

fn core_cmp(op: ast::CmpOp) -> ivdr_core::CmpOp {
    use ivdr_core::CmpOp as C;
    match op {
        ast::CmpOp::Eq => C::Eq,
        ast::CmpOp::Ne => C::Ne,
        ast::CmpOp::Lt => C::Lt,
        ast::CmpOp::Le => C::Le,
        ast::CmpOp::Gt => C::Gt,
        ast::CmpOp::Ge => C::Ge,
    }
}

fn expr_pos(e: &Expr) -> Pos {
    match e {
        Expr::Lit(_, s) => s.0,
        Expr::Var(q) => q.span.0,
        Expr::Not(a) | Expr::Bin(_, a, _) | Expr::Cmp(_, a, _) => expr_pos(a),
    }
}

fn state_expr<V>(
    e: &Expr,
    resolve: &dyn Fn(&QName) -> Result<V, DslError>,
) -> Result<BoolExpr<V>, DslError> {
    Ok(match e {
        Expr::Lit(ast::Lit::Bool(b), _) => BoolExpr::Const(*b),
        Expr::Lit(l, span) => {
            return Err(DslError::resolution(
                span.0,
                format!("`{}` is a number, not a condition", crate::pretty::lit(l)),
            ))
        }
        Expr::Var(q) => BoolExpr::Var(resolve(q)?),
        Expr::Not(a) => BoolExpr::not(state_expr(a, resolve)?),
        Expr::Bin(op, a, b) => {
            let (a, b) = (state_expr(a, resolve)?, state_expr(b, resolve)?);
            match op {
                BinOp::And => BoolExpr::and(a, b),
                BinOp::Or => BoolExpr::or(a, b),
                BinOp::Implies => BoolExpr::or(BoolExpr::not(a), b),
                BinOp::Iff => BoolExpr::iff(a, b),
            }
        }
        Expr::Cmp(op, a, b) => {
            let operand = |e: &Expr| -> Result<Operand<V>, DslError> {
                match e {
                    Expr::Lit(l, _) => Ok(Operand::Const(value(*l))),
                    Expr::Var(q) => Ok(Operand::Var(resolve(q)?)),
                    other => Err(DslError::unsupported(
                        expr_pos(other),
                        "comparison operands must be variables or literals",
                    )),
                }
            };
            BoolExpr::cmp(operand(a)?, core_cmp(*op), operand(b)?)
        }
    })
}

fn domain(v: &ast::VarDecl) -> Result<Domain, DslError> {
    let bad = |m: String| DslError::resolution(v.span.0, format!("variable `{}`: {m}", v.name));
    match &v.domain {
        DomainDecl::Bool => Ok(Domain::boolean()),
        DomainDecl::Range(lo, hi) if lo <= hi => Ok(Domain::ints(*lo..=*hi)),
        DomainDecl::Range(lo, hi) => Err(bad(format!("empty range {lo} .. {hi}"))),
        DomainDecl::Values(vs) => {
            Domain::new(vs.iter().map(|l| value(*l)).collect()).map_err(|e| bad(e.to_string()))
        }
    }
}

fn universe(vars: &[ast::VarDecl]) -> Result<Arc<VarUniverse>, DslError> {
    let mut seen: BTreeMap<&str, Pos> = BTreeMap::new();
    let mut out = Vec::new();
    for v in vars {
        if let Some(first) = seen.insert(&v.name, v.span.0) {
            return Err(DslError::resolution(
                v.span.0,
                format!(
                    "variable `{}` declared twice, at {first} and at {}",
                    v.name, v.span.0
                ),
            ));
        }
        out.push((v.name.clone(), domain(v)?));
    }
    VarUniverse::new(out)
        .map(Arc::new)
        .map_err(|e| DslError::resolution(vars[0].span.0, e.to_string()))
}

/// Resolves and translates every declaration of `spec`.
pub fn elaborate(spec: &SpecFile) -> Result<Model, DslError> {
    Elab::new(spec)?.run()
}

#[derive(Clone, Copy)]
enum Decl<'a> {
    Universe(&'a UniverseDecl),
    System(&'a SystemDecl),
    Pred(&'a PredDecl),
    Relation(&'a RelDecl),
}

struct Elab<'a> {
    spec: &'a SpecFile,
    carrier: Carrier,
    obs: Arc<VarUniverse>,
    decls: BTreeMap<&'a str, (Decl<'a>, Pos)>,
    universes: BTreeMap<String, Arc<VarUniverse>>,
    processes: BTreeMap<String, BTreeMap<String, IntvPred>>,
    preds: BTreeMap<String, IntvPred>,
    relies: BTreeMap<String, Option<IntvPred>>,
    relations: BTreeMap<String, IntvRel>,
    /// Predicates and relies under resolution, for cycle detection.
    visiting: Vec<String>,
}

impl<'a> Elab<'a> {
    fn new(spec: &'a SpecFile) -> Result<Self, DslError> {
        let carrier = Carrier::new(spec.carrier.horizon, spec.carrier.open)
            .map_err(|e| DslError::resolution(spec.carrier.span.0, e.to_string()))?;
        let observables: Vec<ast::VarDecl> = spec
            .items
            .iter()
            .filter_map(|i| match i {
                Item::Observable(v) => Some(v.clone()),
                _ => None,
            })
            .collect();
        let obs = if observables.is_empty() {
            Arc::new(VarUniverse::empty())
        } else {
            universe(&observables)?
        };
        let mut decls: BTreeMap<&str, (Decl, Pos)> = BTreeMap::new();
        for item in &spec.items {
            let (name, d, pos) = match item {
                Item::Universe(u) => (&u.name, Decl::Universe(u), u.span.0),
                Item::System(s) => (&s.name, Decl::System(s), s.span.0),
                Item::Pred(p) => (&p.name, Decl::Pred(p), p.span.0),
                Item::Relation(r) => (&r.name, Decl::Relation(r), r.span.0),
                _ => continue,
            };
            if let Some((_, first)) = decls.insert(name, (d, pos)) {
                return Err(DslError::resolution(
                    pos,
                    format!("`{name}` declared twice, at {first} and at {pos}"),
                ));
            }
        }
        Ok(Self {
            spec,
            carrier,
            obs,
            decls,
            universes: BTreeMap::new(),
            processes: BTreeMap::new(),
            preds: BTreeMap::new(),
            relies: BTreeMap::new(),
            relations: BTreeMap::new(),
            visiting: Vec::new(),
        })
    }

    fn run(mut self) -> Result<Model, DslError> {
        let decls: Vec<(Decl, Pos)> = self.decls.values().copied().collect();
        for (d, _) in &decls {
            match d {
                Decl::Universe(u) => {
                    let vars = universe(&u.vars)?;
                    self.universes.insert(u.name.clone(), vars);
                }
                Decl::System(s) => {
                    if s.vars.is_empty() {
                        return Err(DslError::resolution(
                            s.span.0,
                            format!("system `{}` declares no variables", s.name),
                        ));
                    }
                    let vars = universe(&s.vars)?;
                    if let Some(v) = s.vars.iter().find(|v| self.obs.contains(&v.name)) {
                        return Err(DslError::resolution(
                            v.span.0,
                            format!("`{}` is already an observable", v.name),
                        ));
                    }
                    self.universes.insert(s.name.clone(), vars);
                }
                _ => {}
            }
        }
        for (d, _) in &decls {
            if let Decl::System(s) = d {
                let mut ops = BTreeMap::new();
                for p in &s.processes {
                    let resolve = |q: &QName| self.scoped_var(&s.name, q);
                    let g = compile_program(&p.body, &resolve)?;
                    if ops.insert(p.name.clone(), g).is_some() {
                        return Err(DslError::resolution(
                            p.span.0,
                            format!("process `{}` declared twice in `{}`", p.name, s.name),
                        ));
                    }
                }
                self.processes.insert(s.name.clone(), ops);
            }
        }
        for (d, _) in &decls {
            match d {
                Decl::Pred(p) => {
                    self.pred(&p.name, p.span.0)?;
                }
                Decl::System(s) => {
                    self.rely(s)?;
                }
                Decl::Relation(r) => {
                    self.relation(&r.name, r.span.0)?;
                }
                Decl::Universe(_) => {}
            }
        }
        let mut systems = BTreeMap::new();
        for (d, _) in &decls {
            if let Decl::System(s) = d {
                systems.insert(s.name.clone(), self.system(s)?);
            }
        }
        let mut checks = Vec::new();
        for d in self.spec.directives() {
            self.directive(d, &systems, &mut checks)?;
        }
        let preds = self
            .preds
            .iter()
            .map(|(name, g)| {
                let Some((Decl::Pred(p), _)) = self.decls.get(name.as_str()) else {
                    unreachable!("only declared predicates are memoized")
                };
                (
                    name.clone(),
                    NamedPred {
                        over: p.over.clone(),
                        pred: g.clone(),
                    },
                )
            })
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|(name, r)| {
                let Some((Decl::Relation(d), _)) = self.decls.get(name.as_str()) else {
                    unreachable!("only declared relations are memoized")
                };
                (
                    name.clone(),
                    NamedRel {
                        from: d.from.clone(),
                        to: d.to.clone(),
                        rel: r.clone(),
                    },
                )
            })
            .collect();
        Ok(Model {
            carrier: self.carrier,
            obs: self.obs,
            universes: self.universes,
            systems,
            preds,
            relations,
            checks,
        })
    }

    fn scope(&self, name: &str, pos: Pos) -> Result<Arc<VarUniverse>, DslError> {
        self.universes.get(name).cloned().ok_or_else(|| {
            DslError::resolution(pos, format!("`{name}` is not a universe or a system"))
        })
    }

    /// A variable of the universe `scope`, optionally qualified by it.
    fn scoped_var(&self, scope: &str, q: &QName) -> Result<String, DslError> {
        if let Some(qual) = &q.qual {
            if qual != scope {
                return Err(DslError::resolution(
                    q.span.0,
                    format!("`{qual}.{}` is outside `{scope}`", q.name),
                ));
            }
        }
        let u = &self.universes[scope];
        if u.contains(&q.name) {
            Ok(q.name.clone())
        } else {
            Err(DslError::resolution(
                q.span.0,
                format!("`{scope}` has no variable `{}`", q.name),
            ))
        }
    }

    fn enter(&mut self, key: String, pos: Pos) -> Result<(), DslError> {
        if self.visiting.contains(&key) {
            let mut cycle = self.visiting.clone();
            cycle.push(key);
            return Err(DslError::resolution(
                pos,
                format!("circular definition: {}", cycle.join(" -> ")),
            ));
        }
        self.visiting.push(key);
        Ok(())
    }

    fn pred(&mut self, name: &str, pos: Pos) -> Result<IntvPred, DslError> {
        if let Some(g) = self.preds.get(name) {
            return Ok(g.clone());
        }
        let Some((Decl::Pred(p), _)) = self.decls.get(name).copied() else {
            return Err(DslError::resolution(
                pos,
                format!("`{name}` is not a predicate"),
            ));
        };
        let u = self.scope(&p.over, p.span.0)?;
        self.enter(name.to_string(), pos)?;
        let g = self.pexpr(&p.body, &p.over)?;
        self.visiting.pop();
        PredEvaluator::new(u, self.carrier)
            .add(&g)
            .map_err(|e| DslError::resolution(p.span.0, format!("predicate `{name}`: {e}")))?;
        self.preds.insert(name.to_string(), g.clone());
        Ok(g)
    }

    fn rely(&mut self, s: &SystemDecl) -> Result<Option<IntvPred>, DslError> {
        if let Some(r) = self.relies.get(&s.name) {
            return Ok(r.clone());
        }
        let r = match &s.rely {
            None => None,
            Some(e) => {
                self.enter(format!("{}.rely", s.name), s.span.0)?;
                let g = self.pexpr(e, &s.name)?;
                self.visiting.pop();
                Some(g)
            }
        };
        self.relies.insert(s.name.clone(), r.clone());
        Ok(r)
    }

    fn behaviour(&mut self, s: &SystemDecl) -> Result<IntvPred, DslError> {
        let ops: Vec<IntvPred> = self.processes[&s.name].values().cloned().collect();
        let rely = self.rely(s)?;
        Ok(IntvPred::all(ops.into_iter().chain(rely)))
    }

    /// A named predicate over `scope`: a declared predicate, a process of the
    /// system `scope`, or that system's behaviour.
    fn pred_ref(&mut self, q: &QName, scope: &str) -> Result<IntvPred, DslError> {
        let pos = q.span.0;
        if let Some(qual) = &q.qual {
            if qual != scope {
                return Err(DslError::resolution(
                    pos,
                    format!("`{qual}.{}` is outside `{scope}`", q.name),
                ));
            }
            return self
                .processes
                .get(qual)
                .and_then(|ops| ops.get(&q.name))
                .cloned()
                .ok_or_else(|| {
                    DslError::resolution(pos, format!("`{qual}` has no process `{}`", q.name))
                });
        }
        match self.decls.get(q.name.as_str()).copied() {
            Some((Decl::Pred(p), _)) => {
                if p.over != scope {
                    return Err(DslError::resolution(
                        pos,
                        format!("`{}` ranges over `{}`, not `{scope}`", q.name, p.over),
                    ));
                }
                self.pred(&q.name, pos)
            }
            Some((Decl::System(s), _)) if s.name == scope => self.behaviour(s),
            _ => {
                if let Some(g) = self.processes.get(scope).and_then(|ops| ops.get(&q.name)) {
                    return Ok(g.clone());
                }
                Err(DslError::resolution(
                    pos,
                    format!("no predicate or process `{}` over `{scope}`", q.name),
                ))
            }
        }
    }

    fn pexpr(&mut self, e: &PExpr, scope: &str) -> Result<IntvPred, DslError> {
        Ok(match e {
            PExpr::Modal(m, c) => {
                let c = state_expr(c, &|q: &QName| self.scoped_var(scope, q))?;
                match m {
                    Modality::Always => IntvPred::Always(c),
                    Modality::Sometime => IntvPred::Sometime(c),
                    Modality::Definitely => IntvPred::Definitely(c),
                    Modality::Possibly => IntvPred::Possibly(c),
                    Modality::PrevHolds => IntvPred::PrevHolds(c),
                }
            }
            PExpr::Stable(names, span) => {
                for n in names {
                    let q = QName {
                        qual: None,
                        name: n.clone(),
                        span: *span,
                    };
                    self.scoped_var(scope, &q)?;
                }
                match names.as_slice() {
                    [one] => IntvPred::Stable(one.clone()),
                    many => IntvPred::StableSet(many.iter().cloned().collect::<BTreeSet<_>>()),
                }
            }
            PExpr::Empty => IntvPred::Empty,
            PExpr::Finite => IntvPred::Finite,
            PExpr::Infinite => IntvPred::Infinite,
            PExpr::Lit(b) => IntvPred::Lit(*b),
            PExpr::Ref(q) => self.pred_ref(q, scope)?,
            PExpr::Not(a) => IntvPred::not(self.pexpr(a, scope)?),
            PExpr::NonEmpty(a) => IntvPred::ne(self.pexpr(a, scope)?),
            PExpr::Prev(a) => IntvPred::prev(self.pexpr(a, scope)?),
            PExpr::Omega(a) => IntvPred::omega(self.pexpr(a, scope)?),
            PExpr::Bin(op, a, b) => {
                let (a, b) = (self.pexpr(a, scope)?, self.pexpr(b, scope)?);
                match op {
                    BinOp::And => IntvPred::and(a, b),
                    BinOp::Or => IntvPred::or(a, b),
                    BinOp::Implies => IntvPred::implies(a, b),
                    BinOp::Iff => IntvPred::and(
                        IntvPred::implies(a.clone(), b.clone()),
                        IntvPred::implies(b, a),
                    ),
                }
            }
            PExpr::Chop(a, b) => IntvPred::chop(self.pexpr(a, scope)?, self.pexpr(b, scope)?),
        })
    }

    fn relation(&mut self, name: &str, pos: Pos) -> Result<IntvRel, DslError> {
        if let Some(r) = self.relations.get(name) {
            return Ok(r.clone());
        }
        let Some((Decl::Relation(d), _)) = self.decls.get(name).copied() else {
            return Err(DslError::resolution(
                pos,
                format!("`{name}` is not a relation"),
            ));
        };
        let left = self.scope(&d.from, d.span.0)?;
        let right = self.scope(&d.to, d.span.0)?;
        if d.from == d.to {
            return Err(DslError::unsupported(
                d.span.0,
                "a relation needs two distinct universes",
            ));
        }
        self.enter(name.to_string(), pos)?;
        let r = self.rexpr(&d.body, d)?;
        self.visiting.pop();
        RelEvaluator::new(left, right, self.carrier, 1)
            .add(&r)
            .map_err(|e| DslError::resolution(d.span.0, format!("relation `{name}`: {e}")))?;
        self.relations.insert(name.to_string(), r.clone());
        Ok(r)
    }

    fn rel_var(&self, d: &RelDecl, q: &QName) -> Result<RelVar, DslError> {
        let (l, r) = (&self.universes[&d.from], &self.universes[&d.to]);
        let side = match &q.qual {
            Some(s) if *s == d.from => l.contains(&q.name).then_some(true),
            Some(s) if *s == d.to => r.contains(&q.name).then_some(false),
            Some(s) => {
                return Err(DslError::resolution(
                    q.span.0,
                    format!("`{s}` is neither `{}` nor `{}`", d.from, d.to),
                ))
            }
            None => match (l.contains(&q.name), r.contains(&q.name)) {
                (true, true) => {
                    return Err(DslError::resolution(
                        q.span.0,
                        format!(
                            "`{}` is ambiguous: write `{}.{n}` or `{}.{n}`",
                            q.name,
                            d.from,
                            d.to,
                            n = q.name
                        ),
                    ))
                }
                (true, false) => Some(true),
                (false, true) => Some(false),
                (false, false) => None,
            },
        };
        match side {
            Some(true) => Ok(RelVar::left(&q.name)),
            Some(false) => Ok(RelVar::right(&q.name)),
            None => Err(DslError::resolution(
                q.span.0,
                format!("unknown variable `{}`", crate::pretty::qname(q)),
            )),
        }
    }

    fn rexpr(&mut self, e: &RExpr, d: &RelDecl) -> Result<IntvRel, DslError> {
        Ok(match e {
            RExpr::Always(c) => IntvRel::Always(state_expr(c, &|q: &QName| self.rel_var(d, q))?),
            RExpr::Lit(b) => IntvRel::Lit(*b),
            RExpr::Left(p) => IntvRel::Proj1(self.pexpr(p, &d.from)?),
            RExpr::Right(p) => IntvRel::Proj2(self.pexpr(p, &d.to)?),
            RExpr::Ref(q) => {
                let other = match self.decls.get(q.name.as_str()).copied() {
                    Some((Decl::Relation(o), _)) if q.qual.is_none() => o,
                    _ => {
                        return Err(DslError::resolution(
                            q.span.0,
                            format!("`{}` is not a relation", crate::pretty::qname(q)),
                        ))
                    }
                };
                if other.from != d.from || other.to != d.to {
                    return Err(DslError::resolution(
                        q.span.0,
                        format!(
                            "`{}` relates `{}` to `{}`, not `{}` to `{}`",
                            q.name, other.from, other.to, d.from, d.to
                        ),
                    ));
                }
                self.relation(&q.name, q.span.0)?
            }
            RExpr::Not(a) => IntvRel::not(self.rexpr(a, d)?),
            RExpr::NonEmpty(a) => IntvRel::ne(self.rexpr(a, d)?),
            RExpr::Bin(op, a, b) => {
                let (a, b) = (self.rexpr(a, d)?, self.rexpr(b, d)?);
                match op {
                    BinOp::And => IntvRel::and(a, b),
                    BinOp::Or => IntvRel::or(a, b),
                    BinOp::Implies => IntvRel::or(IntvRel::not(a), b),
                    BinOp::Iff => IntvRel::and(
                        IntvRel::or(IntvRel::not(a.clone()), b.clone()),
                        IntvRel::or(IntvRel::not(b), a),
                    ),
                }
            }
            RExpr::Chop(a, b) => IntvRel::chop(self.rexpr(a, d)?, self.rexpr(b, d)?),
        })
    }

    fn system(&mut self, s: &SystemDecl) -> Result<SystemSpec, DslError> {
        let rep = self.universes[&s.name].clone();
        let init = self.pexpr(&s.init, &s.name)?;
        let rely = self.rely(s)?;
        let fin = state_expr(&s.finalisation, &|q: &QName| {
            if q.qual.is_none() && self.obs.contains(&q.name) {
                Ok(RelVar::right(&q.name))
            } else {
                self.scoped_var(&s.name, q).map(|n| RelVar::left(&n))
            }
        })?;
        SystemSpec::new(
            &s.name,
            self.obs.clone(),
            rep,
            Init::Uniform(init),
            self.processes[&s.name].clone(),
            rely,
            fin,
        )
        .map_err(|e| DslError::resolution(s.span.0, e.to_string()))
    }

    fn system_named(
        &self,
        systems: &BTreeMap<String, SystemSpec>,
        name: &str,
        pos: Pos,
    ) -> Result<SystemSpec, DslError> {
        systems
            .get(name)
            .cloned()
            .ok_or_else(|| DslError::resolution(pos, format!("`{name}` is not a system")))
    }

    fn parg(&mut self, a: &PArg, scope: &str) -> Result<IntvPred, DslError> {
        match a {
            PArg::Name(q) => self.pred_ref(q, scope),
            PArg::Expr(e) => self.pexpr(e, scope),
        }
    }

    /// The universe a named predicate ranges over.
    fn scope_of(&self, q: &QName) -> Result<String, DslError> {
        if let Some(s) = &q.qual {
            return Ok(s.clone());
        }
        match self.decls.get(q.name.as_str()) {
            Some((Decl::Pred(p), _)) => Ok(p.over.clone()),
            Some((Decl::System(s), _)) => Ok(s.name.clone()),
            _ => Err(DslError::resolution(
                q.span.0,
                format!("`{}` is not a predicate", q.name),
            )),
        }
    }

    fn rel_between(
        &mut self,
        rel: &str,
        abs: &str,
        conc: &str,
        span: Span,
    ) -> Result<IntvRel, DslError> {
        let r = self.relation(rel, span.0)?;
        let Some((Decl::Relation(d), _)) = self.decls.get(rel).copied() else {
            unreachable!()
        };
        if d.from != abs || d.to != conc {
            return Err(DslError::resolution(
                span.0,
                format!(
                    "`{rel}` relates `{}` to `{}`, not `{abs}` to `{conc}`",
                    d.from, d.to
                ),
            ));
        }
        Ok(r)
    }

    fn directive(
        &mut self,
        d: &Directive,
        systems: &BTreeMap<String, SystemSpec>,
        out: &mut Vec<Check>,
    ) -> Result<(), DslError> {
        match d {
            Directive::Refinement { abs, conc, span } => out.push(Check {
                name: format!("refinement {abs} {conc}"),
                kind: CheckKind::Refinement {
                    abs: self.system_named(systems, abs, span.0)?,
                    conc: self.system_named(systems, conc, span.0)?,
                },
            }),
            Directive::ForwardSim {
                abs,
                conc,
                rel,
                span,
            } => {
                let a = self.system_named(systems, abs, span.0)?;
                let c = self.system_named(systems, conc, span.0)?;
                out.push(Check {
                    name: format!("forward-sim {abs} {conc} {rel}"),
                    kind: CheckKind::ForwardSim {
                        rel: self.rel_between(rel, abs, conc, *span)?,
                        abs: a,
                        conc: c,
                    },
                });
            }
            Directive::Simulates {
                rel,
                abs,
                conc,
                span,
            } => {
                let r = self.relation(rel, span.0)?;
                let Some((Decl::Relation(rd), _)) = self.decls.get(rel.as_str()).copied() else {
                    unreachable!()
                };
                out.push(Check {
                    name: format!("simulates {rel}"),
                    kind: CheckKind::Simulates {
                        rel: r,
                        abs: self.parg(abs, &rd.from)?,
                        conc: self.parg(conc, &rd.to)?,
                        left: self.universes[&rd.from].clone(),
                        right: self.universes[&rd.to].clone(),
                    },
                });
            }
            Directive::Obligations {
                abs,
                conc,
                rel,
                items,
                span,
            } => {
                let a = self.system_named(systems, abs, span.0)?;
                let c = self.system_named(systems, conc, span.0)?;
                let r = self.rel_between(rel, abs, conc, *span)?;
                let (left, right) = (a.rep.clone(), c.rep.clone());
                for o in items {
                    let kind = match &o.kind {
                        ObligationKind::Simulates(g, h) => CheckKind::Simulates {
                            rel: r.clone(),
                            abs: self.parg(g, abs)?,
                            conc: self.parg(h, conc)?,
                            left: left.clone(),
                            right: right.clone(),
                        },
                        ObligationKind::Vdash(h) => CheckKind::Vdash {
                            rel: r.clone(),
                            conc: self.parg(h, conc)?,
                            left: left.clone(),
                            right: right.clone(),
                        },
                        ObligationKind::Ref2(g, h) => CheckKind::Ref2 {
                            rel: r.clone(),
                            abs: self.parg(g, abs)?,
                            conc: self.parg(h, conc)?,
                            left: left.clone(),
                            right: right.clone(),
                        },
                        ObligationKind::Initialisation => CheckKind::Initialisation {
                            rel: r.clone(),
                            abs: a.clone(),
                            conc: c.clone(),
                        },
                        ObligationKind::Finalisation => CheckKind::Finalisation {
                            rel: r.clone(),
                            abs: a.clone(),
                            conc: c.clone(),
                        },
                        ObligationKind::Implies(q, b) | ObligationKind::Equivalent(q, b) => {
                            let scope = self.scope_of(q)?;
                            let universe = self.scope(&scope, q.span.0)?;
                            let ga = self.pred_ref(q, &scope)?;
                            let gb = self.parg(b, &scope)?;
                            if matches!(o.kind, ObligationKind::Implies(..)) {
                                CheckKind::Implies {
                                    a: ga,
                                    b: gb,
                                    universe,
                                }
                            } else {
                                CheckKind::Equivalent {
                                    a: ga,
                                    b: gb,
                                    universe,
                                }
                            }
                        }
                        ObligationKind::Splits(q) | ObligationKind::Joins(q) => {
                            let scope = self.scope_of(q)?;
                            let universe = self.scope(&scope, q.span.0)?;
                            let g = self.pred_ref(q, &scope)?;
                            if matches!(o.kind, ObligationKind::Splits(_)) {
                                CheckKind::Splits { g, universe }
                            } else {
                                CheckKind::Joins { g, universe }
                            }
                        }
                    };
                    out.push(Check {
                        name: o.label.clone(),
                        kind,
                    });
                }
            }
        }
        Ok(())
    }
}

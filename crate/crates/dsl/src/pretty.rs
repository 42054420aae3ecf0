//! Fully parenthesized printer. Its output parses back to an equal tree.

use std::fmt::Write;

use crate::ast::*;

pub fn print_spec(f: &SpecFile) -> String {
    let mut out = format!(
        "carrier {} {}\n",
        f.carrier.horizon,
        if f.carrier.open { "open" } else { "closed" }
    );
    for item in &f.items {
        out.push('\n');
        item_to(&mut out, item);
    }
    out
}

fn item_to(out: &mut String, item: &Item) {
    match item {
        Item::Observable(v) => {
            let _ = writeln!(out, "observable {}", var_decl(v));
        }
        Item::Universe(u) => {
            let _ = writeln!(out, "universe {} {{", u.name);
            for v in &u.vars {
                let _ = writeln!(out, "  var {}", var_decl(v));
            }
            out.push_str("}\n");
        }
        Item::System(s) => {
            let _ = writeln!(out, "system {} {{", s.name);
            for v in &s.vars {
                let _ = writeln!(out, "  var {}", var_decl(v));
            }
            let _ = writeln!(out, "  init {}", pexpr(&s.init));
            for p in &s.processes {
                let _ = writeln!(out, "  process {} = {}", p.name, stmt(&p.body));
            }
            if let Some(r) = &s.rely {
                let _ = writeln!(out, "  rely {}", pexpr(r));
            }
            let _ = writeln!(out, "  final {}", expr(&s.finalisation));
            out.push_str("}\n");
        }
        Item::Pred(p) => {
            let _ = writeln!(out, "pred {} over {} = {}", p.name, p.over, pexpr(&p.body));
        }
        Item::Relation(r) => {
            let _ = writeln!(
                out,
                "relation {} : {} -> {} = {}",
                r.name,
                r.from,
                r.to,
                rexpr(&r.body)
            );
        }
        Item::Directive(d) => directive_to(out, d),
    }
}

fn directive_to(out: &mut String, d: &Directive) {
    match d {
        Directive::Refinement { abs, conc, .. } => {
            let _ = writeln!(out, "check refinement {abs} {conc}");
        }
        Directive::ForwardSim { abs, conc, rel, .. } => {
            let _ = writeln!(out, "check forward-sim {abs} {conc} {rel}");
        }
        Directive::Simulates { rel, abs, conc, .. } => {
            let _ = writeln!(out, "check simulates {rel} {} {}", parg(abs), parg(conc));
        }
        Directive::Obligations {
            abs,
            conc,
            rel,
            items,
            ..
        } => {
            let _ = writeln!(out, "obligations {abs} {conc} {rel} {{");
            for o in items {
                let _ = writeln!(out, "  {} : {}", o.label, obligation(&o.kind));
            }
            out.push_str("}\n");
        }
    }
}

fn obligation(k: &ObligationKind) -> String {
    match k {
        ObligationKind::Simulates(a, c) => format!("simulates {} {}", parg(a), parg(c)),
        ObligationKind::Vdash(c) => format!("vdash {}", parg(c)),
        ObligationKind::Ref2(a, c) => format!("ref2 {} {}", parg(a), parg(c)),
        ObligationKind::Initialisation => "initialisation".into(),
        ObligationKind::Finalisation => "finalisation".into(),
        ObligationKind::Implies(q, p) => format!("implies {} {}", qname(q), parg(p)),
        ObligationKind::Equivalent(q, p) => format!("equivalent {} {}", qname(q), parg(p)),
        ObligationKind::Splits(q) => format!("splits {}", qname(q)),
        ObligationKind::Joins(q) => format!("joins {}", qname(q)),
    }
}

fn parg(p: &PArg) -> String {
    match p {
        PArg::Name(q) => qname(q),
        PArg::Expr(e) => format!("({})", pexpr(e)),
    }
}

fn var_decl(v: &VarDecl) -> String {
    let d = match &v.domain {
        DomainDecl::Bool => "bool".to_string(),
        DomainDecl::Range(lo, hi) => format!("{lo} .. {hi}"),
        DomainDecl::Values(vs) => {
            let parts: Vec<String> = vs.iter().map(lit).collect();
            format!("{{{}}}", parts.join(", "))
        }
    };
    format!("{} : {d}", v.name)
}

pub fn lit(l: &Lit) -> String {
    match l {
        Lit::Bool(b) => b.to_string(),
        Lit::Int(n) => n.to_string(),
        Lit::NegInf => "-inf".into(),
        Lit::PosInf => "+inf".into(),
    }
}

pub fn qname(q: &QName) -> String {
    match &q.qual {
        Some(s) => format!("{s}.{}", q.name),
        None => q.name.clone(),
    }
}

fn bin(op: BinOp) -> &'static str {
    match op {
        BinOp::And => "&&",
        BinOp::Or => "||",
        BinOp::Implies => "=>",
        BinOp::Iff => "<=>",
    }
}

fn cmp(op: CmpOp) -> &'static str {
    match op {
        CmpOp::Eq => "=",
        CmpOp::Ne => "!=",
        CmpOp::Lt => "<",
        CmpOp::Le => "<=",
        CmpOp::Gt => ">",
        CmpOp::Ge => ">=",
    }
}

pub fn expr(e: &Expr) -> String {
    match e {
        Expr::Lit(l, _) => lit(l),
        Expr::Var(q) => qname(q),
        Expr::Not(a) => format!("!({})", expr(a)),
        Expr::Bin(op, a, b) => format!("({} {} {})", expr(a), bin(*op), expr(b)),
        Expr::Cmp(op, a, b) => format!("({} {} {})", operand(a), cmp(*op), operand(b)),
    }
}

fn operand(e: &Expr) -> String {
    match e {
        Expr::Lit(..) | Expr::Var(_) => expr(e),
        _ => format!("({})", expr(e)),
    }
}

fn modality(m: Modality) -> &'static str {
    match m {
        Modality::Always => "always",
        Modality::Sometime => "sometime",
        Modality::Definitely => "definitely",
        Modality::Possibly => "possibly",
        Modality::PrevHolds => "prevholds",
    }
}

pub fn pexpr(p: &PExpr) -> String {
    match p {
        PExpr::Modal(m, e) => format!("{}({})", modality(*m), expr(e)),
        PExpr::Stable(names, _) => format!("stable({})", names.join(", ")),
        PExpr::Empty => "empty".into(),
        PExpr::Finite => "finite".into(),
        PExpr::Infinite => "infinite".into(),
        PExpr::Lit(b) => b.to_string(),
        PExpr::Ref(q) => qname(q),
        PExpr::Not(a) => format!("!({})", pexpr(a)),
        PExpr::NonEmpty(a) => format!("NE ({})", pexpr(a)),
        PExpr::Prev(a) => format!("prev ({})", pexpr(a)),
        PExpr::Omega(a) => format!("omega({})", pexpr(a)),
        PExpr::Bin(op, a, b) => format!("({} {} {})", pexpr(a), bin(*op), pexpr(b)),
        PExpr::Chop(a, b) => format!("({} ; {})", pexpr(a), pexpr(b)),
    }
}

pub fn rexpr(r: &RExpr) -> String {
    match r {
        RExpr::Always(e) => format!("always({})", expr(e)),
        RExpr::Lit(b) => b.to_string(),
        RExpr::Left(p) => format!("left({})", pexpr(p)),
        RExpr::Right(p) => format!("right({})", pexpr(p)),
        RExpr::Ref(q) => qname(q),
        RExpr::Not(a) => format!("!({})", rexpr(a)),
        RExpr::NonEmpty(a) => format!("NE ({})", rexpr(a)),
        RExpr::Bin(op, a, b) => format!("({} {} {})", rexpr(a), bin(*op), rexpr(b)),
        RExpr::Chop(a, b) => format!("({} ; {})", rexpr(a), rexpr(b)),
    }
}

pub fn stmt(s: &Stmt) -> String {
    match s {
        Stmt::Guard(e) => format!("[{}]", expr(e)),
        Stmt::Assign(q, l) => format!("{} := {}", qname(q), lit(l)),
        Stmt::Skip => "skip".into(),
        Stmt::Seq(a, b) => format!("({} ; {})", stmt(a), stmt(b)),
        Stmt::Choice(a, b) => format!("({} |~| {})", stmt(a), stmt(b)),
        Stmt::If(c, a, b) => format!("if {} then {} else {} fi", expr(c), stmt(a), stmt(b)),
        Stmt::Loop(a) => format!("do {} od", stmt(a)),
    }
}

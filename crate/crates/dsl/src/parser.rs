//! Recursive-descent parser. Every production looks one token ahead.

use crate::ast::*;
use crate::error::{DslError, Pos, Span};
use crate::lexer::{lex, Tok, Token};

const KEYWORDS: &[&str] = &[
    "carrier", "open", "closed", "observable", "universe", "system", "var", "init", "process",
    "rely", "final", "pred", "over", "relation", "check", "obligations", "bool", "true", "false",
    "always", "sometime", "definitely", "possibly", "prevholds", "stable", "empty", "finite",
    "infinite", "omega", "NE", "prev", "left", "right", "skip", "if", "then", "else", "fi", "do",
    "od",
];

pub fn parse_spec(text: &str) -> Result<SpecFile, DslError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let spec = p.spec()?;
    p.expect_eof()?;
    Ok(spec)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

fn quoted(s: &str) -> String {
    format!("`{s}`")
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn span(&self) -> Span {
        Span(self.pos())
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if t != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == k)
    }

    fn unexpected<T>(&self, expected: &[&str]) -> Result<T, DslError> {
        let found = match self.peek() {
            Tok::Eof => "unexpected end of file".to_string(),
            t => format!("unexpected {t}"),
        };
        Err(DslError::syntax(
            self.pos(),
            found,
            expected.iter().map(|s| s.to_string()).collect(),
        ))
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, k: &str) -> bool {
        if self.is_kw(k) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn sym(&mut self, s: &str) -> Result<(), DslError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.unexpected(&[&quoted(s)])
        }
    }

    fn kw(&mut self, k: &str) -> Result<(), DslError> {
        if self.eat_kw(k) {
            Ok(())
        } else {
            self.unexpected(&[&quoted(k)])
        }
    }

    fn name(&mut self) -> Result<String, DslError> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => self.unexpected(&["a name"]),
        }
    }

    fn qname(&mut self) -> Result<QName, DslError> {
        let span = self.span();
        let first = self.name()?;
        if self.eat_sym(".") {
            let name = self.name()?;
            Ok(QName {
                qual: Some(first),
                name,
                span,
            })
        } else {
            Ok(QName {
                qual: None,
                name: first,
                span,
            })
        }
    }

    fn int(&mut self) -> Result<i64, DslError> {
        match *self.peek() {
            Tok::Int(n) => {
                self.advance();
                Ok(n)
            }
            _ => self.unexpected(&["an integer"]),
        }
    }

    fn expect_eof(&self) -> Result<(), DslError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.unexpected(&[
                "`observable`",
                "`universe`",
                "`system`",
                "`pred`",
                "`relation`",
                "`check`",
                "`obligations`",
            ])
        }
    }

    fn spec(&mut self) -> Result<SpecFile, DslError> {
        let span = self.span();
        self.kw("carrier")?;
        let h = self.int()?;
        let open = if self.eat_kw("open") {
            true
        } else if self.eat_kw("closed") {
            false
        } else {
            return self.unexpected(&["`open`", "`closed`"]);
        };
        let carrier = CarrierDecl {
            horizon: usize::try_from(h)
                .map_err(|_| DslError::syntax(span.0, "horizon must be positive", vec![]))?,
            open,
            span,
        };
        let mut items = Vec::new();
        while let Tok::Ident(k) = self.peek().clone() {
            let item = match k.as_str() {
                    "observable" => {
                        self.advance();
                        Item::Observable(self.var_decl()?)
                    }
                    "universe" => Item::Universe(self.universe()?),
                    "system" => Item::System(self.system()?),
                    "pred" => Item::Pred(self.pred_decl()?),
                    "relation" => Item::Relation(self.rel_decl()?),
                    "check" => Item::Directive(self.check()?),
                "obligations" => Item::Directive(self.obligations()?),
                _ => break,
            };
            items.push(item);
        }
        Ok(SpecFile { carrier, items })
    }

    fn lit(&mut self) -> Result<Lit, DslError> {
        let l = match self.peek() {
            Tok::Int(n) => Lit::Int(*n),
            Tok::NegInf => Lit::NegInf,
            Tok::PosInf => Lit::PosInf,
            Tok::Ident(k) if k == "true" => Lit::Bool(true),
            Tok::Ident(k) if k == "false" => Lit::Bool(false),
            _ => return self.unexpected(&["a literal"]),
        };
        self.advance();
        Ok(l)
    }

    fn var_decl(&mut self) -> Result<VarDecl, DslError> {
        let span = self.span();
        let name = self.name()?;
        self.sym(":")?;
        let domain = if self.eat_kw("bool") {
            DomainDecl::Bool
        } else if self.eat_sym("{") {
            let mut values = vec![self.lit()?];
            while self.eat_sym(",") {
                values.push(self.lit()?);
            }
            self.sym("}")?;
            DomainDecl::Values(values)
        } else if matches!(self.peek(), Tok::Int(_)) {
            let lo = self.int()?;
            self.sym("..")?;
            DomainDecl::Range(lo, self.int()?)
        } else {
            return self.unexpected(&["`bool`", "`{`", "an integer"]);
        };
        Ok(VarDecl { name, domain, span })
    }

    fn universe(&mut self) -> Result<UniverseDecl, DslError> {
        let span = self.span();
        self.kw("universe")?;
        let name = self.name()?;
        self.sym("{")?;
        let mut vars = Vec::new();
        while self.eat_kw("var") {
            vars.push(self.var_decl()?);
        }
        self.sym("}")?;
        Ok(UniverseDecl { name, vars, span })
    }

    fn system(&mut self) -> Result<SystemDecl, DslError> {
        let span = self.span();
        self.kw("system")?;
        let name = self.name()?;
        self.sym("{")?;
        let mut vars = Vec::new();
        let mut init = None;
        let mut processes = Vec::new();
        let mut rely = None;
        let mut finalisation = None;
        let once = |p: &Parser, what: &str, taken: bool| {
            if taken {
                Err(DslError::syntax(
                    p.pos(),
                    format!("second `{what}` clause in system `{name}`"),
                    vec![],
                ))
            } else {
                Ok(())
            }
        };
        loop {
            if self.eat_kw("var") {
                vars.push(self.var_decl()?);
            } else if self.is_kw("init") {
                once(self, "init", init.is_some())?;
                self.advance();
                init = Some(self.pexpr()?);
            } else if self.is_kw("process") {
                let span = self.span();
                self.advance();
                let name = self.name()?;
                self.sym("=")?;
                let body = self.stmt()?;
                processes.push(Process { name, body, span });
            } else if self.is_kw("rely") {
                once(self, "rely", rely.is_some())?;
                self.advance();
                rely = Some(self.pexpr()?);
            } else if self.is_kw("final") {
                once(self, "final", finalisation.is_some())?;
                self.advance();
                finalisation = Some(self.expr()?);
            } else if self.eat_sym("}") {
                break;
            } else {
                return self.unexpected(&[
                    "`var`", "`init`", "`process`", "`rely`", "`final`", "`}`",
                ]);
            }
        }
        let missing = |what: &str| {
            DslError::syntax(
                span.0,
                format!("system `{name}` has no `{what}` clause"),
                vec![],
            )
        };
        let init = init.ok_or_else(|| missing("init"))?;
        let finalisation = finalisation.ok_or_else(|| missing("final"))?;
        if processes.is_empty() {
            return Err(missing("process"));
        }
        Ok(SystemDecl {
            name,
            vars,
            init,
            processes,
            rely,
            finalisation,
            span,
        })
    }

    fn pred_decl(&mut self) -> Result<PredDecl, DslError> {
        let span = self.span();
        self.kw("pred")?;
        let name = self.name()?;
        self.kw("over")?;
        let over = self.name()?;
        self.sym("=")?;
        let body = self.pexpr()?;
        Ok(PredDecl {
            name,
            over,
            body,
            span,
        })
    }

    fn rel_decl(&mut self) -> Result<RelDecl, DslError> {
        let span = self.span();
        self.kw("relation")?;
        let name = self.name()?;
        self.sym(":")?;
        let from = self.name()?;
        self.sym("->")?;
        let to = self.name()?;
        self.sym("=")?;
        let body = self.rexpr()?;
        Ok(RelDecl {
            name,
            from,
            to,
            body,
            span,
        })
    }

    fn parg(&mut self) -> Result<PArg, DslError> {
        if self.eat_sym("(") {
            let e = self.pexpr()?;
            self.sym(")")?;
            Ok(PArg::Expr(e))
        } else if matches!(self.peek(), Tok::Ident(_)) {
            Ok(PArg::Name(self.qname()?))
        } else {
            self.unexpected(&["a predicate name", "`(`"])
        }
    }

    fn check(&mut self) -> Result<Directive, DslError> {
        let span = self.span();
        self.kw("check")?;
        let kind = match self.peek() {
            Tok::Ident(k) => k.clone(),
            _ => String::new(),
        };
        match kind.as_str() {
            "refinement" => {
                self.advance();
                Ok(Directive::Refinement {
                    abs: self.name()?,
                    conc: self.name()?,
                    span,
                })
            }
            "forward-sim" => {
                self.advance();
                Ok(Directive::ForwardSim {
                    abs: self.name()?,
                    conc: self.name()?,
                    rel: self.name()?,
                    span,
                })
            }
            "simulates" => {
                self.advance();
                Ok(Directive::Simulates {
                    rel: self.name()?,
                    abs: self.parg()?,
                    conc: self.parg()?,
                    span,
                })
            }
            _ => self.unexpected(&["`refinement`", "`forward-sim`", "`simulates`"]),
        }
    }

    fn obligations(&mut self) -> Result<Directive, DslError> {
        let span = self.span();
        self.kw("obligations")?;
        let abs = self.name()?;
        let conc = self.name()?;
        let rel = self.name()?;
        self.sym("{")?;
        let mut items = Vec::new();
        while !self.eat_sym("}") {
            let span = self.span();
            let label = match self.peek() {
                Tok::Ident(s) => s.clone(),
                _ => return self.unexpected(&["an obligation label", "`}`"]),
            };
            self.advance();
            self.sym(":")?;
            let kind_name = match self.peek() {
                Tok::Ident(k) => k.clone(),
                _ => String::new(),
            };
            let kind = match kind_name.as_str() {
                "simulates" => {
                    self.advance();
                    ObligationKind::Simulates(self.parg()?, self.parg()?)
                }
                "vdash" => {
                    self.advance();
                    ObligationKind::Vdash(self.parg()?)
                }
                "ref2" => {
                    self.advance();
                    ObligationKind::Ref2(self.parg()?, self.parg()?)
                }
                "initialisation" => {
                    self.advance();
                    ObligationKind::Initialisation
                }
                "finalisation" => {
                    self.advance();
                    ObligationKind::Finalisation
                }
                "implies" => {
                    self.advance();
                    ObligationKind::Implies(self.qname()?, self.parg()?)
                }
                "equivalent" => {
                    self.advance();
                    ObligationKind::Equivalent(self.qname()?, self.parg()?)
                }
                "splits" => {
                    self.advance();
                    ObligationKind::Splits(self.qname()?)
                }
                "joins" => {
                    self.advance();
                    ObligationKind::Joins(self.qname()?)
                }
                _ => {
                    return self.unexpected(&[
                        "`simulates`",
                        "`vdash`",
                        "`ref2`",
                        "`initialisation`",
                        "`finalisation`",
                        "`implies`",
                        "`equivalent`",
                        "`splits`",
                        "`joins`",
                    ])
                }
            };
            items.push(Obligation { label, kind, span });
        }
        Ok(Directive::Obligations {
            abs,
            conc,
            rel,
            items,
            span,
        })
    }

    // statements

    fn stmt(&mut self) -> Result<Stmt, DslError> {
        let mut s = self.stmt_seq()?;
        while self.eat_sym("|~|") {
            s = Stmt::Choice(Box::new(s), Box::new(self.stmt_seq()?));
        }
        Ok(s)
    }

    fn stmt_seq(&mut self) -> Result<Stmt, DslError> {
        let mut s = self.stmt_atom()?;
        while self.eat_sym(";") {
            s = Stmt::Seq(Box::new(s), Box::new(self.stmt_atom()?));
        }
        Ok(s)
    }

    fn stmt_atom(&mut self) -> Result<Stmt, DslError> {
        if self.eat_sym("[") {
            let e = self.expr()?;
            self.sym("]")?;
            return Ok(Stmt::Guard(e));
        }
        if self.eat_sym("(") {
            let s = self.stmt()?;
            self.sym(")")?;
            return Ok(s);
        }
        if self.eat_kw("skip") {
            return Ok(Stmt::Skip);
        }
        if self.eat_kw("if") {
            let c = self.expr()?;
            self.kw("then")?;
            let a = self.stmt()?;
            let b = if self.eat_kw("else") {
                self.stmt()?
            } else {
                Stmt::Skip
            };
            self.kw("fi")?;
            return Ok(Stmt::If(c, Box::new(a), Box::new(b)));
        }
        if self.eat_kw("do") {
            let s = self.stmt()?;
            self.kw("od")?;
            return Ok(Stmt::Loop(Box::new(s)));
        }
        if matches!(self.peek(), Tok::Ident(k) if !KEYWORDS.contains(&k.as_str())) {
            let target = self.qname()?;
            if !self.is_sym(":=") {
                return self.unexpected(&["`:=`"]);
            }
            self.advance();
            let pos = self.pos();
            if matches!(self.peek(), Tok::Ident(k) if k != "true" && k != "false") {
                return Err(DslError::unsupported(
                    pos,
                    "assignments take a literal right-hand side",
                ));
            }
            return Ok(Stmt::Assign(target, self.lit()?));
        }
        self.unexpected(&["`[`", "`(`", "`skip`", "`if`", "`do`", "an assignment"])
    }

    // state expressions

    pub(crate) fn expr(&mut self) -> Result<Expr, DslError> {
        let a = self.expr_imp()?;
        if self.eat_sym("<=>") {
            let b = self.expr_imp()?;
            return Ok(Expr::Bin(BinOp::Iff, Box::new(a), Box::new(b)));
        }
        Ok(a)
    }

    fn expr_imp(&mut self) -> Result<Expr, DslError> {
        let a = self.expr_or()?;
        if self.eat_sym("=>") {
            let b = self.expr_imp()?;
            return Ok(Expr::Bin(BinOp::Implies, Box::new(a), Box::new(b)));
        }
        Ok(a)
    }

    fn expr_or(&mut self) -> Result<Expr, DslError> {
        let mut a = self.expr_and()?;
        while self.eat_sym("||") {
            a = Expr::Bin(BinOp::Or, Box::new(a), Box::new(self.expr_and()?));
        }
        Ok(a)
    }

    fn expr_and(&mut self) -> Result<Expr, DslError> {
        let mut a = self.expr_not()?;
        while self.eat_sym("&&") {
            a = Expr::Bin(BinOp::And, Box::new(a), Box::new(self.expr_not()?));
        }
        Ok(a)
    }

    fn expr_not(&mut self) -> Result<Expr, DslError> {
        if self.eat_sym("!") {
            return Ok(Expr::Not(Box::new(self.expr_not()?)));
        }
        let a = self.expr_prim()?;
        let op = match self.peek() {
            Tok::Sym("=") => CmpOp::Eq,
            Tok::Sym("!=") => CmpOp::Ne,
            Tok::Sym("<") => CmpOp::Lt,
            Tok::Sym("<=") => CmpOp::Le,
            Tok::Sym(">") => CmpOp::Gt,
            Tok::Sym(">=") => CmpOp::Ge,
            _ => return Ok(a),
        };
        self.advance();
        let b = self.expr_prim()?;
        Ok(Expr::Cmp(op, Box::new(a), Box::new(b)))
    }

    fn expr_prim(&mut self) -> Result<Expr, DslError> {
        if self.eat_sym("(") {
            let e = self.expr()?;
            self.sym(")")?;
            return Ok(e);
        }
        match self.peek() {
            Tok::Int(_) | Tok::NegInf | Tok::PosInf => {
                let span = self.span();
                Ok(Expr::Lit(self.lit()?, span))
            }
            Tok::Ident(k) if k == "true" || k == "false" => {
                let span = self.span();
                Ok(Expr::Lit(self.lit()?, span))
            }
            Tok::Ident(k) if !KEYWORDS.contains(&k.as_str()) => Ok(Expr::Var(self.qname()?)),
            _ => self.unexpected(&["a variable", "a literal", "`(`", "`!`"]),
        }
    }

    // interval predicates

    pub(crate) fn pexpr(&mut self) -> Result<PExpr, DslError> {
        let a = self.pexpr_or()?;
        if self.eat_sym("=>") {
            let b = self.pexpr()?;
            return Ok(PExpr::Bin(BinOp::Implies, Box::new(a), Box::new(b)));
        }
        Ok(a)
    }

    fn pexpr_or(&mut self) -> Result<PExpr, DslError> {
        let mut a = self.pexpr_and()?;
        while self.eat_sym("||") {
            a = PExpr::Bin(BinOp::Or, Box::new(a), Box::new(self.pexpr_and()?));
        }
        Ok(a)
    }

    fn pexpr_and(&mut self) -> Result<PExpr, DslError> {
        let mut a = self.pexpr_chop()?;
        while self.eat_sym("&&") {
            a = PExpr::Bin(BinOp::And, Box::new(a), Box::new(self.pexpr_chop()?));
        }
        Ok(a)
    }

    fn pexpr_chop(&mut self) -> Result<PExpr, DslError> {
        let mut a = self.pexpr_unary()?;
        while self.eat_sym(";") {
            a = PExpr::Chop(Box::new(a), Box::new(self.pexpr_unary()?));
        }
        Ok(a)
    }

    fn pexpr_unary(&mut self) -> Result<PExpr, DslError> {
        if self.eat_sym("!") {
            return Ok(PExpr::Not(Box::new(self.pexpr_unary()?)));
        }
        if self.eat_kw("NE") {
            return Ok(PExpr::NonEmpty(Box::new(self.pexpr_unary()?)));
        }
        if self.eat_kw("prev") {
            return Ok(PExpr::Prev(Box::new(self.pexpr_unary()?)));
        }
        self.pexpr_atom()
    }

    fn modal_arg(&mut self) -> Result<Expr, DslError> {
        self.sym("(")?;
        let e = self.expr()?;
        self.sym(")")?;
        Ok(e)
    }

    fn pexpr_atom(&mut self) -> Result<PExpr, DslError> {
        if self.eat_sym("(") {
            let e = self.pexpr()?;
            self.sym(")")?;
            return Ok(e);
        }
        let kw = match self.peek() {
            Tok::Ident(k) => k.clone(),
            _ => return self.unexpected(&["an interval predicate"]),
        };
        let modal = match kw.as_str() {
            "always" => Some(Modality::Always),
            "sometime" => Some(Modality::Sometime),
            "definitely" => Some(Modality::Definitely),
            "possibly" => Some(Modality::Possibly),
            "prevholds" => Some(Modality::PrevHolds),
            _ => None,
        };
        if let Some(m) = modal {
            self.advance();
            return Ok(PExpr::Modal(m, self.modal_arg()?));
        }
        let simple = match kw.as_str() {
            "empty" => Some(PExpr::Empty),
            "finite" => Some(PExpr::Finite),
            "infinite" => Some(PExpr::Infinite),
            "true" => Some(PExpr::Lit(true)),
            "false" => Some(PExpr::Lit(false)),
            _ => None,
        };
        if let Some(e) = simple {
            self.advance();
            return Ok(e);
        }
        match kw.as_str() {
            "stable" => {
                let span = self.span();
                self.advance();
                self.sym("(")?;
                let mut names = Vec::new();
                if !self.is_sym(")") {
                    names.push(self.name()?);
                    while self.eat_sym(",") {
                        names.push(self.name()?);
                    }
                }
                self.sym(")")?;
                Ok(PExpr::Stable(names, span))
            }
            "omega" => {
                self.advance();
                self.sym("(")?;
                let e = self.pexpr()?;
                self.sym(")")?;
                Ok(PExpr::Omega(Box::new(e)))
            }
            k if !KEYWORDS.contains(&k) => Ok(PExpr::Ref(self.qname()?)),
            _ => self.unexpected(&["an interval predicate"]),
        }
    }

    // interval relations

    fn rexpr(&mut self) -> Result<RExpr, DslError> {
        let mut a = self.rexpr_and()?;
        while self.eat_sym("||") {
            a = RExpr::Bin(BinOp::Or, Box::new(a), Box::new(self.rexpr_and()?));
        }
        Ok(a)
    }

    fn rexpr_and(&mut self) -> Result<RExpr, DslError> {
        let mut a = self.rexpr_chop()?;
        while self.eat_sym("&&") {
            a = RExpr::Bin(BinOp::And, Box::new(a), Box::new(self.rexpr_chop()?));
        }
        Ok(a)
    }

    fn rexpr_chop(&mut self) -> Result<RExpr, DslError> {
        let mut a = self.rexpr_unary()?;
        while self.eat_sym(";") {
            a = RExpr::Chop(Box::new(a), Box::new(self.rexpr_unary()?));
        }
        Ok(a)
    }

    fn rexpr_unary(&mut self) -> Result<RExpr, DslError> {
        if self.eat_sym("!") {
            return Ok(RExpr::Not(Box::new(self.rexpr_unary()?)));
        }
        if self.eat_kw("NE") {
            return Ok(RExpr::NonEmpty(Box::new(self.rexpr_unary()?)));
        }
        if self.eat_sym("(") {
            let e = self.rexpr()?;
            self.sym(")")?;
            return Ok(e);
        }
        if self.eat_kw("always") {
            return Ok(RExpr::Always(self.modal_arg()?));
        }
        if self.eat_kw("true") {
            return Ok(RExpr::Lit(true));
        }
        if self.eat_kw("false") {
            return Ok(RExpr::Lit(false));
        }
        for (k, side) in [("left", true), ("right", false)] {
            if self.eat_kw(k) {
                self.sym("(")?;
                let e = self.pexpr()?;
                self.sym(")")?;
                return Ok(if side { RExpr::Left(e) } else { RExpr::Right(e) });
            }
        }
        match self.peek() {
            Tok::Ident(k) if !KEYWORDS.contains(&k.as_str()) => Ok(RExpr::Ref(self.qname()?)),
            _ => self.unexpected(&["`always`", "`left`", "`right`", "`NE`", "`(`", "a relation"]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEAD: &str = "carrier 2 closed\n";

    #[test]
    fn empty_file_wants_a_carrier() {
        let e = parse_spec("").unwrap_err();
        assert_eq!(e.to_string(), "1:1: unexpected end of file (expected `carrier`)");
    }

    #[test]
    fn precedence_of_predicates() {
        let f = parse_spec(&format!(
            "{HEAD}universe U {{ var x : bool }}\npred p over U = possibly(x) ; NE always(!x) || empty && finite"
        ))
        .unwrap();
        let Item::Pred(p) = &f.items[1] else {
            panic!()
        };
        let PExpr::Bin(BinOp::Or, a, b) = &p.body else {
            panic!("{:?}", p.body)
        };
        assert!(matches!(**a, PExpr::Chop(..)));
        assert!(matches!(**b, PExpr::Bin(BinOp::And, ..)));
    }

    #[test]
    fn statements_and_else_default() {
        let f = parse_spec(&format!(
            "{HEAD}system S {{ var x : 0..2 init true process p = if x < 1 then x := 1 fi ; [x = 1] |~| skip final true }}"
        ))
        .unwrap();
        let s = f.systems().next().unwrap();
        let Stmt::Choice(a, b) = &s.processes[0].body else {
            panic!()
        };
        assert_eq!(**b, Stmt::Skip);
        let Stmt::Seq(first, _) = &**a else { panic!() };
        assert!(matches!(&**first, Stmt::If(_, _, e) if **e == Stmt::Skip));
    }

    #[test]
    fn syntax_error_lists_expected_tokens() {
        let e = parse_spec(&format!("{HEAD}system S {{ var x : bool oops }}")).unwrap_err();
        assert_eq!(e.pos, Some(Pos { line: 2, col: 25 }));
        assert!(e.expected.contains(&"`process`".to_string()));
    }

    #[test]
    fn non_literal_assignment_is_unsupported() {
        let e = parse_spec(&format!(
            "{HEAD}system S {{ var x : bool var y : bool init true process p = x := y final true }}"
        ))
        .unwrap_err();
        assert_eq!(e.kind, crate::error::ErrorKind::Unsupported);
    }

    #[test]
    fn missing_clause() {
        let e = parse_spec(&format!("{HEAD}system S {{ var x : bool init true final true }}"))
            .unwrap_err();
        assert!(e.message.contains("no `process`"));
    }
}

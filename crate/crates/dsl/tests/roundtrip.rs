use ivdr_dsl::ast::*;
use ivdr_dsl::error::Span;
use ivdr_dsl::parse_spec;
use ivdr_dsl::pretty::print_spec;
use proptest::prelude::*;

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "grd", "m2", "a_b", "x'", "fw-sim"]).prop_map(String::from)
}

fn qname() -> impl Strategy<Value = QName> {
    (prop::option::of(name()), name()).prop_map(|(qual, name)| QName {
        qual,
        name,
        span: Span::default(),
    })
}

fn lit() -> impl Strategy<Value = Lit> {
    prop_oneof![
        any::<bool>().prop_map(Lit::Bool),
        (-5i64..20).prop_map(Lit::Int),
        Just(Lit::NegInf),
        Just(Lit::PosInf),
    ]
}

fn bin_op() -> impl Strategy<Value = BinOp> {
    prop::sample::select(vec![BinOp::And, BinOp::Or, BinOp::Implies, BinOp::Iff])
}

fn cmp_op() -> impl Strategy<Value = CmpOp> {
    prop::sample::select(vec![
        CmpOp::Eq,
        CmpOp::Ne,
        CmpOp::Lt,
        CmpOp::Le,
        CmpOp::Gt,
        CmpOp::Ge,
    ])
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        lit().prop_map(|l| Expr::Lit(l, Span::default())),
        qname().prop_map(Expr::Var),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Not(Box::new(a))),
            (bin_op(), inner.clone(), inner.clone())
                .prop_map(|(o, a, b)| Expr::Bin(o, Box::new(a), Box::new(b))),
            (cmp_op(), inner.clone(), inner).prop_map(|(o, a, b)| Expr::Cmp(
                o,
                Box::new(a),
                Box::new(b)
            )),
        ]
    })
}

fn pexpr() -> impl Strategy<Value = PExpr> {
    let modality = prop::sample::select(vec![
        Modality::Always,
        Modality::Sometime,
        Modality::Definitely,
        Modality::Possibly,
        Modality::PrevHolds,
    ]);
    let leaf = prop_oneof![
        (modality, expr()).prop_map(|(m, e)| PExpr::Modal(m, e)),
        prop::collection::vec(name(), 0..3).prop_map(|v| PExpr::Stable(v, Span::default())),
        Just(PExpr::Empty),
        Just(PExpr::Finite),
        Just(PExpr::Infinite),
        any::<bool>().prop_map(PExpr::Lit),
        qname().prop_map(PExpr::Ref),
    ];
    let op = prop::sample::select(vec![BinOp::And, BinOp::Or, BinOp::Implies]);
    leaf.prop_recursive(3, 16, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| PExpr::Not(Box::new(a))),
            inner.clone().prop_map(|a| PExpr::NonEmpty(Box::new(a))),
            inner.clone().prop_map(|a| PExpr::Prev(Box::new(a))),
            inner.clone().prop_map(|a| PExpr::Omega(Box::new(a))),
            (op.clone(), inner.clone(), inner.clone())
                .prop_map(|(o, a, b)| PExpr::Bin(o, Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| PExpr::Chop(Box::new(a), Box::new(b))),
        ]
    })
}

fn rexpr() -> impl Strategy<Value = RExpr> {
    let leaf = prop_oneof![
        expr().prop_map(RExpr::Always),
        any::<bool>().prop_map(RExpr::Lit),
        pexpr().prop_map(RExpr::Left),
        pexpr().prop_map(RExpr::Right),
        qname().prop_map(RExpr::Ref),
    ];
    let op = prop::sample::select(vec![BinOp::And, BinOp::Or]);
    leaf.prop_recursive(2, 8, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| RExpr::Not(Box::new(a))),
            inner.clone().prop_map(|a| RExpr::NonEmpty(Box::new(a))),
            (op.clone(), inner.clone(), inner.clone())
                .prop_map(|(o, a, b)| RExpr::Bin(o, Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| RExpr::Chop(Box::new(a), Box::new(b))),
        ]
    })
}

fn stmt() -> impl Strategy<Value = Stmt> {
    let leaf = prop_oneof![
        expr().prop_map(Stmt::Guard),
        (qname(), lit()).prop_map(|(q, l)| Stmt::Assign(q, l)),
        Just(Stmt::Skip),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Stmt::Seq(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Stmt::Choice(Box::new(a), Box::new(b))),
            (expr(), inner.clone(), inner.clone())
                .prop_map(|(c, a, b)| Stmt::If(c, Box::new(a), Box::new(b))),
            inner.prop_map(|a| Stmt::Loop(Box::new(a))),
        ]
    })
}

fn var_decl() -> impl Strategy<Value = VarDecl> {
    let domain = prop_oneof![
        Just(DomainDecl::Bool),
        (-3i64..3, 0i64..4).prop_map(|(a, b)| DomainDecl::Range(a, a + b)),
        prop::collection::vec(lit(), 1..4).prop_map(DomainDecl::Values),
    ];
    (name(), domain).prop_map(|(name, domain)| VarDecl {
        name,
        domain,
        span: Span::default(),
    })
}

fn parg() -> impl Strategy<Value = PArg> {
    prop_oneof![qname().prop_map(PArg::Name), pexpr().prop_map(PArg::Expr)]
}

fn obligation() -> impl Strategy<Value = Obligation> {
    let kind = prop_oneof![
        (parg(), parg()).prop_map(|(a, b)| ObligationKind::Simulates(a, b)),
        parg().prop_map(ObligationKind::Vdash),
        (parg(), parg()).prop_map(|(a, b)| ObligationKind::Ref2(a, b)),
        Just(ObligationKind::Initialisation),
        Just(ObligationKind::Finalisation),
        (qname(), parg()).prop_map(|(a, b)| ObligationKind::Implies(a, b)),
        (qname(), parg()).prop_map(|(a, b)| ObligationKind::Equivalent(a, b)),
        qname().prop_map(ObligationKind::Splits),
        qname().prop_map(ObligationKind::Joins),
    ];
    (name(), kind).prop_map(|(label, kind)| Obligation {
        label,
        kind,
        span: Span::default(),
    })
}

fn directive() -> impl Strategy<Value = Directive> {
    let sp = Span::default();
    prop_oneof![
        (name(), name()).prop_map(move |(abs, conc)| Directive::Refinement {
            abs,
            conc,
            span: sp
        }),
        (name(), name(), name()).prop_map(move |(abs, conc, rel)| Directive::ForwardSim {
            abs,
            conc,
            rel,
            span: sp
        }),
        (name(), parg(), parg()).prop_map(move |(rel, abs, conc)| Directive::Simulates {
            rel,
            abs,
            conc,
            span: sp
        }),
        (name(), name(), name(), prop::collection::vec(obligation(), 0..3)).prop_map(
            move |(abs, conc, rel, items)| Directive::Obligations {
                abs,
                conc,
                rel,
                items,
                span: sp
            }
        ),
    ]
}

fn item() -> impl Strategy<Value = Item> {
    let sp = Span::default();
    let process = (name(), stmt()).prop_map(move |(name, body)| Process {
        name,
        body,
        span: sp,
    });
    prop_oneof![
        var_decl().prop_map(Item::Observable),
        (name(), prop::collection::vec(var_decl(), 0..3)).prop_map(move |(name, vars)| {
            Item::Universe(UniverseDecl {
                name,
                vars,
                span: sp,
            })
        }),
        (
            name(),
            prop::collection::vec(var_decl(), 0..3),
            pexpr(),
            prop::collection::vec(process, 1..3),
            prop::option::of(pexpr()),
            expr()
        )
            .prop_map(move |(name, vars, init, processes, rely, finalisation)| {
                Item::System(SystemDecl {
                    name,
                    vars,
                    init,
                    processes,
                    rely,
                    finalisation,
                    span: sp,
                })
            }),
        (name(), name(), pexpr()).prop_map(move |(name, over, body)| Item::Pred(PredDecl {
            name,
            over,
            body,
            span: sp
        })),
        (name(), name(), name(), rexpr()).prop_map(move |(name, from, to, body)| {
            Item::Relation(RelDecl {
                name,
                from,
                to,
                body,
                span: sp,
            })
        }),
        directive().prop_map(Item::Directive),
    ]
}

fn spec() -> impl Strategy<Value = SpecFile> {
    (1usize..5, any::<bool>(), prop::collection::vec(item(), 0..5)).prop_map(
        |(horizon, open, items)| SpecFile {
            carrier: CarrierDecl {
                horizon,
                open,
                span: Span::default(),
            },
            items,
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printed_files_reparse_to_the_same_tree(f in spec()) {
        let text = print_spec(&f);
        let back = parse_spec(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, f);
    }
}

#[test]
fn bundled_examples_round_trip() {
    for src in [
        include_str!("../../cli/examples/running_example.ivdl"),
        include_str!("../../cli/examples/mutated_example.ivdl"),
        include_str!("../../cli/examples/apparent_states.ivdl"),
    ] {
        let f = parse_spec(src).unwrap();
        let text = print_spec(&f);
        assert_eq!(parse_spec(&text).unwrap(), f, "{text}");
    }
}

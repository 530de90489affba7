//! Catalog data as printed. Everything here is comparison input: the
//! values actually used are re-derived in the parent module.

use crate::solver::CoefficientPattern::{self, *};

#[derive(Debug)]
pub struct RawIdentity {
    /// Exponents in the printed left-hand side.
    pub label: (u32, u32, u32),
    pub a: &'static str,
    pub factors: &'static [&'static str],
}

#[derive(Debug)]
pub struct RawBranch {
    /// `'p'` or `'q'`; the other coordinate is a function of it.
    pub param: char,
    pub other: &'static str,
    pub a: &'static str,
    pub proof_other: Option<&'static str>,
    pub proof_a: Option<&'static str>,
    pub identity: Option<RawIdentity>,
    /// False for components of the solution set the statement leaves out.
    pub printed: bool,
}

#[derive(Debug)]
pub struct RawPoint {
    pub a: &'static str,
    pub p: &'static str,
    pub q: &'static str,
}

#[derive(Debug)]
pub enum RawKind {
    Parametric {
        param: char,
        branches: &'static [RawBranch],
        excluded: &'static [&'static str],
    },
    Isolated {
        points: &'static [RawPoint],
        identities: &'static [RawIdentity],
    },
    Empty,
    Curve(&'static str),
    /// Same solutions as the source case under `x^n f(1/x)` and rescaling.
    Reduction(&'static str),
}

#[derive(Debug)]
pub struct RawCase {
    pub id: &'static str,
    pub pattern: CoefficientPattern,
    pub exps: (u32, u32, u32),
    pub conjectural: bool,
    pub kind: RawKind,
    /// Points dividing the quadrinomial for every `a`.
    pub free_loci: &'static [(&'static str, &'static str)],
}

const fn branch(param: char, other: &'static str, a: &'static str, identity: RawIdentity) -> RawBranch {
    RawBranch {
        param,
        other,
        a,
        proof_other: None,
        proof_a: None,
        identity: Some(identity),
        printed: true,
    }
}

const fn unprinted(param: char, other: &'static str, a: &'static str) -> RawBranch {
    RawBranch {
        param,
        other,
        a,
        proof_other: None,
        proof_a: None,
        identity: None,
        printed: false,
    }
}

const fn ident(label: (u32, u32, u32), a: &'static str, factors: &'static [&'static str]) -> RawIdentity {
    RawIdentity { label, a, factors }
}

const fn pt(a: &'static str, p: &'static str, q: &'static str) -> RawPoint {
    RawPoint { a, p, q }
}

const fn case(id: &'static str, pattern: CoefficientPattern, exps: (u32, u32, u32), kind: RawKind) -> RawCase {
    RawCase {
        id,
        pattern,
        exps,
        conjectural: false,
        kind,
        free_loci: &[],
    }
}

const fn starred(mut c: RawCase) -> RawCase {
    c.conjectural = true;
    c
}

const fn with_free(mut c: RawCase, free: &'static [(&'static str, &'static str)]) -> RawCase {
    c.free_loci = free;
    c
}

const A_3_2_1: &str = "(q^4+q^3+q^2+q+1)/q";

pub static CASES: &[RawCase] = &[
    case(
        "T2.3.1",
        A11,
        (4, 2, 1),
        RawKind::Parametric {
            param: 'q',
            branches: &[branch(
                'q',
                "-q/(q^2-1)",
                "(q^6-q^4-q^3-q^2+1)/(q(q-1)^2(q+1)^2)",
                ident(
                    (4, 2, 1),
                    "(q^6-q^4-q^3-q^2+1)/(q(q-1)^2(q+1)^2)",
                    &["x^2 - q/(q^2-1) x + q", "x^2 + q^2/(q^2-1) x + 1/q"],
                ),
            )],
            excluded: &["0", "1", "-1"],
        },
    ),
    case(
        "T2.3.2",
        A11,
        (4, 3, 1),
        RawKind::Isolated {
            points: &[pt("1", "2", "1"), pt("1", "-1", "1")],
            identities: &[ident((4, 3, 1), "1", &["x^2-x+1", "(x+1)^2"])],
        },
    ),
    case("T2.3.3", A11, (4, 3, 2), RawKind::Empty),
    case("T2.4.1", AA1, (4, 2, 1), RawKind::Curve("C2.4.1")),
    case(
        "T2.4.2",
        AA1,
        (4, 3, 1),
        RawKind::Parametric {
            param: 'p',
            branches: &[branch(
                'p',
                "1",
                "(p^2-2)/p",
                ident((4, 3, 1), "(p^2-2)/p", &["x^2+px+1", "x^2-(2/p)x+1"]),
            )],
            excluded: &["0"],
        },
    ),
    case("T2.4.3", AA1, (4, 3, 2), RawKind::Reduction("T2.4.1")),
    case("T2.5.1", A1A, (4, 2, 1), RawKind::Curve("C2.5.1")),
    with_free(
        case(
            "T2.5.2",
            A1A,
            (4, 3, 1),
            RawKind::Parametric {
                param: 'p',
                branches: &[branch(
                    'p',
                    "p-1",
                    "p-1",
                    ident((4, 3, 1), "p-1", &["x^2-x+1", "x^2+px+p-1"]),
                )],
                excluded: &["0", "1"],
            },
        ),
        &[("-1", "1")],
    ),
    case("T2.5.3", A1A, (4, 3, 2), RawKind::Reduction("T2.5.1")),
    case("T2.6.1", OneAA, (4, 2, 1), RawKind::Empty),
    case(
        "T2.6.2",
        OneAA,
        (4, 3, 1),
        RawKind::Parametric {
            param: 'p',
            branches: &[
                branch(
                    'p',
                    "p^2",
                    "-p^3",
                    ident((4, 3, 1), "-p^3", &["x^2+px+p^2", "x^2-(p-1)x-p"]),
                ),
                branch(
                    'p',
                    "p-1",
                    "(p-1)^3",
                    ident((4, 3, 1), "(p-1)^3", &["x^2+px+p-1", "x^2-(p-1)x+p^2-2p+1"]),
                ),
            ],
            excluded: &["0", "1"],
        },
    ),
    case("T2.6.3", OneAA, (4, 3, 2), RawKind::Reduction("T2.6.1")),
    case(
        "T3.1.1",
        A11,
        (5, 2, 1),
        RawKind::Isolated {
            points: &[pt("-3", "-2", "1")],
            identities: &[ident((5, 2, 1), "-3", &["(x-1)^2", "x^3+2x^2+3x+1"])],
        },
    ),
    case(
        "T3.1.2",
        A11,
        (5, 3, 1),
        RawKind::Isolated {
            points: &[pt("2", "-1", "1")],
            identities: &[ident((5, 2, 1), "2", &["x^2-x+1", "x^3+x^2+2x+1"])],
        },
    ),
    case(
        "T3.1.3",
        A11,
        (5, 3, 2),
        RawKind::Isolated {
            points: &[
                pt("1", "-1", "1"),
                pt("1", "0", "1"),
                pt("-19397/1458", "10/27", "1/6"),
                pt("2597/192", "-3/8", "1/6"),
            ],
            identities: &[
                ident((5, 3, 2), "1", &["x+1", "x^2+1", "x^2-x+1"]),
                ident(
                    (5, 3, 2),
                    "-19397/1458",
                    &["x^2 + 10/27 x + 1/6", "x^3 - 10/27 x^2 - 40/3 x + 6"],
                ),
                ident(
                    (5, 3, 2),
                    "2597/192",
                    &["x^2 - 3/8 x + 1/6", "x^3 + 3/8 x^2 + 27/2 x + 6"],
                ),
            ],
        },
    ),
    starred(case(
        "T3.1.4",
        A11,
        (5, 4, 1),
        RawKind::Isolated {
            points: &[pt("-2", "-1", "1"), pt("-1055/16", "1/16", "1/8")],
            identities: &[
                ident((5, 4, 1), "-2", &["x^2-x-1", "x^3-x^2-1"]),
                ident((5, 4, 1), "-1055/16", &["x^2 + 1/16 x + 1/8", "x^3-66x^2+4x+8"]),
            ],
        },
    )),
    starred(case("T3.1.5", A11, (5, 4, 2), RawKind::Empty)),
    case(
        "T3.1.6",
        A11,
        (5, 4, 3),
        RawKind::Isolated {
            points: &[pt("-1", "0", "1")],
            identities: &[ident((5, 4, 1), "-1", &["x^2+1", "x^3-x^2+1"])],
        },
    ),
    case(
        "T3.2.1",
        AA1,
        (5, 2, 1),
        RawKind::Parametric {
            param: 'q',
            branches: &[branch(
                'q',
                "q+1",
                A_3_2_1,
                ident(
                    (5, 2, 1),
                    A_3_2_1,
                    &["x^2+(q+1)x+q", "x^3+(-q-1)x^2+(q^2+q+1)x+1/q"],
                ),
            )],
            excluded: &["0"],
        },
    ),
    starred(case("T3.2.2", AA1, (5, 3, 1), RawKind::Empty)),
    case(
        "T3.2.3",
        AA1,
        (5, 3, 2),
        RawKind::Parametric {
            param: 'q',
            branches: &[
                branch(
                    'q',
                    "q+1",
                    "-(q^4+q^3+q^2+q+1)/q^2",
                    ident(
                        (5, 3, 2),
                        "-(q^4+q^3+q^2+q+1)/q^2",
                        &["x^2+(q+1)x+q", "x^3-(q+1)x^2-(1+q)x/q^2+1/q"],
                    ),
                ),
                branch(
                    'q',
                    "-q/(q+1)",
                    "(q^4+q^3+q^2+q+1)/(q(q^2+2q+1))",
                    ident(
                        (5, 3, 2),
                        "(q^4+q^3+q^2+q+1)/(q(q^2+2q+1))",
                        &["x^2-qx/(q+1)+q", "x^3+qx^2/(q+1)+x/(q(q+1))+1/q"],
                    ),
                ),
                unprinted('p', "1", "1-p-p^2"),
            ],
            excluded: &["0", "-1"],
        },
    ),
    case(
        "T3.2.4",
        AA1,
        (5, 4, 1),
        RawKind::Parametric {
            param: 'q',
            branches: &[
                branch(
                    'q',
                    "q+1",
                    "(q^4+q^3+q^2+q+1)/(q(q^2+q+1))",
                    ident(
                        (5, 4, 1),
                        "(q^4+q^3+q^2+q+1)/(q(q^2+q+1))",
                        &[
                            "x^2+(q+1)x+q",
                            "x^3+(-q^3-q^2+1)/(q(q^2+q+1))x^2+(q^3-q-1)/(q(q^2+q+1))x+1/q",
                        ],
                    ),
                ),
                unprinted('p', "1", "(p^2+p-1)/(p+1)"),
            ],
            excluded: &[],
        },
    ),
    case("T3.2.5", AA1, (5, 4, 2), RawKind::Reduction("T3.2.2")),
    case("T3.2.6", AA1, (5, 4, 3), RawKind::Reduction("T3.2.1")),
    case("T3.3.1", A1A, (5, 2, 1), RawKind::Empty),
    starred(case(
        "T3.3.2",
        A1A,
        (5, 3, 1),
        RawKind::Isolated {
            points: &[pt("1/2", "1", "1")],
            identities: &[ident((5, 3, 2), "1/2", &["x^2+x+1", "x^3-x^2+x/2+1/2"])],
        },
    )),
    with_free(
        case(
            "T3.3.3",
            A1A,
            (5, 3, 2),
            RawKind::Parametric {
                param: 'q',
                branches: &[
                    branch(
                        'q',
                        "q+1",
                        "-q^2",
                        ident((5, 3, 2), "-q^2", &["x^2+(q+1)x+q", "x^3-(q+1)x^2+(q+1)x-q"]),
                    ),
                    unprinted('q', "0", "q"),
                ],
                excluded: &["0"],
            },
        ),
        &[("-1", "1")],
    ),
    case("T3.3.4", A1A, (5, 4, 1), RawKind::Empty),
    case("T3.3.5", A1A, (5, 4, 2), RawKind::Reduction("T3.3.2")),
    case("T3.3.6", A1A, (5, 4, 3), RawKind::Reduction("T3.3.1")),
    case(
        "T3.4.1",
        OneAA,
        (5, 2, 1),
        RawKind::Parametric {
            param: 'p',
            branches: &[
                RawBranch {
                    proof_other: Some("p+1"),
                    ..branch(
                        'p',
                        "p-1",
                        "-(p^2-p+1)(p-1)^2",
                        ident(
                            (5, 3, 2),
                            "-(p^2-p+1)(p-1)^2",
                            &["x^2+px+p-1", "x^3-px^2-(-p^2+p-1)x-p^3+2p^2-2p+1"],
                        ),
                    )
                },
                branch(
                    'p',
                    "p(p^2+p+1)/(2p+1)",
                    "p(p+1)(p^2+p+1)^2/(2p+1)^2",
                    ident(
                        (5, 3, 2),
                        "p(p+1)(p^2+p+1)^2/(2p+1)^2",
                        &[
                            "x^2+px+p(p^2+p+1)/(2p+1)",
                            "x^3-px^2+(p^3-p)/(2p+1)x+(p^3+2p^2+2p+1)/(2p+1)",
                        ],
                    ),
                ),
            ],
            excluded: &[],
        },
    ),
    case(
        "T3.4.2",
        OneAA,
        (5, 3, 1),
        RawKind::Isolated {
            points: &[pt("125/12", "-1/2", "5/18")],
            identities: &[ident(
                (5, 3, 2),
                "125/12",
                &["x^2-x/2+5/18", "x^3+x^2/2+35x/36+25/72"],
            )],
        },
    ),
    with_free(
        case(
            "T3.4.3",
            OneAA,
            (5, 3, 2),
            RawKind::Parametric {
                param: 'p',
                branches: &[RawBranch {
                    proof_a: Some("-p^3"),
                    ..branch('p', "p^2", "-p^2", ident((5, 3, 2), "-p^2", &["x-p", "x^2+1", "x^2+px+p^2"]))
                }],
                excluded: &["0"],
            },
        ),
        &[("0", "1")],
    ),
    case(
        "T3.4.4",
        OneAA,
        (5, 4, 1),
        RawKind::Parametric {
            param: 'p',
            branches: &[
                RawBranch {
                    proof_a: Some("p^4/2"),
                    ..branch(
                        'p',
                        "p^2/2",
                        "p^4/2",
                        ident((5, 4, 1), "p^4/2", &["x+1", "x^2-px+p^2/2", "x^2+px+p^2/2"]),
                    )
                },
                branch(
                    'p',
                    "p-1",
                    "-(p-1)^4",
                    ident((5, 4, 1), "-(p-1)^4", &["x^2+px+p-1", "x-p+1", "x^2+p^2-2p+1"]),
                ),
                unprinted('q', "0", "-q^2"),
            ],
            excluded: &[],
        },
    ),
    case("T3.4.5", OneAA, (5, 4, 2), RawKind::Reduction("T3.4.2")),
    case("T3.4.6", OneAA, (5, 4, 3), RawKind::Reduction("T3.4.1")),
];

//! The catalog of known factorization families and isolated solutions.
//!
//! Printed formulas in [`catalog`] are never trusted: every `a` is
//! re-derived from the linear remainder along the branch curve, cofactors
//! come from exact division, and [`verify_paper`] reports where the printed
//! data disagrees.

pub mod catalog;
pub mod report;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{canonical_cmp, height_u64, parse_rational, rationals_up_to_height, ser_opt_rational, Rational};
use crate::error::Error;
use crate::parse::ExprTarget;
use crate::ratfn::{RatFn, RxPoly};
use crate::solver::{
    find_quadratic_factors, linear_forms, pattern_sweep, solve_a, ASolution, CoefficientPattern, LinearForms,
    QuadraticFactor, Quadrinomial, SweepHit,
};
use crate::upoly::UPoly;
use catalog::{RawBranch, RawCase, RawIdentity, RawKind, RawPoint, CASES};
use report::{DiscrepancyKind, PaperReport, ReportEntry};

/// One component of a parametric case: the other coordinate and `a` as
/// functions of the parameter.
#[derive(Debug, Clone)]
pub struct Branch {
    pub param: char,
    pub other: RatFn,
    /// Derived, not printed. `Err` holds the reason derivation failed.
    pub a: Result<RatFn, String>,
    pub printed: bool,
    raw: &'static RawBranch,
}

#[derive(Debug, Clone)]
pub enum CaseKind {
    Parametric {
        param: char,
        branches: Vec<Branch>,
        /// Exclusions as printed.
        excluded: Vec<Rational>,
    },
    /// Verified solutions, with typos in the printed points corrected.
    Isolated(Vec<SweepHit>),
    Empty,
    Curve(&'static str),
    Reduction(&'static str),
}

#[derive(Debug, Clone)]
pub struct FamilyCase {
    pub id: &'static str,
    pub pattern: CoefficientPattern,
    pub exps: (u32, u32, u32),
    pub conjectural: bool,
    pub kind: CaseKind,
    /// Factors dividing the quadrinomial for every `a`.
    pub free_loci: Vec<QuadraticFactor>,
    raw: &'static RawCase,
}

impl FamilyCase {
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            CaseKind::Parametric { .. } => "parametric",
            CaseKind::Isolated(_) => "isolated",
            CaseKind::Empty => "empty",
            CaseKind::Curve(_) => "curve",
            CaseKind::Reduction(_) => "reduction",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub id: String,
    /// Index of the branch that produced the member.
    pub branch: Option<usize>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub param: Option<Rational>,
    /// The pattern parameter, which is not always the `x^m` coefficient.
    #[serde(serialize_with = "crate::arith::ser_rational")]
    pub a: Rational,
    pub quadrinomial: Quadrinomial,
    /// The quadrinomial as a polynomial.
    pub f: UPoly,
    pub factor: QuadraticFactor,
    pub cofactor: UPoly,
    pub conjectural: bool,
}

impl FamilyMember {
    fn build(case: &FamilyCase, hit: &SweepHit) -> Result<Self, Error> {
        let (n, m, k) = case.exps;
        let f = Quadrinomial::from_pattern(case.pattern, n, m, k, &hit.a)?;
        let cofactor = f
            .to_upoly()
            .exact_div(&hit.factor.to_upoly())?
            .ok_or_else(|| Error::Internal(format!("{}: {} does not divide {f}", case.id, hit.factor)))?;
        Ok(FamilyMember {
            id: case.id.to_string(),
            branch: None,
            param: None,
            a: hit.a.clone(),
            f: f.to_upoly(),
            quadrinomial: f,
            factor: hit.factor.clone(),
            cofactor,
            conjectural: case.conjectural,
        })
    }

    pub fn hit(&self) -> SweepHit {
        SweepHit {
            factor: self.factor.clone(),
            a: self.a.clone(),
        }
    }
}

pub fn catalog() -> &'static [FamilyCase] {
    static CATALOG: OnceLock<Vec<FamilyCase>> = OnceLock::new();
    CATALOG.get_or_init(|| CASES.iter().map(build_case).collect())
}

pub fn case(id: &str) -> Result<&'static FamilyCase, Error> {
    catalog()
        .iter()
        .find(|c| c.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

fn build_case(raw: &'static RawCase) -> FamilyCase {
    let kind = match &raw.kind {
        RawKind::Parametric {
            param,
            branches,
            excluded,
        } => CaseKind::Parametric {
            param: *param,
            branches: branches.iter().map(|b| build_branch(raw, b)).collect(),
            excluded: excluded
                .iter()
                .map(|s| parse_rational(s).expect("catalog exclusion"))
                .collect(),
        },
        RawKind::Isolated { points, .. } => {
            let mut hits: Vec<SweepHit> = points
                .iter()
                .filter_map(|pt| check_point(raw.pattern, raw.exps, pt).hit().cloned())
                .collect();
            sort_dedup(&mut hits);
            CaseKind::Isolated(hits)
        }
        RawKind::Empty => CaseKind::Empty,
        RawKind::Curve(c) => CaseKind::Curve(c),
        RawKind::Reduction(src) => CaseKind::Reduction(src),
    };
    FamilyCase {
        id: raw.id,
        pattern: raw.pattern,
        exps: raw.exps,
        conjectural: raw.conjectural,
        kind,
        free_loci: raw
            .free_loci
            .iter()
            .map(|(p, q)| QuadraticFactor::new(parse_rational(p).unwrap(), parse_rational(q).unwrap()))
            .collect(),
        raw,
    }
}

fn build_branch(raw: &RawCase, b: &'static RawBranch) -> Branch {
    let other = RatFn::parse(b.other, b.param).expect("catalog coordinate");
    let (p, q) = coords(b.param, &other);
    Branch {
        param: b.param,
        a: derive_a(&forms_along(raw.pattern, raw.exps, &p, &q)),
        other,
        printed: b.printed,
        raw: b,
    }
}

/// `(p(t), q(t))` for a branch.
fn coords(param: char, other: &RatFn) -> (RatFn, RatFn) {
    if param == 'p' {
        (RatFn::t(), other.clone())
    } else {
        (other.clone(), RatFn::t())
    }
}

fn forms_along(pattern: CoefficientPattern, exps: (u32, u32, u32), p: &RatFn, q: &RatFn) -> LinearForms<RatFn> {
    let n = exps.0 as usize;
    let mut tab = vec![(RatFn::zero(), RatFn::one()), (RatFn::one(), RatFn::zero())];
    for i in 2..=n {
        let (a1, b1) = &tab[i - 1];
        let (a2, b2) = &tab[i - 2];
        let next = (-(p * a1) - q * a2, -(p * b1) - q * b2);
        tab.push(next);
    }
    linear_forms(
        pattern,
        exps,
        |i| tab[i].0.clone(),
        |i| tab[i].1.clone(),
        RatFn::zero(),
        RatFn::one(),
    )
}

fn derive_a(f: &LinearForms<RatFn>) -> Result<RatFn, String> {
    let from_const = || {
        if f.c1.is_zero() {
            return Err("a is not determined along the branch".to_string());
        }
        Ok((-f.c0.clone()).checked_div(f.c1.clone()).unwrap())
    };
    let a = if !f.l1.is_zero() {
        (-f.l0.clone()).checked_div(f.l1.clone()).unwrap()
    } else if f.l0.is_zero() {
        from_const()?
    } else {
        return Err("the x-coefficient of the remainder never vanishes".into());
    };
    if (&f.c0 + &(&a * &f.c1)).is_zero() {
        Ok(a)
    } else {
        Err("the branch does not satisfy the elimination condition".into())
    }
}

impl Branch {
    /// The solution at parameter `t`, or why there is none.
    pub fn at(&self, case: &FamilyCase, t: &Rational) -> Result<SweepHit, String> {
        let o = self.other.eval(t).ok_or("pole of the coordinate formula")?;
        let (p, q) = if self.param == 'p' { (t.clone(), o) } else { (o, t.clone()) };
        if q.is_zero() {
            return Err("q = 0".into());
        }
        match solve_a(case.pattern, case.exps, &p, &q) {
            ASolution::Unique(a) if a.is_zero() => Err("a = 0".into()),
            ASolution::Unique(a) => Ok(SweepHit {
                factor: QuadraticFactor::new(p, q),
                a,
            }),
            ASolution::Free => Err("the factor divides for every a".into()),
            ASolution::None => Err("no a makes the factor divide".into()),
        }
    }

    /// Parameter values where the branch formulas degenerate and the
    /// point is not a solution.
    pub fn computed_exclusions(&self, case: &FamilyCase) -> Vec<Rational> {
        let (p, q) = coords(self.param, &self.other);
        let l1 = forms_along(case.pattern, case.exps, &p, &q).l1;
        let mut polys = vec![self.other.den(), l1.num()];
        if self.param == 'p' {
            polys.push(self.other.num());
        }
        if let Ok(a) = &self.a {
            polys.extend([a.num(), a.den()]);
        }
        let mut cands: Vec<Rational> = polys
            .into_iter()
            .filter(|f| !f.is_zero())
            .flat_map(|f| f.rational_roots().roots)
            .collect();
        if self.param == 'q' {
            cands.push(Rational::zero());
        }
        cands.sort_by(canonical_cmp);
        cands.dedup();
        cands.retain(|t| self.at(case, t).is_err());
        cands
    }

    pub fn describe(&self) -> String {
        let other = if self.param == 'p' { 'q' } else { 'p' };
        let a = match &self.a {
            Ok(a) => a.render(&self.param.to_string()),
            Err(e) => format!("<{e}>"),
        };
        format!("{other} = {}, a = {a}", self.other.render(&self.param.to_string()))
    }
}

fn sort_dedup(hits: &mut Vec<SweepHit>) {
    hits.sort_by(|x, y| x.factor.canonical_cmp(&y.factor).then_with(|| canonical_cmp(&x.a, &y.a)));
    hits.dedup();
}

/// A member of a parametric case (or a reduction of one) at parameter `t`.
/// Tries the printed branches first.
pub fn family_member(id: &str, t: &Rational) -> Result<FamilyMember, Error> {
    family_members(id, t)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("empty member list".into()))
}

/// Members from every branch valid at `t`.
pub fn family_members(id: &str, t: &Rational) -> Result<Vec<FamilyMember>, Error> {
    let c = case(id)?;
    match &c.kind {
        CaseKind::Parametric {
            param,
            branches,
            excluded,
        } => {
            let excluded_err = |reason: String| Error::Excluded {
                id: c.id.to_string(),
                value: format!("{param} = {t}"),
                reason,
            };
            if excluded.contains(t) {
                return Err(excluded_err("excluded by the statement".into()));
            }
            let mut order: Vec<usize> = (0..branches.len()).filter(|&i| branches[i].param == *param).collect();
            order.sort_by_key(|&i| !branches[i].printed);
            let mut out = Vec::new();
            let mut first_reason = None;
            for i in order {
                match branches[i].at(c, t) {
                    Ok(hit) => {
                        let mut m = FamilyMember::build(c, &hit)?;
                        m.branch = Some(i);
                        m.param = Some(t.clone());
                        out.push(m);
                    }
                    Err(e) => {
                        first_reason.get_or_insert(e);
                    }
                }
            }
            if out.is_empty() {
                return Err(excluded_err(first_reason.unwrap_or_default()));
            }
            Ok(out)
        }
        CaseKind::Reduction(src) => family_members(src, t)?
            .iter()
            .map(|m| reverse_member(c, m))
            .collect(),
        _ => Err(Error::NotParametric(c.id.to_string())),
    }
}

fn reverse_hit(target: &FamilyCase, hit: &SweepHit) -> Result<SweepHit, Error> {
    // the source has exponents (n, n-k, n-m) and the same pattern
    let (n, m, k) = target.exps;
    let src = Quadrinomial::from_pattern(target.pattern, n, n - k, n - m, &hit.a)?;
    let rev = src.reversed_normalized();
    let a = target
        .pattern
        .parameter_of(&rev)
        .ok_or_else(|| Error::Internal(format!("{}: reversal leaves the pattern", target.id)))?;
    let factor = hit.factor.reversed();
    match solve_a(target.pattern, target.exps, &factor.p, &factor.q) {
        ASolution::Unique(b) if b == a => Ok(SweepHit { factor, a }),
        other => Err(Error::Internal(format!(
            "{}: reversed factor {factor} gives {other:?}, expected a = {a}",
            target.id
        ))),
    }
}

fn reverse_member(target: &FamilyCase, m: &FamilyMember) -> Result<FamilyMember, Error> {
    let hit = reverse_hit(target, &m.hit())?;
    let mut out = FamilyMember::build(target, &hit)?;
    out.branch = m.branch;
    out.param = m.param.clone();
    Ok(out)
}

/// The stated solutions of an isolated or empty case, re-verified.
pub fn isolated_solutions(id: &str) -> Result<Vec<FamilyMember>, Error> {
    let c = case(id)?;
    let hits = match &c.kind {
        CaseKind::Isolated(hits) => hits.clone(),
        CaseKind::Empty => Vec::new(),
        CaseKind::Parametric { .. } => return Err(Error::NeedsParameter(c.id.to_string())),
        CaseKind::Curve(cid) => crate::curves::get(cid)?.known_solutions()?,
        CaseKind::Reduction(src) => {
            let mut hits = Vec::new();
            for m in isolated_solutions(src)? {
                hits.push(reverse_hit(c, &m.hit())?);
            }
            hits
        }
    };
    let mut out = hits.iter().map(|h| FamilyMember::build(c, h)).collect::<Result<Vec<_>, _>>()?;
    for m in &mut out {
        m.conjectural = c.conjectural || effective_conjectural(c);
    }
    Ok(out)
}

/// Conjecturality, inherited through reductions.
pub fn effective_conjectural(c: &FamilyCase) -> bool {
    c.conjectural
        || match c.kind {
            CaseKind::Reduction(src) => case(src).map(effective_conjectural).unwrap_or(false),
            _ => false,
        }
}

/// Every known solution with `height(p) <= hp` and `height(q) <= hq`.
pub fn members_in_box(c: &FamilyCase, hp: u64, hq: u64) -> Result<Vec<SweepHit>, Error> {
    let in_box = |h: &SweepHit| height_u64(&h.factor.p) <= hp && height_u64(&h.factor.q) <= hq;
    let mut hits: Vec<SweepHit> = match &c.kind {
        CaseKind::Parametric { branches, .. } => {
            let mut out = Vec::new();
            for b in branches {
                let bound = if b.param == 'p' { hp } else { hq };
                out.extend(
                    rationals_up_to_height(bound)
                        .iter()
                        .filter_map(|t| b.at(c, t).ok())
                        .filter(|h| in_box(h)),
                );
            }
            out
        }
        CaseKind::Isolated(hits) => hits.iter().filter(|h| in_box(h)).cloned().collect(),
        CaseKind::Empty => Vec::new(),
        CaseKind::Curve(cid) => crate::curves::get(cid)?.solutions_in_box(hp, hq)?,
        CaseKind::Reduction(src) => {
            let src = case(src)?;
            let mut out = Vec::new();
            for h in members_in_box(src, hp.saturating_mul(hq), hq)? {
                let r = reverse_hit(c, &h)?;
                if in_box(&r) {
                    out.push(r);
                }
            }
            out
        }
    };
    sort_dedup(&mut hits);
    Ok(hits)
}

pub fn members_within(c: &FamilyCase, h: u64) -> Result<Vec<SweepHit>, Error> {
    members_in_box(c, h, h)
}

enum PointCheck {
    Valid(SweepHit),
    Corrected { hit: SweepHit, detail: String, printed: String },
    Invalid(String),
}

impl PointCheck {
    fn hit(&self) -> Option<&SweepHit> {
        match self {
            PointCheck::Valid(h) | PointCheck::Corrected { hit: h, .. } => Some(h),
            PointCheck::Invalid(_) => None,
        }
    }
}

fn show_hit(h: &SweepHit) -> String {
    format!("(p, q, a) = ({}, {}, {})", h.factor.p, h.factor.q, h.a)
}

/// Checks a printed `(a, p, q)`. A wrong `a` is corrected from `(p, q)`;
/// a wrong `(p, q)` is corrected from the factors of `f(a)` when unique.
fn check_point(pattern: CoefficientPattern, exps: (u32, u32, u32), pt: &RawPoint) -> PointCheck {
    let (Ok(a), Ok(p), Ok(q)) = (parse_rational(pt.a), parse_rational(pt.p), parse_rational(pt.q)) else {
        return PointCheck::Invalid(format!("unparsable point {}, {}, {}", pt.a, pt.p, pt.q));
    };
    let printed = format!("(p, q, a) = ({p}, {q}, {a})");
    if !q.is_zero() {
        if let ASolution::Unique(b) = solve_a(pattern, exps, &p, &q) {
            let hit = SweepHit {
                factor: QuadraticFactor::new(p.clone(), q.clone()),
                a: b.clone(),
            };
            if b == a {
                return PointCheck::Valid(hit);
            }
            if !b.is_zero() {
                return PointCheck::Corrected {
                    detail: format!("at (p, q) = ({p}, {q}) the divisibility conditions give a = {b}, not {a}"),
                    hit,
                    printed,
                };
            }
        }
    }
    let (n, m, k) = exps;
    let Ok(f) = Quadrinomial::from_pattern(pattern, n, m, k, &a) else {
        return PointCheck::Invalid(format!("a = {a} does not give a quadrinomial"));
    };
    let found = find_quadratic_factors(&f);
    match found.factors.as_slice() {
        [only] => PointCheck::Corrected {
            detail: format!(
                "{} does not divide {f}; its only quadratic factor is {}",
                QuadraticFactor::new(p.clone(), q.clone()),
                only.factor
            ),
            hit: SweepHit {
                factor: only.factor.clone(),
                a,
            },
            printed,
        },
        _ => PointCheck::Invalid(format!("{printed} is not a solution and cannot be repaired")),
    }
}

fn quadrinomial_rx(pattern: CoefficientPattern, (n, m, k): (u32, u32, u32), a: &RatFn) -> RxPoly {
    let coeff = |tied: bool| if tied { a.clone() } else { RatFn::one() };
    let [tm, tk, tc] = pattern.tied();
    RxPoly::monomial(RatFn::one(), n as usize)
        + RxPoly::monomial(coeff(tm), m as usize)
        + RxPoly::monomial(coeff(tk), k as usize)
        + RxPoly::constant(coeff(tc))
}

fn show_label((n, m, k): (u32, u32, u32)) -> String {
    let pow = |e: u32| if e == 1 { "x".to_string() } else { format!("x^{e}") };
    format!("{} + a {} + b {} + c", pow(n), pow(m), pow(k))
}

fn product_rx(factors: &[&str], param: Option<char>) -> Result<RxPoly, Error> {
    factors
        .iter()
        .try_fold(RxPoly::constant(RatFn::one()), |acc, f| Ok(acc * RxPoly::parse(f, param)?))
}

fn check_label(entry: &mut ReportEntry, c: &FamilyCase, ident: &RawIdentity, what: &str) {
    if ident.label != c.exps {
        entry.flag(
            DiscrepancyKind::Label,
            format!("{what} is displayed with the exponents of a different case"),
            show_label(ident.label),
            show_label(c.exps),
        );
    }
}

fn verify_parametric(entry: &mut ReportEntry, c: &FamilyCase, branches: &[Branch], excluded: &[Rational]) {
    for (i, b) in branches.iter().enumerate() {
        let ps = b.param.to_string();
        let a = match &b.a {
            Ok(a) => a,
            Err(e) => {
                entry.fail(format!("branch {i} ({} = {}): {e}", other_of(b.param), b.other.render(&ps)));
                continue;
            }
        };
        let parse = |s: &str| RatFn::parse(s, b.param);
        let (p, q) = coords(b.param, &b.other);
        let quad = RxPoly::monomial(RatFn::one(), 2) + RxPoly::monomial(p, 1) + RxPoly::constant(q);
        let f_true = quadrinomial_rx(c.pattern, c.exps, a);
        let Some((cof, rem)) = f_true.divmod(&quad) else {
            entry.fail("zero quadratic");
            continue;
        };
        if !rem.is_zero() {
            entry.fail(format!("branch {i}: remainder {} does not vanish", rem.render(&ps)));
            continue;
        }
        entry.computed.push(format!(
            "{}: ({}) * ({})",
            b.describe(),
            quad.render(&ps),
            cof.render(&ps)
        ));

        if !b.printed {
            match parse(b.raw.a) {
                Ok(x) if &x == a => {}
                _ => entry.fail(format!("branch {i}: catalog value of a disagrees with the derivation")),
            }
            entry.flag(
                DiscrepancyKind::OmittedBranch,
                "the statement leaves out this component of the solution set",
                "",
                b.describe(),
            );
            continue;
        }
        entry.printed.push(format!("{} = {}, a = {}", other_of(b.param), b.raw.other, b.raw.a));

        let stated = parse(b.raw.a);
        let proof_a = b.raw.proof_a.map(parse);
        let stated_ok = matches!(&stated, Ok(x) if x == a);
        let proof_ok = proof_a.as_ref().map(|r| matches!(r, Ok(x) if x == a));
        if !stated_ok || proof_ok == Some(false) {
            let mut printed = format!("statement: a = {}", b.raw.a);
            if let Some(pa) = b.raw.proof_a {
                printed.push_str(&format!("; proof: a = {pa}"));
            }
            let detail = match (stated_ok, proof_ok) {
                (false, Some(true)) => "the statement disagrees with the value its proof derives",
                (true, Some(false)) => "the proof ends with a value that disagrees with the statement",
                _ => "the printed value of a does not satisfy the divisibility conditions",
            };
            entry.flag(DiscrepancyKind::StatedValue, detail, printed, format!("a = {}", a.render(&ps)));
        }
        if let Some(po) = b.raw.proof_other {
            if !matches!(parse(po), Ok(x) if x == b.other) {
                entry.flag(
                    DiscrepancyKind::StatedValue,
                    "the proof substitutes a different branch curve than the statement",
                    format!("proof: {} = {po}", other_of(b.param)),
                    format!("{} = {}", other_of(b.param), b.other.render(&ps)),
                );
            }
        }

        if let Some(ident) = &b.raw.identity {
            check_label(entry, c, ident, "the factorization");
            match product_rx(ident.factors, Some(b.param)) {
                Err(e) => entry.fail(format!("branch {i}: printed factor unparsable: {e}")),
                Ok(prod) if prod == f_true => {}
                Ok(prod) => match prod.divmod(&quad) {
                    Some((printed_cof, r)) if r.is_zero() => entry.flag(
                        DiscrepancyKind::Cofactor,
                        "the printed cofactor differs from the exact quotient",
                        printed_cof.render(&ps),
                        cof.render(&ps),
                    ),
                    _ => entry.fail(format!(
                        "branch {i}: printed product {} is not the quadrinomial",
                        prod.render(&ps)
                    )),
                },
            }
        }
    }

    let over: Vec<String> = excluded
        .iter()
        .filter(|t| branches.iter().any(|b| b.printed && b.at(c, t).is_ok()))
        .map(|t| t.to_string())
        .collect();
    if !over.is_empty() {
        let param = branches.first().map_or('t', |b| b.param);
        entry.flag(
            DiscrepancyKind::Exclusion,
            "excluded parameter values that still give valid factorizations",
            format!("{param} != {}", over.join(", ")),
            format!("valid at {param} = {}", over.join(", ")),
        );
    }
    for b in branches.iter().filter(|b| b.printed) {
        let ex = b.computed_exclusions(c);
        if !ex.is_empty() {
            entry.computed.push(format!(
                "{}: invalid at {} = {}",
                b.describe(),
                b.param,
                ex.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
            ));
        }
    }
}

fn other_of(param: char) -> char {
    if param == 'p' {
        'q'
    } else {
        'p'
    }
}

fn verify_isolated(entry: &mut ReportEntry, c: &FamilyCase, points: &[RawPoint], identities: &[RawIdentity]) {
    let mut valid = Vec::new();
    for pt in points {
        entry.printed.push(format!("(p, q, a) = ({}, {}, {})", pt.p, pt.q, pt.a));
        match check_point(c.pattern, c.exps, pt) {
            PointCheck::Valid(h) => valid.push(h),
            PointCheck::Corrected { hit, detail, printed } => {
                entry.flag(DiscrepancyKind::StatedValue, detail, printed, show_hit(&hit));
                valid.push(hit);
            }
            PointCheck::Invalid(msg) => entry.fail(msg),
        }
    }
    let (n, m, k) = c.exps;
    for h in &valid {
        let f = Quadrinomial::from_pattern(c.pattern, n, m, k, &h.a).expect("verified");
        let cof = f.to_upoly().exact_div(&h.factor.to_upoly()).ok().flatten();
        match cof {
            Some(cof) => entry.computed.push(format!("{f} = ({}) * ({cof})", h.factor)),
            None => entry.fail(format!("{} does not divide {f}", h.factor)),
        }
    }
    for ident in identities {
        let prod = match product_rx(ident.factors, None).map(|p| p.specialize(&Rational::zero())) {
            Ok(Some(p)) => p,
            _ => {
                entry.fail(format!("unparsable identity factors {:?}", ident.factors));
                continue;
            }
        };
        let matched = valid.iter().any(|h| {
            Quadrinomial::from_pattern(c.pattern, n, m, k, &h.a).is_ok_and(|f| f.to_upoly() == prod)
        });
        if !matched {
            entry.fail(format!("identity product {prod} matches no verified solution"));
        }
        check_label(entry, c, ident, &format!("the factorization of {prod}"));
    }
}

fn verify_empty(entry: &mut ReportEntry, c: &FamilyCase) {
    const H: u64 = 6;
    match pattern_sweep(c.pattern, c.exps, H) {
        Ok(r) if r.hits.is_empty() => entry
            .computed
            .push(format!("no quadratic factor with height(p), height(q) <= {H}")),
        Ok(r) => entry.fail(format!("stated empty, but found {}", show_hit(&r.hits[0]))),
        Err(e) => entry.fail(e.to_string()),
    }
}

fn verify_curve(entry: &mut ReportEntry, c: &FamilyCase, cid: &str) {
    let curve = match crate::curves::get(cid) {
        Ok(cv) => cv,
        Err(e) => return entry.fail(e.to_string()),
    };
    if curve.target() != Some((c.pattern, c.exps)) {
        entry.fail(format!("curve {cid} does not parameterize {} {:?}", c.pattern, c.exps));
        return;
    }
    match curve.known_solutions() {
        Ok(hits) => {
            entry.computed.push(format!("solutions lie on curve {cid}"));
            entry.computed.extend(hits.iter().map(show_hit));
        }
        Err(e) => entry.fail(e.to_string()),
    }
}

fn verify_reduction(entry: &mut ReportEntry, c: &FamilyCase, src: &str) {
    let s = match case(src) {
        Ok(s) => s,
        Err(e) => return entry.fail(e.to_string()),
    };
    let (n, m, k) = s.exps;
    if s.pattern != c.pattern || c.exps != (n, n - k, n - m) {
        entry.fail(format!("{src} does not reverse onto this case"));
        return;
    }
    match members_in_box(s, 8, 8) {
        Ok(hits) => {
            let mapped: Result<Vec<_>, _> = hits.iter().map(|h| reverse_hit(c, h)).collect();
            match mapped {
                Ok(v) => entry.computed.push(format!(
                    "reversal of {src}; {} source solutions of height <= 8 map to solutions",
                    v.len()
                )),
                Err(e) => entry.fail(e.to_string()),
            }
        }
        Err(e) => entry.fail(e.to_string()),
    }
}

fn verify_case(c: &FamilyCase) -> ReportEntry {
    let mut entry = ReportEntry::new(c.id);
    match (&c.kind, &c.raw.kind) {
        (CaseKind::Parametric { branches, excluded, .. }, _) => verify_parametric(&mut entry, c, branches, excluded),
        (CaseKind::Isolated(_), RawKind::Isolated { points, identities }) => {
            verify_isolated(&mut entry, c, points, identities)
        }
        (CaseKind::Empty, _) => verify_empty(&mut entry, c),
        (CaseKind::Curve(cid), _) => verify_curve(&mut entry, c, cid),
        (CaseKind::Reduction(src), _) => verify_reduction(&mut entry, c, src),
        _ => entry.fail("inconsistent catalog entry"),
    }
    for fl in &c.free_loci {
        if solve_a(c.pattern, c.exps, &fl.p, &fl.q) == ASolution::Free {
            entry.flag(
                DiscrepancyKind::OmittedUniversalLocus,
                "this factor divides the quadrinomial for every a",
                "",
                fl.to_string(),
            );
        } else {
            entry.fail(format!("{fl} is not a universal factor"));
        }
    }
    entry.finish()
}

/// The full regression report: every catalog case, then every curve.
pub fn verify_paper() -> PaperReport {
    let mut entries: Vec<ReportEntry> = catalog().par_iter().map(verify_case).collect();
    entries.extend(crate::curves::verify_catalog());
    PaperReport::from_entries(entries)
}

/// Distinct `(pattern, exponents)` pairs covered by the catalog.
pub fn covered_cases() -> BTreeSet<(String, (u32, u32, u32))> {
    catalog().iter().map(|c| (c.pattern.to_string(), c.exps)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(s: &str) -> UPoly {
        UPoly::parse(s).unwrap()
    }

    #[test]
    fn catalog_is_well_formed() {
        assert_eq!(catalog().len(), 36);
        for c in catalog() {
            if let CaseKind::Parametric { branches, .. } = &c.kind {
                for b in branches {
                    assert!(b.a.is_ok(), "{}: {:?}", c.id, b.a);
                }
            }
            if let CaseKind::Reduction(src) = c.kind {
                assert!(case(src).is_ok());
            }
        }
        assert_eq!(covered_cases().len(), 36);
    }

    #[test]
    fn member_examples() {
        let m = family_member("T2.4.2", &int(2)).unwrap();
        assert_eq!(m.quadrinomial.to_upoly(), poly("x^4 + x^3 + x + 1"));
        assert_eq!(m.factor, QuadraticFactor::new(int(2), int(1)));
        assert_eq!(m.cofactor, poly("x^2 - x + 1"));

        let m = family_member("T2.3.1", &int(2)).unwrap();
        assert_eq!(m.quadrinomial.to_upoly(), poly("x^4 + 37/18 x^2 + x + 1"));
        assert_eq!(m.factor, QuadraticFactor::new(frac(-2, 3), int(2)));
        assert_eq!(m.cofactor, poly("x^2 + 2/3 x + 1/2"));

        let m = family_member("T3.3.3", &int(3)).unwrap();
        assert_eq!(m.quadrinomial.to_upoly(), poly("x^5 - 9x^3 + x^2 - 9"));
        assert_eq!(m.factor, QuadraticFactor::new(int(4), int(3)));
        assert_eq!(m.cofactor, poly("x^3 - 4x^2 + 4x - 3"));
    }

    #[test]
    fn member_errors() {
        for t in [0, 1, -1] {
            assert!(matches!(family_member("T2.3.1", &int(t)), Err(Error::Excluded { .. })));
        }
        assert!(matches!(family_member("T9.9.9", &int(1)), Err(Error::UnknownId(_))));
        assert!(matches!(family_member("T3.1.1", &int(1)), Err(Error::NotParametric(_))));
        assert!(matches!(isolated_solutions("T2.3.1"), Err(Error::NeedsParameter(_))));
    }

    #[test]
    fn isolated_examples() {
        let s = isolated_solutions("T3.1.1").unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].quadrinomial.to_upoly(), poly("x^5 - 3x^2 + x + 1"));
        assert_eq!(s[0].factor, QuadraticFactor::new(int(-2), int(1)));
        assert_eq!(s[0].cofactor, poly("x^3 + 2x^2 + 3x + 1"));
        assert!(!s[0].conjectural);

        let s = isolated_solutions("T3.1.4").unwrap();
        let mut a: Vec<_> = s.iter().map(|m| m.a.clone()).collect();
        a.sort();
        assert_eq!(a, vec![frac(-1055, 16), int(-2)]);
        assert!(s.iter().all(|m| m.conjectural));

        assert!(isolated_solutions("T2.3.3").unwrap().is_empty());
        // inherited through the reversal
        assert!(isolated_solutions("T3.4.5").unwrap().iter().all(|m| !m.conjectural));
        assert_eq!(isolated_solutions("T3.4.5").unwrap()[0].factor, QuadraticFactor::new(frac(-9, 5), frac(18, 5)));
    }

    fn random_param(rng: &mut ChaCha8Rng) -> Rational {
        let v: i64 = rng.gen_range(1..=100);
        let u: i64 = rng.gen_range(-100..=100);
        Rational::new(u.into(), v.into())
    }

    #[test]
    fn random_members_factor_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for c in catalog() {
            let parametric = matches!(c.kind, CaseKind::Parametric { .. })
                || matches!(c.kind, CaseKind::Reduction(s) if matches!(case(s).unwrap().kind, CaseKind::Parametric { .. }));
            if !parametric {
                continue;
            }
            let mut done = 0;
            while done < 50 {
                let t = random_param(&mut rng);
                let Ok(m) = family_member(c.id, &t) else { continue };
                let f = m.quadrinomial.to_upoly();
                assert_eq!(&m.factor.to_upoly() * &m.cofactor, f, "{} at {t}", c.id);
                assert!(c.pattern.parameter_of(&m.quadrinomial).is_some());
                done += 1;
            }
        }
    }

    #[test]
    fn reductions_land_in_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for c in catalog() {
            let CaseKind::Reduction(src) = c.kind else { continue };
            if !matches!(case(src).unwrap().kind, CaseKind::Parametric { .. }) {
                continue;
            }
            let mut done = 0;
            while done < 20 {
                let t = random_param(&mut rng);
                let Ok(m) = family_member(src, &t) else { continue };
                let rev = m.quadrinomial.reversed_normalized();
                let a = c.pattern.parameter_of(&rev).unwrap();
                assert_eq!((rev.n, rev.m, rev.k), c.exps);
                assert!(rev.to_upoly().exact_div(&m.factor.reversed().to_upoly()).unwrap().is_some());
                assert_eq!(solve_a(c.pattern, c.exps, &m.factor.reversed().p, &m.factor.reversed().q), ASolution::Unique(a));
                done += 1;
            }
        }
    }

    #[test]
    fn exclusions_extend_statement() {
        let c = case("T2.4.2").unwrap();
        let CaseKind::Parametric { branches, .. } = &c.kind else { panic!() };
        // a = (p^2 - 2)/p has no rational zero; p = 0 is the pole
        assert_eq!(branches[0].computed_exclusions(c), vec![int(0)]);
    }

    #[test]
    fn report_examples() {
        let entry = |id: &str| verify_case(case(id).unwrap());
        assert_eq!(entry("T3.1.1").status, report::Status::Pass);
        let e = entry("T2.3.1");
        assert_eq!(e.status, report::Status::PassWithDiscrepancy);
        assert_eq!(e.discrepancy.len(), 1);
        assert_eq!(e.discrepancy[0].kind, DiscrepancyKind::Cofactor);
        assert_eq!(entry("T3.3.4").status, report::Status::Pass);
        let e = entry("T3.4.3");
        assert!(e.discrepancy.iter().any(|d| d.kind == DiscrepancyKind::StatedValue && d.computed == "a = -p^3"));
    }
}

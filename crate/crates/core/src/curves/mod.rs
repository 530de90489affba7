//! The auxiliary curves whose rational points control the non-parametric
//! cases, with point search and the map from points back to factors.
//!
//! The catalog is a JSON file (`data/curves.json`, schema
//! `quadfactor-curves/1`); user files in the same schema load through
//! [`load_catalog`].

mod search;

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{canonical_cmp, canonical_cmp_pair, height_u64, parse_rational, Rational};
use crate::bipoly::BiPoly;
use crate::error::Error;
use crate::families::report::{DiscrepancyKind, ReportEntry};
use crate::parse::{parse_expr, Expr, ExprTarget};
use crate::ratfn::RatFn;
use crate::solver::{eliminate, solve_a, ASolution, CoefficientPattern, QuadraticFactor, SweepHit};
use crate::upoly::UPoly;

pub use search::{search_plane_curve, search_plane_curve_box, search_square_curve, square_root_at, CurvePoint};

pub const SCHEMA: &str = "quadfactor-curves/1";
const BUILTIN: &str = include_str!("../../data/curves.json");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    schema: String,
    curves: Vec<RawCurve>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    id: String,
    #[serde(default)]
    provenance: String,
    status: CurveStatus,
    form: RawForm,
    #[serde(default)]
    points: Vec<[String; 2]>,
    map: Option<RawMap>,
    printed_map: Option<RawMap>,
    #[serde(default)]
    note: String,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum RawForm {
    Square(String),
    Plane(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    pattern: String,
    exponents: [u32; 3],
    p: Option<String>,
    q: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveStatus {
    /// The listed points are all of them.
    Complete,
    /// The listed points are believed, not proved, to be all of them.
    Conjectural,
    /// Infinitely many points; the list is a sample.
    Infinite,
}

#[derive(Debug, Clone)]
pub enum CurveForm {
    /// `r^2 = f(t)`.
    Square(UPoly),
    /// `F(p, q) = 0`.
    Plane(BiPoly),
}

impl CurveForm {
    pub fn contains(&self, pt: &CurvePoint) -> bool {
        match self {
            CurveForm::Square(f) => f.eval(&pt.0) == &pt.1 * &pt.1,
            CurveForm::Plane(f) => f.eval_at(&pt.0, &pt.1).is_zero(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            CurveForm::Square(f) => format!("r^2 = {}", f.render("t")),
            CurveForm::Plane(f) => format!("{} = 0", f.render()),
        }
    }
}

/// A printed point after checking it against the equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointCheck {
    Valid(CurvePoint),
    /// Not on the curve, but the same `t` carries a rational point.
    Corrected { printed: CurvePoint, point: CurvePoint },
    Invalid(CurvePoint),
}

/// Which coordinate the map pins to `t`, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pinned {
    P,
    Q,
}

#[derive(Debug, Clone)]
pub struct PointMap {
    pub pattern: CoefficientPattern,
    pub exps: (u32, u32, u32),
    /// `p` and `q` in terms of `t` and `r`; absent for plane curves.
    pub p: Option<String>,
    pub q: Option<String>,
    exprs: Option<(Expr, Expr)>,
    condition: BiPoly,
}

impl PointMap {
    fn from_raw(raw: &RawMap) -> Result<Self, Error> {
        let pattern: CoefficientPattern = raw.pattern.parse()?;
        let [n, m, k] = raw.exponents;
        let exprs = match (&raw.p, &raw.q) {
            (Some(p), Some(q)) => Some((parse_expr(p)?, parse_expr(q)?)),
            (None, None) => None,
            _ => return Err(Error::CurveData("a map needs both p and q".into())),
        };
        Ok(PointMap {
            pattern,
            exps: (n, m, k),
            p: raw.p.clone(),
            q: raw.q.clone(),
            exprs,
            condition: eliminate(pattern, (n, m, k))?.condition,
        })
    }

    fn pinned(&self) -> Option<Pinned> {
        let is_t = |s: &Option<String>| s.as_deref().map(str::trim) == Some("t");
        if is_t(&self.p) {
            Some(Pinned::P)
        } else if is_t(&self.q) {
            Some(Pinned::Q)
        } else {
            None
        }
    }

    fn eval_at(&self, t: &Rational, r: &Rational) -> Option<(Rational, Rational)> {
        let (pe, qe) = self.exprs.as_ref()?;
        let vars = |name: char, pos: usize| match name {
            't' => Ok(t.clone()),
            'r' => Ok(r.clone()),
            _ => Err(Error::parse(pos, format!("unknown variable {name:?}"))),
        };
        Some((pe.eval(&vars).ok()?, qe.eval(&vars).ok()?))
    }

    fn symbolic(&self, f: &UPoly) -> Result<(Sqrt, Sqrt), Error> {
        let (pe, qe) = self
            .exprs
            .as_ref()
            .ok_or_else(|| Error::CurveData("plane curves have no symbolic map".into()))?;
        let f = RatFn::from_poly(f.clone());
        let vars = |name: char, pos: usize| match name {
            't' => Ok(Sqrt::new(RatFn::t(), RatFn::zero(), &f)),
            'r' => Ok(Sqrt::new(RatFn::zero(), RatFn::one(), &f)),
            _ => Err(Error::parse(pos, format!("unknown variable {name:?}"))),
        };
        Ok((pe.eval(&vars)?, qe.eval(&vars)?))
    }

    /// Whether the map sends the whole curve into the divisibility condition.
    fn parameterizes(&self, f: &UPoly) -> Result<bool, Error> {
        let (p, q) = self.symbolic(f)?;
        let mut acc = Sqrt::constant(Rational::zero());
        for (i, j, c) in self.condition.terms() {
            let mut term = Sqrt::constant(c.clone());
            for _ in 0..i {
                term = term * p.clone();
            }
            for _ in 0..j {
                term = term * q.clone();
            }
            acc = acc + term;
        }
        Ok(acc.a.is_zero() && acc.b.is_zero())
    }

    /// Parameter values where the map has a pole.
    fn poles(&self, f: &UPoly) -> Vec<Rational> {
        let Ok((p, q)) = self.symbolic(f) else {
            return Vec::new();
        };
        let mut out: Vec<Rational> = [&p.a, &p.b, &q.a, &q.b]
            .iter()
            .filter(|x| !x.den().is_constant())
            .flat_map(|x| x.den().rational_roots().roots)
            .collect();
        out.sort_by(canonical_cmp);
        out.dedup();
        out
    }

    /// Solutions with the pinned coordinate equal to `t`, straight from the
    /// condition; used where the map itself is undefined.
    fn pinned_solutions(&self, t: &Rational) -> Vec<(Rational, Rational)> {
        let (g, pin) = match self.pinned() {
            Some(Pinned::P) => (self.condition.eval_p(t), Pinned::P),
            Some(Pinned::Q) => (self.condition.eval_q(t), Pinned::Q),
            None => return Vec::new(),
        };
        if g.is_zero() {
            return Vec::new();
        }
        g.rational_roots()
            .roots
            .into_iter()
            .map(|x| match pin {
                Pinned::P => (t.clone(), x),
                Pinned::Q => (x, t.clone()),
            })
            .collect()
    }

    fn solution(&self, p: Rational, q: Rational) -> Option<SweepHit> {
        if q.is_zero() {
            return None;
        }
        match solve_a(self.pattern, self.exps, &p, &q) {
            ASolution::Unique(a) if !a.is_zero() => Some(SweepHit {
                factor: QuadraticFactor::new(p, q),
                a,
            }),
            _ => None,
        }
    }
}

/// `a + b r` in `Q(t)[r] / (r^2 - f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Sqrt {
    a: RatFn,
    b: RatFn,
    /// `None` only for constants, which never need it.
    f: Option<RatFn>,
}

impl Sqrt {
    fn new(a: RatFn, b: RatFn, f: &RatFn) -> Self {
        Sqrt { a, b, f: Some(f.clone()) }
    }

    fn modulus(&self, other: &Sqrt) -> Option<RatFn> {
        self.f.clone().or_else(|| other.f.clone())
    }

    fn conj(&self) -> Sqrt {
        Sqrt {
            a: self.a.clone(),
            b: -&self.b,
            f: self.f.clone(),
        }
    }
}

impl Add for Sqrt {
    type Output = Sqrt;
    fn add(self, rhs: Sqrt) -> Sqrt {
        Sqrt {
            f: self.modulus(&rhs),
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for Sqrt {
    type Output = Sqrt;
    fn sub(self, rhs: Sqrt) -> Sqrt {
        self + (-rhs)
    }
}

impl Neg for Sqrt {
    type Output = Sqrt;
    fn neg(self) -> Sqrt {
        Sqrt {
            a: -&self.a,
            b: -&self.b,
            f: self.f,
        }
    }
}

impl Mul for Sqrt {
    type Output = Sqrt;
    fn mul(self, rhs: Sqrt) -> Sqrt {
        let f = self.modulus(&rhs);
        let bb = &self.b * &rhs.b;
        let a = match &f {
            Some(f) => &(&self.a * &rhs.a) + &(&bb * f),
            None => &self.a * &rhs.a,
        };
        Sqrt {
            a,
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.a),
            f,
        }
    }
}

impl ExprTarget for Sqrt {
    fn constant(c: Rational) -> Self {
        Sqrt {
            a: RatFn::constant(c),
            b: RatFn::zero(),
            f: None,
        }
    }

    fn checked_div(self, rhs: Self) -> Option<Self> {
        let f = self.modulus(&rhs).unwrap_or_else(RatFn::zero);
        let norm = &(&rhs.a * &rhs.a) - &(&(&rhs.b * &rhs.b) * &f);
        let inv = norm.recip()?;
        let num = self * rhs.conj();
        Some(Sqrt {
            a: &num.a * &inv,
            b: &num.b * &inv,
            f: num.f,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub id: String,
    pub provenance: String,
    pub status: CurveStatus,
    pub form: CurveForm,
    pub checks: Vec<PointCheck>,
    /// Verified points (printed ones, corrected where possible), canonical order.
    pub points: Vec<CurvePoint>,
    pub map: Option<PointMap>,
    pub printed_map: Option<PointMap>,
    pub note: String,
}

fn check_point(form: &CurveForm, pt: CurvePoint) -> PointCheck {
    let pt = match form {
        CurveForm::Square(_) => CurvePoint(pt.0, pt.1.abs()),
        CurveForm::Plane(_) => pt,
    };
    if form.contains(&pt) {
        return PointCheck::Valid(pt);
    }
    match form {
        CurveForm::Square(f) => match square_root_at(f, &pt.0) {
            Some(r) => PointCheck::Corrected {
                point: CurvePoint(pt.0.clone(), r),
                printed: pt,
            },
            None => PointCheck::Invalid(pt),
        },
        CurveForm::Plane(_) => PointCheck::Invalid(pt),
    }
}

impl CurveSpec {
    fn from_raw(raw: RawCurve) -> Result<Self, Error> {
        let ctx = |e: Error| Error::CurveData(format!("{}: {e}", raw.id));
        let form = match &raw.form {
            RawForm::Square(s) => CurveForm::Square(parse_in_t(s).map_err(ctx)?),
            RawForm::Plane(s) => CurveForm::Plane(BiPoly::parse(s).map_err(ctx)?),
        };
        let mut checks = Vec::new();
        for [x, y] in &raw.points {
            let pt = CurvePoint(parse_rational(x).map_err(ctx)?, parse_rational(y).map_err(ctx)?);
            checks.push(check_point(&form, pt));
        }
        let mut points: Vec<CurvePoint> = checks
            .iter()
            .filter_map(|c| match c {
                PointCheck::Valid(p) | PointCheck::Corrected { point: p, .. } => Some(p.clone()),
                PointCheck::Invalid(_) => None,
            })
            .collect();
        sort_points(&form, &mut points);
        points.dedup();
        let map = raw.map.as_ref().map(PointMap::from_raw).transpose().map_err(ctx)?;
        let printed_map = raw.printed_map.as_ref().map(PointMap::from_raw).transpose().map_err(ctx)?;
        for m in map.iter().chain(&printed_map) {
            if matches!(form, CurveForm::Square(_)) != m.exprs.is_some() {
                return Err(ctx(Error::CurveData(
                    "square curves need p and q formulas, plane curves none".into(),
                )));
            }
        }
        Ok(CurveSpec {
            id: raw.id,
            provenance: raw.provenance,
            status: raw.status,
            form,
            checks,
            points,
            map,
            printed_map,
            note: raw.note,
        })
    }

    /// The `(pattern, exponents)` case whose solutions the curve carries.
    pub fn target(&self) -> Option<(CoefficientPattern, (u32, u32, u32))> {
        self.map.as_ref().map(|m| (m.pattern, m.exps))
    }

    pub fn search(&self, h: u64) -> Vec<CurvePoint> {
        match &self.form {
            CurveForm::Square(f) => search_square_curve(f, h),
            CurveForm::Plane(f) => search_plane_curve(f, h),
        }
    }

    /// Both sign branches of each point, filtered to `q != 0`, `a != 0` and
    /// verified by the divisibility conditions. Sorted canonically.
    pub fn points_to_solutions(&self, points: &[CurvePoint]) -> Result<Vec<SweepHit>, Error> {
        let map = self.map.as_ref().ok_or_else(|| Error::NoMap(self.id.clone()))?;
        let mut out = Vec::new();
        for pt in points {
            if !self.form.contains(pt) {
                return Err(Error::CurveData(format!("{pt} is not on {}", self.id)));
            }
            if map.exprs.is_none() {
                out.extend(map.solution(pt.0.clone(), pt.1.clone()));
                continue;
            }
            for r in [pt.1.clone(), -&pt.1] {
                match map.eval_at(&pt.0, &r) {
                    Some((p, q)) => out.extend(map.solution(p, q)),
                    None => out.extend(
                        map.pinned_solutions(&pt.0)
                            .into_iter()
                            .filter_map(|(p, q)| map.solution(p, q)),
                    ),
                }
            }
        }
        sort_hits(&mut out);
        Ok(out)
    }

    pub fn known_solutions(&self) -> Result<Vec<SweepHit>, Error> {
        self.points_to_solutions(&self.points)
    }

    /// Every solution carried by the curve with `height(p) <= hp` and
    /// `height(q) <= hq`. Needs a map pinning `p` or `q` to `t` (or a plane
    /// curve), so that the bound transfers to the search.
    pub fn solutions_in_box(&self, hp: u64, hq: u64) -> Result<Vec<SweepHit>, Error> {
        let map = self.map.as_ref().ok_or_else(|| Error::NoMap(self.id.clone()))?;
        let in_box = |h: &SweepHit| height_u64(&h.factor.p) <= hp && height_u64(&h.factor.q) <= hq;
        let mut out = match &self.form {
            CurveForm::Plane(f) => self.points_to_solutions(&search_plane_curve_box(f, hp, hq))?,
            CurveForm::Square(f) => {
                let bound = match map.pinned() {
                    Some(Pinned::P) => hp,
                    Some(Pinned::Q) => hq,
                    None => {
                        return Err(Error::CurveData(format!(
                            "{}: the map pins neither p nor q, so heights do not transfer",
                            self.id
                        )))
                    }
                };
                let mut out = self.points_to_solutions(&search_square_curve(f, bound))?;
                for t in map.poles(f).iter().filter(|t| height_u64(t) <= bound) {
                    out.extend(map.pinned_solutions(t).into_iter().filter_map(|(p, q)| map.solution(p, q)));
                }
                out
            }
        };
        out.retain(|h| in_box(h));
        sort_hits(&mut out);
        Ok(out)
    }
}

fn parse_in_t(s: &str) -> Result<UPoly, Error> {
    let f = RatFn::parse(s, 't')?;
    if !f.den().is_constant() {
        return Err(Error::CurveData(format!("{s} is not a polynomial")));
    }
    Ok(f.num().scale(&f.den().coeff(0).recip()))
}

fn sort_points(form: &CurveForm, pts: &mut [CurvePoint]) {
    match form {
        CurveForm::Square(_) => pts.sort_by(|a, b| canonical_cmp(&a.0, &b.0).then_with(|| canonical_cmp(&a.1, &b.1))),
        CurveForm::Plane(_) => pts.sort_by(|a, b| canonical_cmp_pair((&a.0, &a.1), (&b.0, &b.1))),
    }
}

fn sort_hits(hits: &mut Vec<SweepHit>) {
    hits.sort_by(|x, y| x.factor.canonical_cmp(&y.factor).then_with(|| canonical_cmp(&x.a, &y.a)));
    hits.dedup();
}

/// Parses a curve file in the catalog schema.
pub fn load_catalog(json: &str) -> Result<Vec<CurveSpec>, Error> {
    let raw: RawFile = serde_json::from_str(json).map_err(|e| Error::CurveData(e.to_string()))?;
    if raw.schema != SCHEMA {
        return Err(Error::CurveData(format!("unsupported schema {:?}, expected {SCHEMA:?}", raw.schema)));
    }
    raw.curves.into_iter().map(CurveSpec::from_raw).collect()
}

pub fn catalog() -> &'static [CurveSpec] {
    static CATALOG: OnceLock<Vec<CurveSpec>> = OnceLock::new();
    CATALOG.get_or_init(|| load_catalog(BUILTIN).expect("built-in curve catalog"))
}

pub fn get(id: &str) -> Result<&'static CurveSpec, Error> {
    catalog()
        .iter()
        .find(|c| c.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

pub fn points_to_solutions(curve_id: &str, points: &[CurvePoint]) -> Result<Vec<SweepHit>, Error> {
    get(curve_id)?.points_to_solutions(points)
}

/// Report entry for one curve: printed points and the printed map against
/// the equation and the divisibility condition.
pub fn verify_curve(c: &CurveSpec) -> ReportEntry {
    let mut entry = ReportEntry::new(&c.id);
    entry.computed.push(c.form.render());
    for check in &c.checks {
        match check {
            PointCheck::Valid(p) => {
                entry.printed.push(p.to_string());
                entry.computed.push(p.to_string());
            }
            PointCheck::Corrected { printed, point } => {
                entry.printed.push(printed.to_string());
                entry.computed.push(point.to_string());
                entry.flag(
                    DiscrepancyKind::Point,
                    "the printed point is not on the curve; the same abscissa carries this one",
                    printed.to_string(),
                    point.to_string(),
                );
            }
            PointCheck::Invalid(p) => {
                entry.printed.push(p.to_string());
                entry.flag(
                    DiscrepancyKind::Point,
                    "the printed point is not on the curve and its abscissa carries no rational point",
                    p.to_string(),
                    "none",
                );
            }
        }
    }
    if let (CurveForm::Square(f), Some(m)) = (&c.form, &c.map) {
        match m.parameterizes(f) {
            Ok(true) => {}
            Ok(false) => entry.fail("the stored map does not land on the divisibility condition"),
            Err(e) => entry.fail(e.to_string()),
        }
    }
    if let (CurveForm::Square(f), Some(pm)) = (&c.form, &c.printed_map) {
        if !matches!(pm.parameterizes(f), Ok(true)) {
            let show = |m: &PointMap| {
                format!(
                    "p = {}, q = {}",
                    m.p.as_deref().unwrap_or(""),
                    m.q.as_deref().unwrap_or("")
                )
            };
            entry.flag(
                DiscrepancyKind::Map,
                "the printed back-substitution does not satisfy the divisibility condition",
                show(pm),
                c.map.as_ref().map(show).unwrap_or_default(),
            );
        }
    }
    if c.map.is_some() {
        match c.known_solutions() {
            Ok(hits) => entry.computed.extend(
                hits.iter()
                    .map(|h| format!("(p, q, a) = ({}, {}, {})", h.factor.p, h.factor.q, h.a)),
            ),
            Err(e) => entry.fail(e.to_string()),
        }
    }
    entry.finish()
}

pub fn verify_catalog() -> Vec<ReportEntry> {
    catalog().iter().map(verify_curve).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};

    fn pt(a: Rational, b: Rational) -> CurvePoint {
        CurvePoint(a, b)
    }

    #[test]
    fn catalog_loads_and_maps_check() {
        assert_eq!(catalog().len(), 21);
        for c in catalog() {
            if let (CurveForm::Square(f), Some(m)) = (&c.form, &c.map) {
                assert!(m.parameterizes(f).unwrap(), "{}", c.id);
            }
        }
        let c = get("C3.4.2").unwrap();
        let CurveForm::Square(f) = &c.form else { panic!() };
        assert!(!c.printed_map.as_ref().unwrap().parameterizes(f).unwrap());
    }

    #[test]
    fn printed_points_are_checked() {
        let c = get("C3.1.3").unwrap();
        assert!(c.checks.contains(&PointCheck::Corrected {
            printed: pt(frac(1, 6), frac(161, 6)),
            point: pt(frac(1, 6), frac(161, 216)),
        }));
        let c = get("C3.1.6").unwrap();
        assert!(c.checks.contains(&PointCheck::Invalid(pt(int(1), int(1)))));
        assert_eq!(c.points, vec![pt(int(0), int(1))]);
    }

    #[test]
    fn solution_examples() {
        let s = points_to_solutions("C3.1.3", &[pt(frac(1, 6), frac(161, 216))]).unwrap();
        let want = [
            (frac(-3, 8), frac(1, 6), frac(2597, 192)),
            (frac(10, 27), frac(1, 6), frac(-19397, 1458)),
        ];
        assert_eq!(s.len(), 2);
        for (p, q, a) in want {
            assert!(s.contains(&SweepHit {
                factor: QuadraticFactor::new(p, q),
                a
            }));
        }
        let s = points_to_solutions("C3.1.1", &[pt(int(1), int(3))]).unwrap();
        assert_eq!(
            s,
            vec![SweepHit {
                factor: QuadraticFactor::new(int(-2), int(1)),
                a: int(-3)
            }]
        );
        assert!(points_to_solutions("C3.1.1", &[pt(int(0), int(1))]).unwrap().is_empty());
        assert!(matches!(points_to_solutions("CQ3", &[]), Err(Error::NoMap(_))));
        assert!(matches!(points_to_solutions("C9", &[]), Err(Error::UnknownId(_))));
    }

    #[test]
    fn poles_fall_back_to_the_condition() {
        // q = (t^2 + r) / (2(t + 1)) is undefined at t = -1
        let c = get("C2.4.1").unwrap();
        let s = c.points_to_solutions(&[pt(int(-1), int(1))]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].factor, QuadraticFactor::new(int(-1), int(2)));
    }

    #[test]
    fn search_example() {
        assert_eq!(get("C3.1.1").unwrap().search(10), vec![pt(int(0), int(1)), pt(int(1), int(3))]);
    }

    #[test]
    fn bad_files_are_rejected() {
        assert!(load_catalog("{}").is_err());
        assert!(load_catalog(r#"{"schema": "other", "curves": []}"#).is_err());
        let bad_map = r#"{"schema": "quadfactor-curves/1", "curves": [
            {"id": "X", "status": "complete", "form": {"plane": "p - q"},
             "map": {"pattern": "A11", "exponents": [4, 2, 1], "p": "t", "q": "r"}}]}"#;
        assert!(load_catalog(bad_map).is_err());
        let ok = r#"{"schema": "quadfactor-curves/1", "curves": [
            {"id": "X", "status": "complete", "form": {"square": "t^3 + 1"}, "points": [["-1", "0"]]}]}"#;
        assert_eq!(load_catalog(ok).unwrap()[0].points, vec![pt(int(-1), int(0))]);
    }
}

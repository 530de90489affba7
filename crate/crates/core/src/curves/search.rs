//! Bounded-height rational point search.
//!
//! Square curves: `r^2 = f(t)` is tested for every `t = u/v` by a perfect
//! square test on `L v^d f(u/v)` in `i128`, falling back to big integers on
//! overflow. Plane curves: for every `p` the integer polynomial `G(q)` is
//! solved numerically, candidates are rounded through continued fractions
//! and then checked exactly, so nothing is reported unverified.

use num_bigint::BigInt;
use num_integer::{Integer as _, Roots};
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{canonical_cmp, canonical_cmp_pair, lcm_of_denominators, numerators_for_denominator, rational_sqrt, Rational};
use crate::bipoly::BiPoly;
use crate::upoly::UPoly;

/// `(t, r)` with `r >= 0` on a square curve, `(p, q)` on a plane curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurvePoint(pub Rational, pub Rational);

impl Serialize for CurvePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0.to_string(), self.1.to_string()].serialize(s)
    }
}

impl std::fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

fn ratio(u: i64, v: u64) -> Rational {
    Rational::new(BigInt::from(u), BigInt::from(v))
}

/// `f` scaled to integer coefficients.
struct IntPoly {
    big: Vec<BigInt>,
    small: Option<Vec<i128>>,
}

impl IntPoly {
    fn new(big: Vec<BigInt>) -> Self {
        let small = big.iter().map(|c| c.to_i128()).collect();
        IntPoly { big, small }
    }

    fn degree(&self) -> usize {
        self.big.len() - 1
    }

    /// `v^d g(u/v)`.
    fn homogeneous(&self, u: i64, v: u64) -> BigInt {
        self.small
            .as_ref()
            .and_then(|c| homogeneous_i128(c, u as i128, v as i128))
            .map(BigInt::from)
            .unwrap_or_else(|| homogeneous_big(&self.big, &BigInt::from(u), &BigInt::from(v)))
    }
}

fn homogeneous_i128(c: &[i128], u: i128, v: i128) -> Option<i128> {
    let mut acc = *c.last()?;
    let mut vp: i128 = 1;
    for ci in c.iter().rev().skip(1) {
        vp = vp.checked_mul(v)?;
        acc = acc.checked_mul(u)?.checked_add(ci.checked_mul(vp)?)?;
    }
    Some(acc)
}

fn homogeneous_big(c: &[BigInt], u: &BigInt, v: &BigInt) -> BigInt {
    let mut acc = c.last().cloned().unwrap_or_default();
    let mut vp = BigInt::from(1);
    for ci in c.iter().rev().skip(1) {
        vp *= v;
        acc = acc * u + ci * &vp;
    }
    acc
}

fn scaled_integer_coeffs(coeffs: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let l = lcm_of_denominators(coeffs.iter());
    let lr = Rational::from_integer(l.clone());
    (l, coeffs.iter().map(|c| (c * &lr).to_integer()).collect())
}

// quadratic residues mod 64, 63, 65 and 11
fn maybe_square(s: u128) -> bool {
    const fn table<const M: usize>() -> [bool; M] {
        let mut t = [false; M];
        let mut i = 0;
        while i < M {
            t[(i * i) % M] = true;
            i += 1;
        }
        t
    }
    const T64: [bool; 64] = table::<64>();
    const T63: [bool; 63] = table::<63>();
    const T65: [bool; 65] = table::<65>();
    const T11: [bool; 11] = table::<11>();
    T64[(s % 64) as usize] && T63[(s % 63) as usize] && T65[(s % 65) as usize] && T11[(s % 11) as usize]
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    if let Some(s) = n.to_u128() {
        if !maybe_square(s) {
            return None;
        }
        let r = s.sqrt();
        return (r * r == s).then(|| BigInt::from(r));
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

struct SquareCurve {
    l: BigInt,
    f: IntPoly,
}

impl SquareCurve {
    fn new(f: &UPoly) -> Self {
        let (l, big) = scaled_integer_coeffs(f.coeffs());
        SquareCurve { l, f: IntPoly::new(big) }
    }

    /// `r >= 0` with `r^2 = f(u/v)`.
    fn root_at(&self, u: i64, v: u64) -> Option<Rational> {
        // f(t) = M / (L v^d) is a square iff M L v^(d mod 2) is one
        let d = self.f.degree();
        let m = self.f.homogeneous(u, v);
        let mut s = m * &self.l;
        if d % 2 == 1 {
            s *= v;
        }
        let root = exact_sqrt(&s)?;
        let den = &self.l * BigInt::from(v).pow(d.div_ceil(2) as u32);
        Some(Rational::new(root, den))
    }
}

/// Every `(t, r)` with `height(t) <= h` and `r = sqrt(f(t)) >= 0` rational,
/// ordered by height of `t`, then `t`. Denominators run in parallel on the
/// current rayon pool.
pub fn search_square_curve(f: &UPoly, h: u64) -> Vec<CurvePoint> {
    if f.is_zero() {
        return crate::arith::rationals_up_to_height(h)
            .into_iter()
            .map(|t| CurvePoint(t, Rational::zero()))
            .collect();
    }
    let curve = SquareCurve::new(f);
    let mut pts: Vec<CurvePoint> = (1..=h)
        .into_par_iter()
        .flat_map_iter(|v| {
            let curve = &curve;
            numerators_for_denominator(v, h)
                .into_iter()
                .filter_map(move |u| curve.root_at(u, v).map(|r| CurvePoint(ratio(u, v), r)))
        })
        .collect();
    pts.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    pts
}

/// `r >= 0` with `r^2 = f(t)`, if rational.
pub fn square_root_at(f: &UPoly, t: &Rational) -> Option<Rational> {
    rational_sqrt(&f.eval(t)).map(|r| r.abs())
}

struct PlaneCurve {
    /// `rows[j]` holds the `p`-polynomial coefficient of `q^j`, scaled to
    /// integers and padded to a common degree.
    rows: Vec<IntPoly>,
    small: Option<Vec<Vec<i128>>>,
    exact: BiPoly,
}

impl PlaneCurve {
    fn new(f: &BiPoly) -> Self {
        let coeffs: Vec<Rational> = f.terms().map(|(_, _, c)| c.clone()).collect();
        let l = Rational::from_integer(lcm_of_denominators(coeffs.iter()));
        let dp = f.deg_p().unwrap_or(0) as usize;
        let dq = f.deg_q().unwrap_or(0) as usize;
        let mut rows = vec![vec![BigInt::zero(); dp + 1]; dq + 1];
        for (i, j, c) in f.terms() {
            rows[j as usize][i as usize] = (c * &l).to_integer();
        }
        let rows: Vec<IntPoly> = rows.into_iter().map(IntPoly::new).collect();
        PlaneCurve {
            small: rows.iter().map(|r| r.small.clone()).collect(),
            rows,
            exact: f.clone(),
        }
    }

    fn points_at(&self, u: i64, v: u64, hq: u64) -> Vec<CurvePoint> {
        let small = self.small.as_ref().and_then(|rows| {
            rows.iter()
                .map(|r| homogeneous_i128(r, u as i128, v as i128))
                .collect::<Option<Vec<i128>>>()
        });
        let p = || ratio(u, v);
        let mut qs: Vec<Rational> = match small {
            Some(g) => match g.iter().rposition(|c| *c != 0) {
                None => crate::arith::rationals_up_to_height(hq),
                Some(0) => return Vec::new(),
                Some(d) => int_roots_small(&g[..=d], hq),
            },
            None => {
                let g: Vec<BigInt> = self.rows.iter().map(|row| row.homogeneous(u, v)).collect();
                match g.iter().rposition(|c| !c.is_zero()) {
                    None => crate::arith::rationals_up_to_height(hq),
                    Some(0) => return Vec::new(),
                    Some(_) => self.exact_roots(&p(), hq),
                }
            }
        };
        if qs.is_empty() {
            return Vec::new();
        }
        qs.sort_by(canonical_cmp);
        qs.dedup();
        let p = p();
        qs.into_iter().map(|q| CurvePoint(p.clone(), q)).collect()
    }

    fn exact_roots(&self, p: &Rational, hq: u64) -> Vec<Rational> {
        let g = self.exact.eval_p(p);
        if g.is_zero() {
            return crate::arith::rationals_up_to_height(hq);
        }
        g.rational_roots()
            .roots
            .into_iter()
            .filter(|q| crate::arith::height_u64(q) <= hq)
            .collect()
    }
}

/// `num/den` reduced, if its height is at most `h`.
fn small_ratio(num: i128, den: i128, h: u64) -> Option<Rational> {
    if den == 0 {
        return None;
    }
    let g = num.gcd(&den);
    let (mut a, mut b) = (num / g, den / g);
    if b < 0 {
        (a, b) = (-a, -b);
    }
    (a.unsigned_abs() <= h as u128 && b as u128 <= h as u128)
        .then(|| Rational::new(BigInt::from(a), BigInt::from(b)))
}

/// Rational roots of height at most `h` of an integer polynomial
/// (low to high, nonzero leading coefficient).
fn int_roots_small(g: &[i128], h: u64) -> Vec<Rational> {
    let low = g.iter().position(|c| *c != 0).unwrap();
    let mut out = Vec::new();
    if low > 0 {
        out.push(Rational::zero());
    }
    let g = &g[low..];
    match g.len() {
        0 | 1 => return out,
        2 => {
            out.extend(small_ratio(-g[0], g[1], h));
            return out;
        }
        3 => {
            let disc = g[1].checked_mul(g[1]).zip(g[2].checked_mul(g[0]).and_then(|x| x.checked_mul(4)));
            if let Some(disc) = disc.and_then(|(a, b)| a.checked_sub(b)) {
                if disc >= 0 {
                    let s = (disc as u128).sqrt() as i128;
                    if s * s == disc {
                        out.extend(small_ratio(-g[1] + s, 2 * g[2], h));
                        out.extend(small_ratio(-g[1] - s, 2 * g[2], h));
                    }
                }
                return out;
            }
        }
        _ => {}
    }
    let gf: Vec<f64> = g.iter().map(|&c| c as f64).collect();
    let mut cands: Vec<(i64, u64)> = Vec::new();
    // a root of height <= h lies in [-h, h]; convergents recover it from
    // any approximation closer than 1/(2h^2)
    let hf = h as f64;
    for x in real_root_candidates(&gf, hf + 1.0, 0.25 / (hf * hf)) {
        cands.extend(convergents(x, h));
    }
    cands.sort_unstable();
    cands.dedup();
    for (a, b) in cands {
        if a == 0 || a.unsigned_abs() > h || b > h || a.unsigned_abs().gcd(&b) != 1 {
            continue;
        }
        let vanishes = match homogeneous_i128(g, a as i128, b as i128) {
            Some(x) => x == 0,
            None => {
                let big: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c)).collect();
                homogeneous_big(&big, &BigInt::from(a), &BigInt::from(b)).is_zero()
            }
        };
        if vanishes {
            out.push(ratio(a, b));
        }
    }
    out
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci)
}

/// Approximations of every real root in `[-limit, limit]` to within `tol`,
/// plus the critical points so that roots of even multiplicity are not
/// missed.
fn real_root_candidates(c: &[f64], limit: f64, tol: f64) -> Vec<f64> {
    let d = c.len() - 1;
    if d == 1 {
        return vec![-c[0] / c[1]];
    }
    if d == 2 {
        let vertex = -c[1] / (2.0 * c[2]);
        let disc = c[1] * c[1] - 4.0 * c[2] * c[0];
        if disc < 0.0 {
            return vec![vertex];
        }
        let s = disc.sqrt();
        return vec![vertex, (-c[1] + s) / (2.0 * c[2]), (-c[1] - s) / (2.0 * c[2])];
    }
    let deriv: Vec<f64> = (1..=d).map(|i| c[i] * i as f64).collect();
    let crit = real_root_candidates(&deriv, limit, tol);
    let cauchy = 1.0 + c[..d].iter().map(|ci| (ci / c[d]).abs()).fold(0.0, f64::max);
    let bound = cauchy.min(limit);
    let mut knots = vec![-bound];
    knots.extend(crit.iter().copied().filter(|x| x.abs() < bound));
    knots.push(bound);
    knots.sort_by(f64::total_cmp);
    let mut out = crit;
    for w in knots.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (horner(c, lo), horner(c, hi));
        if flo == 0.0 {
            out.push(lo);
        }
        if flo.signum() == fhi.signum() || fhi == 0.0 {
            continue;
        }
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = horner(c, mid);
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(lo);
        out.push(hi);
    }
    out
}

/// Continued-fraction convergents of `x` with denominator at most `h`.
fn convergents(x: f64, h: u64) -> Vec<(i64, u64)> {
    let mut out = Vec::new();
    if !x.is_finite() || x.abs() > 2.0 * h as f64 + 2.0 {
        return out;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, x.floor() as i128, 1i128);
    let mut y = x - x.floor();
    out.push((p1 as i64, 1));
    for _ in 0..64 {
        if y < 1e-15 {
            break;
        }
        let z = 1.0 / y;
        let a = z.floor();
        y = z - a;
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > h as i128 || p2.unsigned_abs() > 4 * h as u128 {
            break;
        }
        out.push((p2 as i64, q2 as u64));
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    out
}

/// Every `(p, q)` with `height(p) <= hp`, `height(q) <= hq` and `F(p, q) = 0`,
/// in canonical `(p, q)` order.
pub fn search_plane_curve_box(f: &BiPoly, hp: u64, hq: u64) -> Vec<CurvePoint> {
    let curve = PlaneCurve::new(f);
    let mut pts: Vec<CurvePoint> = (1..=hp)
        .into_par_iter()
        .flat_map_iter(|v| {
            let curve = &curve;
            numerators_for_denominator(v, hp)
                .into_iter()
                .flat_map(move |u| curve.points_at(u, v, hq))
        })
        .collect();
    pts.sort_by(|a, b| canonical_cmp_pair((&a.0, &a.1), (&b.0, &b.1)));
    pts
}

pub fn search_plane_curve(f: &BiPoly, h: u64) -> Vec<CurvePoint> {
    search_plane_curve_box(f, h, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int, rationals_up_to_height};

    fn pts(v: &[(Rational, Rational)]) -> Vec<CurvePoint> {
        v.iter().map(|(a, b)| CurvePoint(a.clone(), b.clone())).collect()
    }

    #[test]
    fn square_examples() {
        let f = UPoly::parse("4t^5 + 4t^3 + 1".replace('t', "x").as_str()).unwrap();
        assert_eq!(search_square_curve(&f, 10), pts(&[(int(0), int(1)), (int(1), int(3))]));
        let f = UPoly::parse("x^6 - 4x^2 + 4x").unwrap();
        assert_eq!(
            search_square_curve(&f, 10),
            pts(&[(int(0), int(0)), (int(1), int(1)), (frac(1, 6), frac(161, 216))])
        );
        let f = UPoly::parse("x^6 - 2x^5 + 7x^4 + 3x^2 + 2x + 1").unwrap();
        assert_eq!(search_square_curve(&f, 4), pts(&[(int(0), int(1)), (frac(-1, 2), frac(9, 8))]));
    }

    #[test]
    fn plane_examples() {
        let f = BiPoly::parse("p^3 q + p q^3 - 2p q^2 + p^2 - q + 1").unwrap();
        assert_eq!(search_plane_curve(&f, 5), pts(&[(int(0), int(1))]));
        let f = BiPoly::parse("p^4 - p q^3 - 3p^2 q + p q + q^2 + 1").unwrap();
        assert_eq!(search_plane_curve(&f, 5), pts(&[(int(-1), int(1)), (int(1), int(1))]));
        let f = BiPoly::parse("p - q").unwrap();
        assert_eq!(
            search_plane_curve(&f, 1),
            pts(&[(int(-1), int(-1)), (int(0), int(0)), (int(1), int(1))])
        );
    }

    /// Brute force over the whole grid agrees with the root-finding search.
    #[test]
    fn plane_matches_grid() {
        for text in [
            "p^2 q - p q^2 - q^2 + p - 1",
            "(q - 1)(p^2 + q^2 + 1)",
            "(p - q - 1)(p^2 - q)",
            "(2q - 3)^2 (p + 1)",
            "p^2 - 2q^2",
            "6q^3 - 5q^2 p + q - p^3",
        ] {
            let f = BiPoly::parse(text).unwrap();
            let h = 6;
            let mut want = Vec::new();
            for p in rationals_up_to_height(h) {
                for q in rationals_up_to_height(h) {
                    if f.eval_at(&p, &q).is_zero() {
                        want.push(CurvePoint(p.clone(), q.clone()));
                    }
                }
            }
            want.sort_by(|a, b| canonical_cmp_pair((&a.0, &a.1), (&b.0, &b.1)));
            assert_eq!(search_plane_curve(&f, h), want, "{text}");
        }
    }

    #[test]
    fn square_matches_direct_evaluation() {
        let f = UPoly::parse("x^4 + 4x^2 - 4").unwrap();
        let mut want: Vec<CurvePoint> = rationals_up_to_height(30)
            .into_iter()
            .filter_map(|t| square_root_at(&f, &t).map(|r| CurvePoint(t, r)))
            .collect();
        want.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        let got = search_square_curve(&f, 30);
        assert_eq!(got, want);
        assert!(got.contains(&CurvePoint(frac(5, 2), frac(31, 4))));
    }

    #[test]
    fn big_coefficients_fall_back() {
        let f = UPoly::parse("100000000000000000000000 x^6 + 1").unwrap();
        assert_eq!(search_square_curve(&f, 3), pts(&[(int(0), int(1))]));
    }

    #[test]
    fn monotone_in_height() {
        let f = UPoly::parse("x^4 + 4x^2 - 4").unwrap();
        let small = search_square_curve(&f, 10);
        let big = search_square_curve(&f, 40);
        assert!(small.iter().all(|p| big.contains(p)));
    }
}

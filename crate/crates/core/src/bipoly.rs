//! Sparse polynomials in `p` and `q`, and the resultant eliminating `p`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{lcm_of_denominators, Rational};
use crate::error::Error;
use crate::parse::{parse_expr, ExprTarget};
use crate::upoly::{owned_binops, UPoly};

/// Terms keyed by `(deg_p, deg_q)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(c: Rational, dp: u32, dq: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dp, dq), c);
        }
        BiPoly { terms }
    }

    pub fn p() -> Self {
        Self::term(Rational::one(), 1, 0)
    }

    pub fn q() -> Self {
        Self::term(Rational::one(), 0, 1)
    }

    /// Builds from `(deg_p, deg_q, coefficient)` triples, summing repeats.
    pub fn from_terms(ts: impl IntoIterator<Item = (u32, u32, Rational)>) -> Self {
        let mut out = Self::zero();
        for (dp, dq, c) in ts {
            out.add_term(dp, dq, c);
        }
        out
    }

    fn add_term(&mut self, dp: u32, dq: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((dp, dq)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(dp, dq));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(dp, dq), c)| (dp, dq, c))
    }

    pub fn coeff(&self, dp: u32, dq: u32) -> Rational {
        self.terms.get(&(dp, dq)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_p(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn deg_q(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval_at(&self, p: &Rational, q: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(dp, dq), c) in &self.terms {
            acc += c * pow_r(p, dp) * pow_r(q, dq);
        }
        acc
    }

    /// Coefficients in `p` as polynomials in `q`: `out[i]` multiplies `p^i`.
    pub fn as_poly_in_p(&self) -> Vec<UPoly> {
        let n = self.deg_p().map_or(0, |d| d as usize + 1);
        let mut out = vec![Vec::new(); n];
        for (&(dp, dq), c) in &self.terms {
            let row = &mut out[dp as usize];
            if row.len() <= dq as usize {
                row.resize(dq as usize + 1, Rational::zero());
            }
            row[dq as usize] = c.clone();
        }
        out.into_iter().map(UPoly::new).collect()
    }

    /// `F(p0, q)` as a polynomial in `q`.
    pub fn eval_p(&self, p0: &Rational) -> UPoly {
        let mut coeffs = vec![Rational::zero(); self.deg_q().map_or(0, |d| d as usize + 1)];
        for (&(dp, dq), c) in &self.terms {
            coeffs[dq as usize] += c * pow_r(p0, dp);
        }
        UPoly::new(coeffs)
    }

    /// `F(p, q0)` as a polynomial in `p`.
    pub fn eval_q(&self, q0: &Rational) -> UPoly {
        let mut coeffs = vec![Rational::zero(); self.deg_p().map_or(0, |d| d as usize + 1)];
        for (&(dp, dq), c) in &self.terms {
            coeffs[dp as usize] += c * pow_r(q0, dq);
        }
        UPoly::new(coeffs)
    }

    /// `den^deg_p * F(num/den, q)`: the numerator of substituting the
    /// rational function `num/den` (both in `q`) for `p`.
    pub fn substitute_p(&self, num: &UPoly, den: &UPoly) -> UPoly {
        let d = match self.deg_p() {
            Some(d) => d,
            None => return UPoly::zero(),
        };
        let rows = self.as_poly_in_p();
        let mut acc = UPoly::zero();
        for (i, coeff) in rows.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let term = &(&num.pow(i as u32) * &den.pow(d - i as u32)) * coeff;
            acc = &acc + &term;
        }
        acc
    }

    /// Terms in rendering order: total degree descending, then `deg_p`
    /// descending.
    fn ordered_terms(&self) -> Vec<(u32, u32, &Rational)> {
        let mut ts: Vec<_> = self.terms().collect();
        ts.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        ts
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.ordered_terms().first().map(|t| t.2)
    }

    /// Scales to coprime integer coefficients with a positive leading term.
    pub fn content_normalize(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = lcm_of_denominators(self.terms.values());
        let g = self.terms.values().fold(BigInt::zero(), |g, c| {
            g.gcd(&(c * Rational::from_integer(l.clone())).to_integer())
        });
        let mut s = Rational::new(l, g);
        if self.leading_coeff().unwrap().is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// `Some(c)` with `self = c * other`, `c` a nonzero rational.
    pub fn constant_multiple_of(&self, other: &BiPoly) -> Option<Rational> {
        let (&k, v) = other.terms.iter().next()?;
        let c = self.terms.get(&k)? / v;
        (self.terms.len() == other.terms.len() && *self == other.scale(&c)).then_some(c)
    }

    /// Parses an expression in the letters `p` and `q`.
    pub fn parse(text: &str) -> Result<BiPoly, Error> {
        parse_expr(text)?.eval(&|name, pos| match name {
            'p' => Ok(BiPoly::p()),
            'q' => Ok(BiPoly::q()),
            other => Err(Error::parse(
                pos,
                format!("unknown variable {other:?}; expected p or q"),
            )),
        })
    }

    /// Renders with `*` between factors, e.g. `p^2*q^2 - q^3 + p - q`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (dp, dq, c) in self.ordered_terms() {
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts = Vec::new();
            let a = c.abs();
            let constant = dp == 0 && dq == 0;
            if constant || !a.is_one() {
                parts.push(a.to_string());
            }
            for (v, d) in [("p", dp), ("q", dq)] {
                match d {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{d}")),
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }

    /// Resultant with respect to `p`, as a polynomial in `q`.
    ///
    /// Determinant of the Sylvester matrix (rows of `self` first), by
    /// fraction-free elimination over `Q[q]`.
    pub fn resultant_p(&self, other: &BiPoly) -> Result<UPoly, Error> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroResultantInput);
        }
        let (m, n) = (self.deg_p().unwrap() as usize, other.deg_p().unwrap() as usize);
        if m == 0 && n == 0 {
            return Err(Error::NothingToEliminate);
        }
        let f = self.as_poly_in_p();
        let g = other.as_poly_in_p();
        let size = m + n;
        let mut mat = vec![vec![UPoly::zero(); size]; size];
        for i in 0..n {
            for (j, c) in f.iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in g.iter().rev().enumerate() {
                mat[n + i][i + j] = c.clone();
            }
        }
        Ok(bareiss_det(mat))
    }
}

fn pow_r(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

/// Determinant of a square matrix over `Q[q]` by Bareiss elimination.
pub fn bareiss_det(mut mat: Vec<Vec<UPoly>>) -> UPoly {
    let n = mat.len();
    if n == 0 {
        return UPoly::one();
    }
    let mut sign = false;
    let mut prev = UPoly::one();
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    sign = !sign;
                }
                None => return UPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num
                    .exact_div(&prev)
                    .expect("nonzero pivot")
                    .expect("Bareiss division is exact");
            }
            mat[i][k] = UPoly::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(dp, dq), c) in &rhs.terms {
            out.add_term(dp, dq, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(dp, dq), c) in &rhs.terms {
            out.add_term(dp, dq, -c);
        }
        out
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(ap, aq), a) in &self.terms {
            for (&(bp, bq), b) in &rhs.terms {
                out.add_term(ap + bp, aq + bq, a * b);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

owned_binops!(BiPoly);

impl ExprTarget for BiPoly {
    fn constant(c: Rational) -> Self {
        BiPoly::constant(c)
    }

    fn checked_div(self, rhs: Self) -> Option<Self> {
        match rhs.terms.get(&(0, 0)) {
            Some(c) if rhs.terms.len() == 1 => Some(self.scale(&c.recip())),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};
    use proptest::prelude::*;

    fn b(s: &str) -> BiPoly {
        BiPoly::parse(s).unwrap()
    }

    /// Classical Euclidean resultant of two univariate polynomials, used as
    /// an independent check on the Sylvester determinant.
    fn euclid_resultant(f: &UPoly, g: &UPoly) -> Rational {
        let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
        if dg == 0 {
            return num_traits::pow(g.coeff(0), df);
        }
        let (_, r) = f.divmod(g).unwrap();
        if r.is_zero() {
            return Rational::zero();
        }
        let dr = r.degree().unwrap();
        let sign = if (df * dg) % 2 == 1 { -int(1) } else { int(1) };
        sign * num_traits::pow(g.leading().unwrap().clone(), df - dr) * euclid_resultant(g, &r)
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(b("p^2 - q").eval_at(&int(-2), &int(1)), int(3));
        assert!((&b("p^3 q + 5") * &BiPoly::zero()).is_zero());
        // p = -q/(q^2-1) lies on p q^2 + q - p = 0
        let f = b("p*q^2 + q - p");
        let num = UPoly::parse("-q").unwrap();
        let den = UPoly::parse("q^2 - 1").unwrap();
        assert!(f.substitute_p(&num, &den).is_zero());
    }

    #[test]
    fn render_is_graded() {
        assert_eq!(b("p - q + p^2 q^2 - q^3").to_string(), "p^2*q^2 - q^3 + p - q");
        assert_eq!(b("-3p^2q + 1/2 p").to_string(), "-3*p^2*q + 1/2*p");
        assert_eq!(b("0").to_string(), "0");
        let f = b("(q-1)(p^2+q^2+1)");
        assert_eq!(BiPoly::parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn normalize_and_compare() {
        let f = b("-2p q^2 - 2q + 2p");
        assert_eq!(f.content_normalize(), b("p q^2 + q - p"));
        assert_eq!(b("3/4 p - 1/6").content_normalize(), b("9p - 2"));
        assert_eq!(f.constant_multiple_of(&b("pq^2 + q - p")), Some(int(-2)));
        assert_eq!(f.constant_multiple_of(&b("pq^2 + q")), None);
    }

    #[test]
    fn resultant_examples() {
        let r = b("p - q").resultant_p(&b("p + q")).unwrap();
        assert!(r == UPoly::parse("2q").unwrap() || r == UPoly::parse("-2q").unwrap());
        let f = b("p^2 q + p - 1");
        assert!(f.resultant_p(&f).unwrap().is_zero());
        assert_eq!(b("q").resultant_p(&b("q^2")), Err(Error::NothingToEliminate));
        assert_eq!(BiPoly::zero().resultant_p(&b("p")), Err(Error::ZeroResultantInput));
        // constant in p: Res(c, g) = c^deg g
        let r = b("q + 1").resultant_p(&b("p^2 + q")).unwrap();
        assert_eq!(r, UPoly::parse("(q+1)^2").unwrap());
    }

    fn small_bipoly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec((0u32..4, 0u32..3, -9i64..=9), 1..6).prop_map(|ts| {
            BiPoly::from_terms(ts.into_iter().map(|(dp, dq, c)| (dp, dq, int(c))))
        })
    }

    proptest! {
        #[test]
        fn resultant_matches_euclid(f in small_bipoly(), g in small_bipoly(), q0 in -6i64..=6) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assume!(f.deg_p().unwrap_or(0) + g.deg_p().unwrap_or(0) > 0);
            let q0 = frac(q0, 1);
            let fq = f.eval_q(&q0);
            let gq = g.eval_q(&q0);
            // leading p-coefficients must survive the specialization
            let lf = f.as_poly_in_p().last().unwrap().eval(&q0);
            let lg = g.as_poly_in_p().last().unwrap().eval(&q0);
            prop_assume!(!lf.is_zero() && !lg.is_zero());
            let res = f.resultant_p(&g).unwrap().eval(&q0);
            prop_assert_eq!(res, euclid_resultant(&fq, &gq));
        }

        #[test]
        fn ring_laws(f in small_bipoly(), g in small_bipoly(), h in small_bipoly(), p in -5i64..5, q in -5i64..5) {
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            let (p, q) = (frac(p, 3), frac(q, 2));
            prop_assert_eq!((&f * &g).eval_at(&p, &q), f.eval_at(&p, &q) * g.eval_at(&p, &q));
            prop_assert_eq!((&f + &g).eval_at(&p, &q), f.eval_at(&p, &q) + g.eval_at(&p, &q));
        }
    }
}

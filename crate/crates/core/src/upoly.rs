//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{canonical_cmp, lcm_of_denominators, Rational};
use crate::error::Error;
use crate::factor::factorize;
use crate::parse::{parse_expr, ExprTarget};

/// `coeffs[i]` is the coefficient of `x^i`; no trailing zeros, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    /// Sorted by height, then value.
    pub roots: Vec<Rational>,
    /// False when a needed integer factorization ran out of budget.
    pub complete: bool,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, e: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = c;
        Self::new(coeffs)
    }

    /// Ascending integer coefficients.
    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// `x^2 + px + q`.
    pub fn quadratic(p: &Rational, q: &Rational) -> Self {
        Self::new(vec![q.clone(), p.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Divides out the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    /// `x^deg f(1/x)`.
    pub fn reverse(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `self = divisor * quotient + remainder` with `deg remainder < deg divisor`.
    pub fn divmod(&self, divisor: &UPoly) -> Result<(UPoly, UPoly), Error> {
        let lc = divisor.leading().ok_or(Error::ZeroDivisor)?.clone();
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// `Some(quotient)` when the division is exact.
    pub fn exact_div(&self, divisor: &UPoly) -> Result<Option<UPoly>, Error> {
        let (q, r) = self.divmod(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient,
    /// proportional to `self`.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = lcm_of_denominators(&self.coeffs);
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for c in &mut ints {
            *c = &*c / &g * &sign;
        }
        ints
    }

    /// All rational roots, each verified by exact evaluation.
    ///
    /// Panics on the zero polynomial.
    pub fn rational_roots(&self) -> RootSet {
        assert!(!self.is_zero(), "rational_roots of the zero polynomial");
        let ints = self.primitive_integer_coeffs();
        let low = ints.iter().position(|c| !c.is_zero()).unwrap();
        let ints = &ints[low..];
        let mut roots = Vec::new();
        if low > 0 {
            roots.push(Rational::zero());
        }
        let mut complete = true;
        let d = ints.len() - 1;
        if d == 1 {
            roots.push(Rational::new(-ints[0].clone(), ints[1].clone()));
        } else if d > 1 {
            let fc = factorize(&ints[0]);
            let fl = factorize(&ints[d]);
            complete = fc.complete && fl.complete;
            let nums = fc.divisors();
            let dens = fl.divisors();
            for v in &dens {
                for u in &nums {
                    if !u.gcd(v).is_one() {
                        continue;
                    }
                    for u in [u.clone(), -u.clone()] {
                        if int_poly_vanishes(ints, &u, v) {
                            roots.push(Rational::new(u, v.clone()));
                        }
                    }
                }
            }
        }
        roots.sort_by(canonical_cmp);
        roots.dedup();
        RootSet { roots, complete }
    }

    pub fn parse(text: &str) -> Result<UPoly, Error> {
        let expr = parse_expr(text)?;
        let vars = expr.variables();
        if let Some((name, pos)) = vars.get(1) {
            return Err(Error::parse(
                *pos,
                format!("second variable {name:?}; expected a polynomial in one variable"),
            ));
        }
        expr.eval(&|_, _| Ok(UPoly::x()))
    }

    /// Canonical text in the variable `var`, e.g. `x^3 + 2x^2 + 37/18 x - 1`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else if a.is_integer() {
                out.push_str(&format!("{a}{mono}"));
            } else {
                out.push_str(&format!("{a} {mono}"));
            }
        }
        out
    }
}

/// `sum ints[i] u^i v^(d-i) == 0`, i.e. the integer polynomial vanishes at u/v.
fn int_poly_vanishes(ints: &[BigInt], u: &BigInt, v: &BigInt) -> bool {
    let mut acc = BigInt::zero();
    let mut vpow = BigInt::one();
    // Horner in u with the matching power of v folded into each coefficient.
    for c in ints.iter().rev() {
        acc = acc * u + c * &vpow;
        vpow *= v;
    }
    acc.is_zero()
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

impl Serialize for UPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_binops {
    ($ty:ty) => {
        impl std::ops::Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl std::ops::Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl std::ops::Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl std::ops::Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}
pub(crate) use owned_binops;

owned_binops!(UPoly);

impl ExprTarget for UPoly {
    fn constant(c: Rational) -> Self {
        UPoly::constant(c)
    }

    fn checked_div(self, rhs: Self) -> Option<Self> {
        match rhs.coeffs.as_slice() {
            [c] => Some(self.scale(&c.recip())),
            _ => None,
        }
    }
}

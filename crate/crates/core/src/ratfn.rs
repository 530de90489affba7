//! Rational functions in one parameter, and polynomials in `x` over them.
//!
//! Used to check parametric factorization identities symbolically instead
//! of at sample points.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::Error;
use crate::parse::{parse_expr, ExprTarget};
use crate::upoly::{owned_binops, UPoly};

/// `num / den` with coprime parts and monic `den`; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: UPoly,
    den: UPoly,
}

impl RatFn {
    pub fn new(num: UPoly, den: UPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.divmod(&g).ok()?.0;
        let den = den.divmod(&g).ok()?.0;
        let lc = den.leading().unwrap().clone();
        Some(RatFn {
            num: num.scale(&lc.recip()),
            den: den.scale(&lc.recip()),
        })
    }

    pub fn zero() -> Self {
        RatFn {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFn {
            num: UPoly::constant(c),
            den: UPoly::one(),
        }
    }

    pub fn t() -> Self {
        RatFn {
            num: UPoly::x(),
            den: UPoly::one(),
        }
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFn {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    /// Value at `t`, or `None` at a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(t);
        (!d.is_zero()).then(|| self.num.eval(t) / d)
    }

    pub fn recip(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Parses an expression in the single letter `var`.
    pub fn parse(text: &str, var: char) -> Result<RatFn, Error> {
        parse_expr(text)?.eval(&|name, pos| {
            if name == var {
                Ok(RatFn::t())
            } else {
                Err(Error::parse(pos, format!("unknown variable {name:?}")))
            }
        })
    }

    pub fn render(&self, var: &str) -> String {
        let num = self.num.render(var);
        if self.den.is_constant() {
            return num;
        }
        let wrap = |s: String, p: &UPoly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!(
            "{}/{}",
            wrap(num, &self.num),
            wrap(self.den.render(var), &self.den)
        )
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({})", self.render("t"))
    }
}

impl<'a> Add<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        RatFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominators")
    }
}

impl<'a> Sub<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

owned_binops!(RatFn);

impl ExprTarget for RatFn {
    fn constant(c: Rational) -> Self {
        RatFn::constant(c)
    }

    fn checked_div(self, rhs: Self) -> Option<Self> {
        Some(&self * &rhs.recip()?)
    }
}

/// Polynomial in `x` with [`RatFn`] coefficients, ascending.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RxPoly {
    coeffs: Vec<RatFn>,
}

impl RxPoly {
    pub fn new(mut coeffs: Vec<RatFn>) -> Self {
        while coeffs.last().is_some_and(RatFn::is_zero) {
            coeffs.pop();
        }
        RxPoly { coeffs }
    }

    pub fn zero() -> Self {
        RxPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: RatFn) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![RatFn::zero(), RatFn::one()])
    }

    pub fn monomial(c: RatFn, e: usize) -> Self {
        let mut coeffs = vec![RatFn::zero(); e + 1];
        coeffs[e] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[RatFn] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFn {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFn::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Long division; `None` for a zero divisor.
    pub fn divmod(&self, divisor: &RxPoly) -> Option<(RxPoly, RxPoly)> {
        let inv = divisor.coeffs.last()?.recip()?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RatFn::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &(&c * d);
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Instantiates the parameter; `None` if any coefficient has a pole there.
    pub fn specialize(&self, t: &Rational) -> Option<UPoly> {
        self.coeffs
            .iter()
            .map(|c| c.eval(t))
            .collect::<Option<Vec<_>>>()
            .map(UPoly::new)
    }

    /// Parses an expression in `x` and the parameter letter `param`
    /// (pass `None` for parameter-free input).
    pub fn parse(text: &str, param: Option<char>) -> Result<RxPoly, Error> {
        parse_expr(text)?.eval(&|name, pos| {
            if name == 'x' {
                Ok(RxPoly::x())
            } else if Some(name) == param {
                Ok(RxPoly::constant(RatFn::t()))
            } else {
                Err(Error::parse(pos, format!("unknown variable {name:?}")))
            }
        })
    }

    pub fn render(&self, param: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            let coeff = c.render(param);
            let term = if mono.is_empty() {
                coeff
            } else if coeff == "1" {
                mono
            } else if coeff == "-1" {
                format!("-{mono}")
            } else if c.as_constant().is_some() && !coeff.contains('/') {
                format!("{coeff}{mono}")
            } else {
                format!("({coeff})*{mono}")
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl<'a> Add<&'a RxPoly> for &'a RxPoly {
    type Output = RxPoly;
    fn add(self, rhs: &RxPoly) -> RxPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RxPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a RxPoly> for &'a RxPoly {
    type Output = RxPoly;
    fn sub(self, rhs: &RxPoly) -> RxPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RxPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a RxPoly> for &'a RxPoly {
    type Output = RxPoly;
    fn mul(self, rhs: &RxPoly) -> RxPoly {
        if self.is_zero() || rhs.is_zero() {
            return RxPoly::zero();
        }
        let mut out = vec![RatFn::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        RxPoly::new(out)
    }
}

impl Neg for &RxPoly {
    type Output = RxPoly;
    fn neg(self) -> RxPoly {
        RxPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

owned_binops!(RxPoly);

impl ExprTarget for RxPoly {
    fn constant(c: Rational) -> Self {
        RxPoly::constant(RatFn::constant(c))
    }

    fn checked_div(self, rhs: Self) -> Option<Self> {
        match rhs.coeffs.as_slice() {
            [c] => {
                let inv = c.recip()?;
                Some(RxPoly::new(self.coeffs.iter().map(|a| a * &inv).collect()))
            }
            _ => None,
        }
    }
}

//! Quadratic factors of quadrinomials.
//!
//! Dividing `x^n + ax^m + bx^k + c` by `x^2 + px + q` leaves
//! `(A_n + aA_m + bA_k) x + (B_n + aB_m + bB_k + c)`. For the four coefficient
//! patterns both remainder coefficients are affine in `a`:
//! `lin = L0 + a L1`, `const = C0 + a C1`.

mod eliminate;
mod factors;
mod sweep;

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{ser_rational, Rational};
use crate::error::Error;
use crate::modred::mod_red_table;
use crate::upoly::UPoly;

pub use eliminate::{eliminate, Elimination};
pub use factors::{find_quadratic_factors, find_quadratic_factors_poly, FactorSearch, FoundFactor};
pub use sweep::{pattern_sweep, SweepDiagnostics, SweepGrid, SweepHit, SweepResult};

/// Which of `b`, `c` are tied to `a` or fixed to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientPattern {
    /// `(a, 1, 1)`
    A11,
    /// `(a, a, 1)`
    AA1,
    /// `(a, 1, a)`
    A1A,
    /// `(1, a, a)`
    OneAA,
}

impl CoefficientPattern {
    pub const ALL: [CoefficientPattern; 4] = [Self::A11, Self::AA1, Self::A1A, Self::OneAA];

    /// Whether the coefficients of `x^m`, `x^k` and `x^0` equal `a` (else 1).
    pub fn tied(self) -> [bool; 3] {
        match self {
            Self::A11 => [true, false, false],
            Self::AA1 => [true, true, false],
            Self::A1A => [true, false, true],
            Self::OneAA => [false, true, true],
        }
    }

    /// `(a, b, c)` of the quadrinomial for the free value `a`.
    pub fn coefficients(self, a: &Rational) -> [Rational; 3] {
        self.tied()
            .map(|t| if t { a.clone() } else { Rational::one() })
    }

    /// The `a` for which `f` has this pattern's shape, if any.
    pub fn parameter_of(self, f: &Quadrinomial) -> Option<Rational> {
        let coeffs = [&f.a, &f.b, &f.c];
        let tied = self.tied();
        let a = coeffs[tied.iter().position(|&t| t)?].clone();
        let fits = coeffs
            .iter()
            .zip(tied)
            .all(|(c, t)| if t { **c == a } else { c.is_one() });
        fits.then_some(a)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::A11 => "A11",
            Self::AA1 => "AA1",
            Self::A1A => "A1A",
            Self::OneAA => "1AA",
        }
    }
}

impl fmt::Display for CoefficientPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoefficientPattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "a11" => Ok(Self::A11),
            "aa1" => Ok(Self::AA1),
            "a1a" => Ok(Self::A1A),
            "1aa" => Ok(Self::OneAA),
            _ => Err(Error::Malformed(format!(
                "unknown pattern {s:?}; expected a11, aa1, a1a or 1aa"
            ))),
        }
    }
}

impl Serialize for CoefficientPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Exponents `n > m > k >= 1`.
pub fn check_exponents(n: u32, m: u32, k: u32) -> Result<(), Error> {
    if n > m && m > k && k >= 1 {
        Ok(())
    } else {
        Err(Error::Malformed(format!(
            "exponents must satisfy n > m > k >= 1, got ({n},{m},{k})"
        )))
    }
}

/// `x^n + a x^m + b x^k + c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Quadrinomial {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub b: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub c: Rational,
}

impl Quadrinomial {
    pub fn new(n: u32, m: u32, k: u32, a: Rational, b: Rational, c: Rational) -> Result<Self, Error> {
        check_exponents(n, m, k)?;
        if n < 4 {
            return Err(Error::Malformed(format!("degree must be at least 4, got {n}")));
        }
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::Malformed("coefficients a, b, c must be nonzero".into()));
        }
        Ok(Quadrinomial { n, m, k, a, b, c })
    }

    pub fn from_pattern(pattern: CoefficientPattern, n: u32, m: u32, k: u32, a: &Rational) -> Result<Self, Error> {
        let [a, b, c] = pattern.coefficients(a);
        Self::new(n, m, k, a, b, c)
    }

    /// Recognizes a monic polynomial with exactly four terms, one of them
    /// constant.
    pub fn from_upoly(f: &UPoly) -> Result<Self, Error> {
        let n = f.degree().unwrap_or(0);
        if f.leading().is_some_and(|l| !l.is_one()) {
            return Err(Error::Malformed(format!("{f} is not monic")));
        }
        let terms: Vec<usize> = (0..n).rev().filter(|&i| !f.coeff(i).is_zero()).collect();
        match terms.as_slice() {
            [m, k, 0] => Self::new(n as u32, *m as u32, *k as u32, f.coeff(*m), f.coeff(*k), f.coeff(0)),
            _ => Err(Error::Malformed(format!(
                "{f} is not of the form x^n + ax^m + bx^k + c with abc != 0"
            ))),
        }
    }

    pub fn to_upoly(&self) -> UPoly {
        let mut coeffs = vec![Rational::zero(); self.n as usize + 1];
        coeffs[self.n as usize] = Rational::one();
        coeffs[self.m as usize] = self.a.clone();
        coeffs[self.k as usize] = self.b.clone();
        coeffs[0] = self.c.clone();
        UPoly::new(coeffs)
    }

    /// `x^n f(1/x) / c`.
    pub fn reversed_normalized(&self) -> Quadrinomial {
        let inv = self.c.recip();
        Quadrinomial {
            n: self.n,
            m: self.n - self.k,
            k: self.n - self.m,
            a: &self.b * &inv,
            b: &self.a * &inv,
            c: inv,
        }
    }
}

impl fmt::Display for Quadrinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_upoly().fmt(f)
    }
}

/// Monic `x^2 + px + q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadraticFactor {
    #[serde(serialize_with = "ser_rational")]
    pub p: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub q: Rational,
}

impl QuadraticFactor {
    pub fn new(p: Rational, q: Rational) -> Self {
        QuadraticFactor { p, q }
    }

    pub fn to_upoly(&self) -> UPoly {
        UPoly::quadratic(&self.p, &self.q)
    }

    /// The factor of the reversed polynomial: `x^2 + (p/q)x + 1/q`.
    /// Requires `q != 0`.
    pub fn reversed(&self) -> QuadraticFactor {
        let inv = self.q.recip();
        QuadraticFactor {
            p: &self.p * &inv,
            q: inv,
        }
    }

    /// Canonical order: `q` first, then `p`, each by height then value.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        crate::arith::canonical_cmp_pair((&self.q, &self.p), (&other.q, &other.p))
    }
}

impl fmt::Display for QuadraticFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_upoly().fmt(f)
    }
}

/// `lin = l0 + a l1`, `const = c0 + a c1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForms<T> {
    pub l0: T,
    pub l1: T,
    pub c0: T,
    pub c1: T,
}

/// Assembles the linear forms from `A_i`, `B_i` lookups in any ring.
pub fn linear_forms<T: Clone + Add<Output = T>>(
    pattern: CoefficientPattern,
    (n, m, k): (u32, u32, u32),
    a: impl Fn(usize) -> T,
    b: impl Fn(usize) -> T,
    zero: T,
    one: T,
) -> LinearForms<T> {
    let [tm, tk, tc] = pattern.tied();
    let mut f = LinearForms {
        l0: a(n as usize),
        l1: zero.clone(),
        c0: b(n as usize),
        c1: zero,
    };
    for (e, tied) in [(m, tm), (k, tk)] {
        if tied {
            f.l1 = f.l1 + a(e as usize);
            f.c1 = f.c1 + b(e as usize);
        } else {
            f.l0 = f.l0 + a(e as usize);
            f.c0 = f.c0 + b(e as usize);
        }
    }
    if tc {
        f.c1 = f.c1 + one;
    } else {
        f.c0 = f.c0 + one;
    }
    f
}

pub fn linear_forms_at(
    pattern: CoefficientPattern,
    exps: (u32, u32, u32),
    p: &Rational,
    q: &Rational,
) -> LinearForms<Rational> {
    let t = mod_red_table(exps.0 as usize, p, q);
    linear_forms(
        pattern,
        exps,
        |i| t[i].0.clone(),
        |i| t[i].1.clone(),
        Rational::zero(),
        Rational::one(),
    )
}

/// Solutions in `a` of `lin = const = 0` at a fixed `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ASolution {
    Unique(Rational),
    None,
    /// Both equations hold identically in `a`.
    Free,
}

pub fn solve_linear_forms(f: &LinearForms<Rational>) -> ASolution {
    let from_const = || {
        if !f.c1.is_zero() {
            ASolution::Unique(-&f.c0 / &f.c1)
        } else if f.c0.is_zero() {
            ASolution::Free
        } else {
            ASolution::None
        }
    };
    if !f.l1.is_zero() {
        let a = -&f.l0 / &f.l1;
        if (&f.c0 + &a * &f.c1).is_zero() {
            ASolution::Unique(a)
        } else {
            ASolution::None
        }
    } else if f.l0.is_zero() {
        from_const()
    } else {
        ASolution::None
    }
}

/// Which `a` make `x^2 + px + q` divide the pattern quadrinomial.
pub fn solve_a(pattern: CoefficientPattern, exps: (u32, u32, u32), p: &Rational, q: &Rational) -> ASolution {
    solve_linear_forms(&linear_forms_at(pattern, exps, p, q))
}

//! Complete search for monic quadratic divisors over Q.
//!
//! Substituting `x = y/d` turns a monic rational polynomial into a monic
//! integer one `g`; by Gauss's lemma its monic quadratic factors have integer
//! coefficients `y^2 + Py + Q` with `Q | g(0)`. For each such `Q` the
//! remainder of `g` modulo `y^2 + Py + Q` is `lin(P) y + const(P)`, and the
//! admissible `P` are the integer roots of `gcd(lin, const)`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::Rational;
use crate::error::Error;
use crate::factor::factorize;
use crate::solver::{QuadraticFactor, Quadrinomial};
use crate::upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoundFactor {
    pub factor: QuadraticFactor,
    pub cofactor: UPoly,
    /// How many times the quadratic divides the polynomial.
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorSearch {
    /// Distinct factors in canonical `(q, p)` order.
    pub factors: Vec<FoundFactor>,
    /// False if some integer factorization exhausted its budget; the list may
    /// then be missing factors.
    pub complete: bool,
}

pub fn find_quadratic_factors(f: &Quadrinomial) -> FactorSearch {
    find_quadratic_factors_poly(&f.to_upoly()).expect("quadrinomials have degree >= 4 and c != 0")
}

/// All monic quadratic divisors of `f` (made monic first), which must have
/// degree at least 2 and a nonzero constant term.
pub fn find_quadratic_factors_poly(f: &UPoly) -> Result<FactorSearch, Error> {
    let f = f.monic();
    let big_n = match f.degree() {
        Some(d) if d >= 2 => d,
        _ => return Err(Error::Malformed(format!("{f} has degree below 2"))),
    };
    if f.coeff(0).is_zero() {
        return Err(Error::Malformed(format!("{f} has zero constant term")));
    }
    let (d, mut complete) = scaling_denominator(&f);
    let dr = Rational::from_integer(d.clone());
    // g_i = f_i d^(N-i)
    let g: Vec<BigInt> = (0..=big_n)
        .map(|i| (f.coeff(i) * num_traits::pow(dr.clone(), big_n - i)).to_integer())
        .collect();
    let bound = BigInt::from(2) * (BigInt::one() + g.iter().map(|c| c.abs()).max().unwrap());

    let fc = factorize(&g[0]);
    complete &= fc.complete;
    let mut candidates: Vec<(BigInt, BigInt)> = Vec::new();
    for qd in fc.divisors() {
        for qq in [qd.clone(), -qd] {
            let (lin, cst) = remainder_in_p(&g, &qq);
            let h = lin.gcd(&cst);
            if h.is_zero() {
                // cannot happen for N >= 2, but stay complete if it does
                let b = bound.clone();
                let mut pp = -b.clone();
                while pp <= b {
                    candidates.push((pp.clone(), qq.clone()));
                    pp += 1;
                }
                continue;
            }
            if h.is_constant() {
                continue;
            }
            let roots = h.rational_roots();
            complete &= roots.complete;
            for r in roots.roots {
                if r.is_integer() && r.numer().abs() <= bound {
                    candidates.push((r.to_integer(), qq.clone()));
                }
            }
        }
    }

    let mut factors = Vec::new();
    let d2 = &dr * &dr;
    for (pp, qq) in candidates {
        let factor = QuadraticFactor::new(
            Rational::from_integer(pp) / &dr,
            Rational::from_integer(qq) / &d2,
        );
        let quad = factor.to_upoly();
        let Some(cofactor) = f.exact_div(&quad)? else {
            continue;
        };
        let mut multiplicity = 1;
        let mut rest = cofactor.clone();
        while let Some(next) = rest.exact_div(&quad)? {
            multiplicity += 1;
            rest = next;
        }
        if &quad * &cofactor != f {
            return Err(Error::Internal(format!("factor {factor} of {f} failed reconstruction")));
        }
        factors.push(FoundFactor {
            factor,
            cofactor,
            multiplicity,
        });
    }
    factors.sort_by(|a, b| a.factor.canonical_cmp(&b.factor));
    factors.dedup_by(|a, b| a.factor == b.factor);
    Ok(FactorSearch { factors, complete })
}

/// Smallest `d > 0` with `d^(N-i) f_i` integral for all `i`. Falls back to
/// the lcm of denominators (still valid, not minimal) when a denominator
/// cannot be factored; the flag reports whether the minimal value was found.
fn scaling_denominator(f: &UPoly) -> (BigInt, bool) {
    let big_n = f.degree().unwrap();
    let mut exps: Vec<(BigInt, u32)> = Vec::new();
    for i in 0..big_n {
        let c = f.coeff(i);
        if c.is_zero() || c.denom().is_one() {
            continue;
        }
        let fac = factorize(c.denom());
        if !fac.complete {
            let l = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            return (l, true);
        }
        let span = (big_n - i) as u32;
        for (p, e) in fac.factors {
            let need = e.div_ceil(span);
            match exps.iter_mut().find(|(q, _)| *q == p) {
                Some((_, have)) => *have = (*have).max(need),
                None => exps.push((p, need)),
            }
        }
    }
    let d = exps.iter().fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e));
    (d, true)
}

/// Remainder coefficients of the integer polynomial `g` modulo
/// `y^2 + P y + Q`, as polynomials in `P`.
fn remainder_in_p(g: &[BigInt], qq: &BigInt) -> (UPoly, UPoly) {
    let neg_p = UPoly::from_ints(&[0, -1]);
    let q = UPoly::constant(Rational::from_integer(qq.clone()));
    let mut a = vec![UPoly::zero(), UPoly::one()];
    let mut b = vec![UPoly::one(), UPoly::zero()];
    for i in 2..g.len() {
        a.push(&(&neg_p * &a[i - 1]) - &(&q * &a[i - 2]));
        b.push(&(&neg_p * &b[i - 1]) - &(&q * &b[i - 2]));
    }
    let mut lin = UPoly::zero();
    let mut cst = UPoly::zero();
    for (i, c) in g.iter().enumerate() {
        let c = Rational::from_integer(c.clone());
        lin = &lin + &a[i].scale(&c);
        cst = &cst + &b[i].scale(&c);
    }
    (lin, cst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};

    fn pairs(s: &str) -> Vec<(Rational, Rational)> {
        find_quadratic_factors_poly(&UPoly::parse(s).unwrap())
            .unwrap()
            .factors
            .into_iter()
            .map(|f| (f.factor.p, f.factor.q))
            .collect()
    }

    #[test]
    fn known_examples() {
        let r = find_quadratic_factors_poly(&UPoly::parse("x^5 - 3x^2 + x + 1").unwrap()).unwrap();
        assert!(r.complete);
        assert_eq!(r.factors.len(), 1);
        assert_eq!(r.factors[0].factor, QuadraticFactor::new(int(-2), int(1)));
        assert_eq!(r.factors[0].cofactor, UPoly::parse("x^3 + 2x^2 + 3x + 1").unwrap());
        assert_eq!(pairs("x^4 + x^3 + x + 1"), vec![(int(-1), int(1)), (int(2), int(1))]);
        assert_eq!(pairs("x^4 + x^2 + x + 1"), vec![]);
        assert_eq!(pairs("x^5 + 2x^3 + x + 1"), vec![(int(-1), int(1))]);
    }

    #[test]
    fn rational_coefficients() {
        assert_eq!(
            pairs("x^5 - 19397/1458 x^3 + x^2 + 1"),
            vec![(frac(10, 27), frac(1, 6))]
        );
        assert_eq!(
            pairs("x^5 + 2597/192 x^3 + x^2 + 1"),
            vec![(frac(-3, 8), frac(1, 6))]
        );
        let f = UPoly::parse("x^4 + 37/18 x^2 + x + 1").unwrap();
        let r = find_quadratic_factors_poly(&f).unwrap();
        let ps: Vec<_> = r.factors.iter().map(|f| (f.factor.p.clone(), f.factor.q.clone())).collect();
        assert_eq!(ps, vec![(frac(2, 3), frac(1, 2)), (frac(-2, 3), int(2))]);
    }

    #[test]
    fn multiplicity_of_squares() {
        let r = find_quadratic_factors_poly(&UPoly::parse("(x^2+x+1)^2 (x+3)").unwrap()).unwrap();
        let f = r.factors.iter().find(|f| f.factor.p == int(1) && f.factor.q == int(1)).unwrap();
        assert_eq!(f.multiplicity, 2);
        // x^5 - 3x^2 + x + 1 = (x-1)^2 (...) has (x-1)^2 once
        let r = find_quadratic_factors_poly(&UPoly::parse("x^5 - 3x^2 + x + 1").unwrap()).unwrap();
        assert_eq!(r.factors[0].multiplicity, 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(find_quadratic_factors_poly(&UPoly::parse("x^3 + x").unwrap()).is_err());
        assert!(find_quadratic_factors_poly(&UPoly::parse("x + 1").unwrap()).is_err());
    }
}

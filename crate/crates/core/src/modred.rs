//! `x^n mod (x^2 + px + q) = A_n x + B_n`, numerically and symbolically.
//!
//! Both sequences obey `S_n = -p S_{n-1} - q S_{n-2}` with
//! `A_0 = 0, A_1 = 1, B_0 = 1, B_1 = 0`.

use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::bipoly::BiPoly;
use crate::solver::Quadrinomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModRedPair<T> {
    pub n: usize,
    pub a: T,
    pub b: T,
}

/// `(A_i, B_i)` for `i = 0..=n` at a rational point.
pub fn mod_red_table(n: usize, p: &Rational, q: &Rational) -> Vec<(Rational, Rational)> {
    let mut out = Vec::with_capacity(n + 1);
    out.push((Rational::zero(), Rational::one()));
    if n >= 1 {
        out.push((Rational::one(), Rational::zero()));
    }
    for i in 2..=n {
        let (a1, b1) = &out[i - 1];
        let (a2, b2) = &out[i - 2];
        let a = -(p * a1) - q * a2;
        let b = -(p * b1) - q * b2;
        out.push((a, b));
    }
    out
}

pub fn mod_red_numeric(n: usize, p: &Rational, q: &Rational) -> ModRedPair<Rational> {
    let (a, b) = mod_red_table(n, p, q).swap_remove(n);
    ModRedPair { n, a, b }
}

type SymbolicTable = RwLock<Vec<Arc<ModRedPair<BiPoly>>>>;

fn symbolic_table() -> &'static SymbolicTable {
    static TABLE: OnceLock<SymbolicTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        RwLock::new(vec![
            Arc::new(ModRedPair {
                n: 0,
                a: BiPoly::zero(),
                b: BiPoly::one(),
            }),
            Arc::new(ModRedPair {
                n: 1,
                a: BiPoly::one(),
                b: BiPoly::zero(),
            }),
        ])
    })
}

/// `A_n(p, q)` and `B_n(p, q)` as polynomials; memoized per `n`.
pub fn mod_red_symbolic(n: usize) -> Arc<ModRedPair<BiPoly>> {
    let table = symbolic_table();
    if let Some(hit) = table.read().expect("memo lock").get(n) {
        return hit.clone();
    }
    let mut t = table.write().expect("memo lock");
    let (p, q) = (BiPoly::p(), BiPoly::q());
    while t.len() <= n {
        let i = t.len();
        let (s1, s2) = (&t[i - 1], &t[i - 2]);
        let a = &(-&(&p * &s1.a)) - &(&q * &s2.a);
        let b = &(-&(&p * &s1.b)) - &(&q * &s2.b);
        t.push(Arc::new(ModRedPair { n: i, a, b }));
    }
    t[n].clone()
}

/// `(lin, const)` with `f mod (x^2 + px + q) = lin x + const`.
pub fn remainder_of_quadrinomial(f: &Quadrinomial, p: &Rational, q: &Rational) -> (Rational, Rational) {
    let t = mod_red_table(f.n as usize, p, q);
    let (an, bn) = &t[f.n as usize];
    let (am, bm) = &t[f.m as usize];
    let (ak, bk) = &t[f.k as usize];
    let lin = an + &f.a * am + &f.b * ak;
    let cst = bn + &f.a * bm + &f.b * bk + &f.c;
    (lin, cst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};
    use crate::upoly::UPoly;
    use proptest::prelude::*;

    #[test]
    fn symbolic_examples() {
        let s2 = mod_red_symbolic(2);
        assert_eq!(s2.a, BiPoly::parse("-p").unwrap());
        assert_eq!(s2.b, BiPoly::parse("-q").unwrap());
        let s4 = mod_red_symbolic(4);
        assert_eq!(s4.a, BiPoly::parse("-p^3 + 2pq").unwrap());
        assert_eq!(s4.b, BiPoly::parse("-p^2 q + q^2").unwrap());
    }

    #[test]
    fn numeric_example() {
        let r = mod_red_numeric(5, &int(-2), &int(1));
        assert_eq!((r.a, r.b), (int(5), int(-4)));
    }

    #[test]
    fn quadrinomial_remainders() {
        let f = Quadrinomial::new(5, 2, 1, int(-3), int(1), int(1)).unwrap();
        assert_eq!(remainder_of_quadrinomial(&f, &int(-2), &int(1)), (int(0), int(0)));
        let g = Quadrinomial::new(4, 3, 1, int(1), int(1), int(1)).unwrap();
        assert_eq!(remainder_of_quadrinomial(&g, &int(-1), &int(1)), (int(0), int(0)));
        assert_eq!(remainder_of_quadrinomial(&g, &int(0), &int(1)), (int(0), int(2)));
    }

    #[test]
    fn degree_law() {
        for n in 2..=12 {
            let s = mod_red_symbolic(n);
            assert_eq!(s.a.deg_p(), Some(n as u32 - 1));
            assert_eq!(s.b.deg_p(), Some(n as u32 - 2));
        }
    }

    proptest! {
        #[test]
        fn matches_long_division(n in 0usize..=12, pn in -50i64..=50, pd in 1i64..=50, qn in -50i64..=50, qd in 1i64..=50) {
            let (p, q) = (frac(pn, pd), frac(qn, qd));
            let r = mod_red_numeric(n, &p, &q);
            let (_, rem) = UPoly::monomial(int(1), n).divmod(&UPoly::quadratic(&p, &q)).unwrap();
            prop_assert_eq!(rem, UPoly::new(vec![r.b.clone(), r.a.clone()]));
            let s = mod_red_symbolic(n);
            prop_assert_eq!(s.a.eval_at(&p, &q), r.a);
            prop_assert_eq!(s.b.eval_at(&p, &q), r.b);
        }
    }
}

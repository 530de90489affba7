//! Pattern sweep over the height grid.
//!
//! Every solution satisfies `L0 C1 - C0 L1 = 0` exactly, so points are
//! screened with that eliminant modulo two large primes and only survivors
//! (and points where `L1` vanishes modulo both) are re-checked with exact
//! rationals. Results are therefore exact.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{ser_rational, small_rationals, Rational};
use crate::solver::{
    check_exponents, linear_forms, linear_forms_at, solve_linear_forms, ASolution, CoefficientPattern,
    QuadraticFactor,
};
use crate::error::Error;

const PRIMES: [u64; 2] = [M61, 4611686018427387847];

const M61: u64 = (1 << 61) - 1;

#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    let t = a as u128 * b as u128;
    if m == M61 {
        let r = (t as u64 & M61) + (t >> 61) as u64;
        if r >= M61 {
            r - M61
        } else {
            r
        }
    } else {
        (t % m as u128) as u64
    }
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// The bounded-height rationals with their residues modulo both primes.
pub struct SweepGrid {
    pub height: u64,
    points: Vec<(i64, u64)>,
    residues: [Vec<u64>; 2],
}

impl SweepGrid {
    pub fn new(height: u64) -> Self {
        let points = small_rationals(height);
        let residues = PRIMES.map(|m| {
            points
                .iter()
                .map(|&(u, v)| {
                    let um = if u < 0 { m - (u.unsigned_abs() % m) } else { u as u64 % m } % m;
                    mulmod(um, powmod(v % m, m - 2, m), m)
                })
                .collect()
        });
        SweepGrid {
            height,
            points,
            residues,
        }
    }

    fn exact(&self, i: usize) -> Rational {
        let (u, v) = self.points[i];
        Rational::new_raw(BigInt::from(u), BigInt::from(v))
    }

    /// Indices of grid points with denominator `v`.
    fn with_denominator(&self, v: u64) -> impl Iterator<Item = usize> + '_ {
        self.points
            .iter()
            .enumerate()
            .filter(move |(_, pt)| pt.1 == v)
            .map(|(i, _)| i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepHit {
    pub factor: QuadraticFactor,
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepDiagnostics {
    pub pairs_examined: u64,
    /// Points where the `a`-coefficient of the linear remainder vanishes.
    pub denominator_vanished: u64,
    /// Consistent points whose only solution is `a = 0`.
    pub a_zero: u64,
    /// Points that are factors for every `a`.
    pub free_loci: Vec<QuadraticFactor>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepResult {
    pub hits: Vec<SweepHit>,
    pub diagnostics: SweepDiagnostics,
}

impl SweepResult {
    /// Deterministic union of disjoint blocks.
    pub fn merge(blocks: impl IntoIterator<Item = SweepResult>) -> SweepResult {
        let mut out = SweepResult::default();
        for b in blocks {
            out.hits.extend(b.hits);
            let d = b.diagnostics;
            out.diagnostics.pairs_examined += d.pairs_examined;
            out.diagnostics.denominator_vanished += d.denominator_vanished;
            out.diagnostics.a_zero += d.a_zero;
            out.diagnostics.free_loci.extend(d.free_loci);
        }
        out.hits.sort_by(|x, y| x.factor.canonical_cmp(&y.factor));
        out.diagnostics.free_loci.sort_by(|x, y| x.canonical_cmp(y));
        out
    }
}

/// One block of the grid: all `q` with denominator `v`, all `p`.
pub fn sweep_block(
    grid: &SweepGrid,
    pattern: CoefficientPattern,
    exps: (u32, u32, u32),
    v: u64,
) -> SweepResult {
    let n = exps.0 as usize;
    let mut out = SweepResult::default();
    let mut a = vec![0u64; n + 1];
    let mut b = vec![0u64; n + 1];
    for qi in grid.with_denominator(v) {
        if grid.points[qi].0 == 0 {
            continue;
        }
        for pi in 0..grid.points.len() {
            out.diagnostics.pairs_examined += 1;
            let mut l1_zero = true;
            let mut e_zero = true;
            for (w, &m) in PRIMES.iter().enumerate() {
                let (p, q) = (grid.residues[w][pi], grid.residues[w][qi]);
                let (np, nq) = ((m - p) % m, (m - q) % m);
                a[0] = 0;
                b[0] = 1;
                if n >= 1 {
                    a[1] = 1;
                    b[1] = 0;
                }
                for i in 2..=n {
                    a[i] = (mulmod(np, a[i - 1], m) + mulmod(nq, a[i - 2], m)) % m;
                    b[i] = (mulmod(np, b[i - 1], m) + mulmod(nq, b[i - 2], m)) % m;
                }
                let add = |x: u64, y: u64| (x + y) % m;
                let f = linear_forms(pattern, exps, |i| a[i], |i| b[i], 0u64, 1u64);
                // sums of three residues plus one stay below 2^64
                let (l0, l1, c0, c1) = (f.l0 % m, f.l1 % m, f.c0 % m, f.c1 % m);
                l1_zero &= l1 == 0;
                let e = add(mulmod(l0, c1, m), m - mulmod(c0, l1, m));
                e_zero &= e == 0;
                if !l1_zero && !e_zero {
                    break;
                }
            }
            if !l1_zero && !e_zero {
                continue;
            }
            let (p, q) = (grid.exact(pi), grid.exact(qi));
            let forms = linear_forms_at(pattern, exps, &p, &q);
            if forms.l1.is_zero() {
                out.diagnostics.denominator_vanished += 1;
            }
            match solve_linear_forms(&forms) {
                ASolution::Unique(a) if a.is_zero() => out.diagnostics.a_zero += 1,
                ASolution::Unique(a) => out.hits.push(SweepHit {
                    factor: QuadraticFactor::new(p, q),
                    a,
                }),
                ASolution::Free => out.diagnostics.free_loci.push(QuadraticFactor::new(p, q)),
                ASolution::None => {}
            }
        }
    }
    out
}

/// Every `(p, q, a)` with `height(p), height(q) <= h`, `q != 0`, `a != 0`
/// such that `x^2 + px + q` divides the pattern quadrinomial. Sorted by
/// `(q, p)` canonically. Blocks run on the current rayon pool.
pub fn pattern_sweep(
    pattern: CoefficientPattern,
    exps: (u32, u32, u32),
    h: u64,
) -> Result<SweepResult, Error> {
    check_exponents(exps.0, exps.1, exps.2)?;
    if h == 0 {
        return Err(Error::Malformed("height bound must be at least 1".into()));
    }
    let grid = SweepGrid::new(h);
    let blocks: Vec<SweepResult> = (1..=h)
        .into_par_iter()
        .map(|v| sweep_block(&grid, pattern, exps, v))
        .collect();
    Ok(SweepResult::merge(blocks))
}

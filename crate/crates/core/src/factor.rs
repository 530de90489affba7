//! Integer factorization for divisor enumeration.
//!
//! Trial division by the primes below 10^6, then Miller-Rabin and
//! Pollard-Brent rho. Rho runs under a fixed iteration budget; when the
//! budget runs out the leftover cofactor is kept as an unsplit factor and the
//! result is marked incomplete.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

const SIEVE_LIMIT: usize = 1_000_000;
const RHO_BUDGET: u64 = 400_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; SIEVE_LIMIT + 1];
        let mut primes = Vec::new();
        for i in 2..=SIEVE_LIMIT {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= SIEVE_LIMIT {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Prime (or, when incomplete, unsplit composite) factors with exponents,
    /// ascending.
    pub factors: Vec<(BigInt, u32)>,
    pub complete: bool,
}

impl Factorization {
    /// Positive divisors, ascending. When the factorization is incomplete
    /// these are only the divisors generated by the factors found.
    pub fn divisors(&self) -> Vec<BigInt> {
        let mut divs = vec![BigInt::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
            for d in &divs {
                let mut pk = d.clone();
                next.push(pk.clone());
                for _ in 0..*e {
                    pk *= p;
                    next.push(pk.clone());
                }
            }
            divs = next;
        }
        divs.sort();
        divs
    }
}

/// Factors `|n|`. Zero and units give an empty, complete factorization.
pub fn factorize(n: &BigInt) -> Factorization {
    let mut n = n.abs();
    let mut found: Vec<BigInt> = Vec::new();
    let mut complete = true;
    if n <= BigInt::one() {
        return Factorization {
            factors: Vec::new(),
            complete: true,
        };
    }
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > n {
            break;
        }
        while (&n % &pb).is_zero() {
            n /= &pb;
            found.push(pb.clone());
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if m < BigInt::from(1_000_000_000_000u64) || is_probable_prime(&m) {
            // Below 10^12 anything left after trial division to 10^6 is prime.
            found.push(m);
            continue;
        }
        match pollard_brent(&m) {
            Some(d) => {
                stack.push(&m / &d);
                stack.push(d);
            }
            None => {
                complete = false;
                found.push(m);
            }
        }
    }
    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for f in found {
        match factors.last_mut() {
            Some((p, e)) if *p == f => *e += 1,
            _ => factors.push((f, 1)),
        }
    }
    Factorization { factors, complete }
}

const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin with the first twelve prime bases; deterministic below
/// 3.3e24 and overwhelmingly reliable above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &p in &MR_BASES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'bases: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A nontrivial divisor of the odd composite `n`, or `None` if the budget
/// runs out.
fn pollard_brent(n: &BigInt) -> Option<BigInt> {
    let mut spent = 0u64;
    for c in 1u32..=8 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const M: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..M.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += M;
            }
            r *= 2;
            spent += r;
            if spent > RHO_BUDGET {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Convenience for tests and small callers.
pub fn factorize_u64(n: u64) -> Vec<(u64, u32)> {
    factorize(&BigInt::from(n))
        .factors
        .into_iter()
        .map(|(p, e)| (p.to_u64().expect("factor of a u64"), e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        assert_eq!(factorize_u64(1), vec![]);
        assert_eq!(factorize_u64(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize_u64(1458), vec![(2, 1), (3, 6)]);
        assert_eq!(factorize_u64(999_983), vec![(999_983, 1)]);
    }

    #[test]
    fn rho_splits_semiprime() {
        // both factors above the trial-division range
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(998_244_353u64);
        let f = factorize(&(&p * &q));
        assert!(f.complete);
        assert_eq!(f.factors, vec![(p, 1), (q, 1)]);
        let f = factorize(&(BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64)));
        assert!(f.complete);
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let big = BigInt::from(2305843009213693951u64) * BigInt::from(4611686018427387847u64);
        let f = factorize(&(&big * 12));
        assert!(!f.complete);
        let prod: BigInt = f.factors.iter().map(|(p, e)| p.pow(*e)).product();
        assert_eq!(prod, big * 12);
    }

    #[test]
    fn divisors_of_72() {
        let d: Vec<u64> = factorize(&BigInt::from(72))
            .divisors()
            .into_iter()
            .map(|d| d.to_u64().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72]);
    }

    proptest! {
        #[test]
        fn product_of_factors_is_n(n in 1u64..5_000_000_000) {
            let f = factorize(&BigInt::from(n));
            prop_assert!(f.complete);
            let mut prod = BigInt::one();
            for (p, e) in &f.factors {
                prop_assert!(is_probable_prime(p));
                prod *= p.pow(*e);
            }
            prop_assert_eq!(prod, BigInt::from(n));
        }
    }
}

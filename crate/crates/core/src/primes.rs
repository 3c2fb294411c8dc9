//! Small-integer number theory used throughout.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as (prime, exponent) pairs, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n)
        .take_while(|d| d * d <= n)
        .filter(|d| n.is_multiple_of(*d))
        .collect();
    let mut upper: Vec<u64> = out
        .iter()
        .rev()
        .map(|d| n / d)
        .filter(|&q| q * q != n)
        .collect();
    out.append(&mut upper);
    out
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Factorizes a big integer whose prime divisors are all at most `bound`
/// (group orders of degree-`bound` permutation groups divide `bound!`).
pub fn factorize_smooth(n: &BigUint, bound: u64) -> Vec<(u64, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    for p in (2..=bound.max(2)).filter(|&p| is_prime(p)) {
        if n.is_one() {
            break;
        }
        let bp = BigUint::from(p);
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    assert!(n.is_one(), "cofactor {n} has a prime factor above {bound}");
    out
}

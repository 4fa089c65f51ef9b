//! Small integer helpers: primality, prime factors and p-parts.

use crate::error::{GroupError, Result};

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

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(p))
    }
}

/// Largest power of `p` dividing `n` (`n > 0`).
pub fn p_part(n: usize, p: u64) -> usize {
    let p = p as usize;
    let mut n = n;
    let mut part = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// Distinct prime divisors of `n` in ascending order.
pub fn prime_divisors(n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u64);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

/// `p^{bar}`: `p` for odd primes, 4 for `p = 2`.
pub fn p_bar(p: u64) -> u64 {
    if p == 2 {
        4
    } else {
        p
    }
}

/// `base^exp mod m` without overflow for the sizes we meet (`m` is an element order).
pub(crate) fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut b, mut e, mut acc) = (base % m, exp, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Exponent `e` with `p^e = n`, for `n` a power of `p`.
pub fn log_p(n: u64, p: u64) -> u32 {
    let (mut x, mut e) = (n, 0);
    while x > 1 && x % p == 0 {
        x /= p;
        e += 1;
    }
    e
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

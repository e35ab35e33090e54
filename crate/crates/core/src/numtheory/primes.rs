//! Prime generation and primality.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};

const SEGMENT: u64 = 1 << 18;

/// Witnesses that make Miller–Rabin deterministic below `3.3 * 10^24`.
const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn simple_sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// All primes `<= n`, by a segmented sieve of Eratosthenes.
pub fn sieve_primes(n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("sieve bound must be at least 2, got {n}")));
    }
    let root = n.isqrt();
    let base = simple_sieve(root);
    let segments: Vec<u64> = (0..=n / SEGMENT).collect();
    let chunks: Vec<Vec<u64>> = segments
        .into_par_iter()
        .map(|s| {
            let lo = (s * SEGMENT).max(2);
            let hi = ((s + 1) * SEGMENT - 1).min(n);
            if lo > hi {
                return Vec::new();
            }
            let mut composite = vec![false; (hi - lo + 1) as usize];
            for &p in &base {
                let start = (p * p).max(lo.div_ceil(p) * p);
                let mut j = start;
                while j <= hi {
                    composite[(j - lo) as usize] = true;
                    j += p;
                }
            }
            composite.iter().enumerate().filter(|(_, &c)| !c).map(|(i, _)| lo + i as u64).collect()
        })
        .collect();
    Ok(chunks.concat())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic primality for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary integers: exact below `2^64`, Miller–Rabin with
/// the first twelve prime bases above (deterministic below `3.3 * 10^24`).
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    'witness: for &a in &BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: &BigUint) -> BigUint {
    let two = BigUint::from(2u8);
    if *n <= two {
        return two;
    }
    let mut c = n.clone();
    if c.is_even() {
        c += 1u8;
    }
    while !is_prime(&c) {
        c += 2u8;
    }
    c
}

/// Trial division, for cross-checking.
pub fn is_prime_trial(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

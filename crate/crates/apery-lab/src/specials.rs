//! Bernoulli numbers, Euler numbers, and generalized harmonic numbers —
//! exact values by the defining recurrences (memoized, grow-only under a
//! lock) plus reductions modulo p^e.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::{Mutex, OnceLock};

use crate::arith::{binom_int, mod_inv, reduce_rational, Modulus, Residue};
use crate::error::{Error, Result};

static BERNOULLI: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
static EULER: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();

/// Bernoulli number B_n, from B_0 = 1 and sum(C(n+1,k) B_k, k=0..n) = 0.
pub fn bernoulli(n: u64) -> BigRational {
    let cache = BERNOULLI.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut table = cache.lock().unwrap();
    while table.len() as u64 <= n {
        let m = table.len() as u64; // next index to fill
        let mut acc = BigRational::zero();
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += BigRational::from_integer(binom_int(m + 1, k as u64)) * b;
            }
        }
        let next = -acc / BigRational::from_integer(BigInt::from(m + 1));
        table.push(next);
    }
    table[n as usize].clone()
}

/// Euler number E_n, from E_0 = 1, odd indices zero, and
/// sum(C(n,k) E_{n-k}, even k, 0 <= k <= n) = 0 for even n >= 2.
pub fn euler_number(n: u64) -> BigInt {
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let cache = EULER.get_or_init(|| Mutex::new(vec![BigInt::one()]));
    let mut table = cache.lock().unwrap();
    // table[i] holds E_{2i}
    while table.len() as u64 <= n / 2 {
        let m = 2 * table.len() as u64; // next even index to fill
        let mut acc = BigInt::zero();
        for (i, e) in table.iter().enumerate() {
            // k = m - 2i runs over the even k >= 2 terms
            acc += binom_int(m, m - 2 * i as u64) * e;
        }
        table.push(-acc);
    }
    table[(n / 2) as usize].clone()
}

/// Generalized harmonic number H_n^(m) = sum(1/k^m, 0 < k <= n), exact.
pub fn harmonic(n: u64, m: u32) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 1..=n {
        acc += BigRational::new(BigInt::one(), BigInt::from(k).pow(m));
    }
    acc
}

/// B_n reduced modulo p^e. Errors when (p-1) | n for n > 0 (von
/// Staudt–Clausen puts p in the denominator exactly then).
pub fn bernoulli_mod(p: u64, n: u64, e: u32) -> Result<Residue> {
    let modulus = Modulus::new(p, e)?;
    if n > 0 && n.is_multiple_of(p - 1) {
        return Err(Error::DenominatorDivisibleByP {
            value: format!("B_{n}"),
            p,
        });
    }
    reduce_rational(&bernoulli(n), &modulus)
}

/// E_n reduced modulo p^e.
pub fn euler_mod(p: u64, n: u64, e: u32) -> Result<Residue> {
    let modulus = Modulus::new(p, e)?;
    Ok(modulus.reduce_int(&euler_number(n)))
}

/// H_n^(m) reduced modulo p^e. Summed directly in the residue ring when
/// n < p; reduces the exact rational otherwise (so e.g. n = 2p fails with
/// a denominator error, as it should).
pub fn harmonic_mod(p: u64, n: u64, m: u32, e: u32) -> Result<Residue> {
    let modulus = Modulus::new(p, e)?;
    if n < p {
        let mut acc = Residue::zero(modulus.clone());
        for k in 1..=n {
            let inv = mod_inv(&BigInt::from(k), &modulus)?;
            acc = acc.add(&inv.pow(m as u64));
        }
        Ok(acc)
    } else {
        reduce_rational(&harmonic(n, m), &modulus)
    }
}

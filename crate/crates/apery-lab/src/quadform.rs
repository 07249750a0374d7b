//! Representations p = x^2 + d*y^2 for d in {1,2,3,4}, the normalizations
//! (x odd / x ≡ 1 mod 4) that congruence right-hand sides require, and the
//! c(p) selector taking 4x^2 - 2p on p = x^2 + 2y^2 primes.

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// A representation p = x^2 + d*y^2. Both parts are positive as returned by
/// [`cornacchia`]; normalization may flip the sign of x.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QuadRep {
    pub p: u64,
    pub d: u64,
    pub x: i64,
    pub y: i64,
}

impl QuadRep {
    fn new(p: u64, d: u64, x: i64, y: i64) -> QuadRep {
        debug_assert_eq!(x * x + (d as i64) * y * y, p as i64);
        QuadRep { p, d, x, y }
    }
}

/// Normalization conventions for d = 1 representations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Convention {
    XOdd,
    XOneMod4,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Square root of a modulo an odd prime p by Tonelli–Shanks (nonresidue
/// found by increasing search, so the output is deterministic); the smaller
/// of the two roots is returned. None when a is a nonresidue.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let r = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        // p - 1 = q * 2^s with q odd
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = (2..p)
            .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
            .unwrap();
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    Some(r.min(p - r))
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Cornacchia's algorithm run from one square root of -d.
fn cornacchia_from_root(p: u64, d: u64, root: u64) -> Option<(u64, u64)> {
    let bound = isqrt(p);
    let (mut a, mut b) = (p, root);
    while b > bound {
        let r = a % b;
        a = b;
        b = r;
    }
    if b == 0 {
        return None;
    }
    let rest = p - b * b;
    if !rest.is_multiple_of(d) {
        return None;
    }
    let y = isqrt(rest / d);
    if y * y * d == rest {
        Some((b, y))
    } else {
        None
    }
}

/// Some (x, y) with x^2 + d*y^2 = p, or None when p is not represented.
/// Deterministic: x is the smallest positive value among solutions.
pub fn cornacchia(p: u64, d: u64) -> Result<Option<QuadRep>> {
    if !(1..=4).contains(&d) {
        return Err(Error::DomainViolation(format!(
            "form coefficient must be in 1..=4, got {d}"
        )));
    }
    if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::DomainViolation(format!(
            "cornacchia needs an odd prime, got {p}"
        )));
    }
    if d.is_multiple_of(p) {
        return Err(Error::DomainViolation(format!(
            "cornacchia needs p not dividing d, got p={p}, d={d}"
        )));
    }
    if d == 4 {
        // p = x^2 + 4y^2 iff p = x^2 + (2y)^2; the odd part of the d = 1
        // pair is x and the even part halves into y.
        return Ok(cornacchia(p, 1)?.map(|r| {
            let (odd, even) = if r.x % 2 != 0 { (r.x, r.y) } else { (r.y, r.x) };
            QuadRep::new(p, 4, odd, even / 2)
        }));
    }
    let neg_d = (p - d % p) % p;
    let Some(root) = sqrt_mod(neg_d, p) else {
        return Ok(None);
    };
    let hit = cornacchia_from_root(p, d, root).or_else(|| cornacchia_from_root(p, d, p - root));
    Ok(hit.map(|(x, y)| {
        // the positive solution is unique up to the d = 1 swap; pick the
        // smaller part as x there so output is the smallest-x solution
        let (x, y) = if d == 1 && y < x { (y, x) } else { (x, y) };
        QuadRep::new(p, d, x as i64, y as i64)
    }))
}

/// Adjust a d = 1 representation to the requested convention, swapping the
/// parts and/or flipping the sign of x. x ≡ 1 (mod 4) uses a negative x
/// when needed; y stays positive.
pub fn normalize_rep(rep: &QuadRep, convention: Convention) -> Result<QuadRep> {
    if rep.d != 1 {
        return Err(Error::ConventionInapplicable(format!(
            "x-parity conventions apply to d = 1 only, got d = {}",
            rep.d
        )));
    }
    let (mut x, mut y) = (rep.x.abs(), rep.y.abs());
    if x % 2 == 0 {
        std::mem::swap(&mut x, &mut y);
    }
    if x % 2 == 0 {
        return Err(Error::ConventionInapplicable(format!(
            "no odd part in {} = {}^2 + {}^2",
            rep.p, rep.x, rep.y
        )));
    }
    match convention {
        Convention::XOdd => Ok(QuadRep::new(rep.p, 1, x, y)),
        Convention::XOneMod4 => {
            if x.rem_euclid(4) != 1 {
                x = -x;
            }
            Ok(QuadRep::new(rep.p, 1, x, y))
        }
    }
}

/// c(p): 4x^2 - 2p with p = x^2 + 2y^2 when p ≡ 1, 3 (mod 8), else 0.
pub fn c_of_p(p: u64) -> Result<i64> {
    match p % 8 {
        5 | 7 => Ok(0),
        1 | 3 => {
            let rep = cornacchia(p, 2)?.ok_or(Error::RepresentationMissing { p, d: 2 })?;
            Ok(4 * rep.x * rep.x - 2 * p as i64)
        }
        _ => Err(Error::DomainViolation(format!(
            "c(p) needs an odd prime, got {p}"
        ))),
    }
}

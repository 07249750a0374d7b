//! Arbitrary-precision integer/rational kernels and prime-power residue
//! arithmetic.
//!
//! The two modular value types:
//! * [`Residue`] — a plain value in `Z/p^e`.
//! * [`FactoredResidue`] — a value written as `p^v * u` with `u` a unit kept
//!   modulo `p^e`. Multiplying or dividing by p-divisible factors only moves
//!   `v`, so long product/quotient chains (binomial term ratios, mostly) stay
//!   exact; the valuation may go negative mid-chain and only has to be
//!   nonnegative when the value is collapsed back to a [`Residue`].

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// p-adic valuation: either finite or +infinity (valuation of zero).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Valuation::*;
        match (self, other) {
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

/// Prime-power modulus p^e with p an odd prime and 1 <= e <= 6.
#[derive(Clone, Debug)]
pub struct Modulus {
    p: u64,
    e: u32,
    pe: BigInt,
}

impl PartialEq for Modulus {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}
impl Eq for Modulus {}

impl std::hash::Hash for Modulus {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.p, self.e).hash(state);
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.e)
        }
    }
}

impl Modulus {
    pub fn new(p: u64, e: u32) -> Result<Modulus> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::DomainViolation(format!(
                "modulus base must be an odd prime, got {p}"
            )));
        }
        if !(1..=6).contains(&e) {
            return Err(Error::DomainViolation(format!(
                "modulus exponent must be in 1..=6, got {e}"
            )));
        }
        let pe = BigInt::from(p).pow(e);
        Ok(Modulus { p, e, pe })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// The modulus value p^e.
    pub fn value(&self) -> &BigInt {
        &self.pe
    }

    /// Same prime, smaller (or equal) exponent.
    pub fn shrink(&self, e: u32) -> Result<Modulus> {
        if e > self.e {
            return Err(Error::DomainViolation(format!(
                "cannot grow modulus {self} to exponent {e}"
            )));
        }
        Modulus::new(self.p, e)
    }

    pub fn reduce_int(&self, n: &BigInt) -> Residue {
        Residue::new(n.clone(), self.clone())
    }
}

/// A value in `Z/p^e`, always stored in `[0, p^e)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Residue {
    value: BigInt,
    modulus: Modulus,
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Residue {
    pub fn new(value: BigInt, modulus: Modulus) -> Residue {
        let value = value.mod_floor(&modulus.pe);
        Residue { value, modulus }
    }

    pub fn zero(modulus: Modulus) -> Residue {
        Residue {
            value: BigInt::zero(),
            modulus,
        }
    }

    pub fn one(modulus: Modulus) -> Residue {
        Residue::new(BigInt::one(), modulus)
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check_same(&self, other: &Residue) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed moduli: {} vs {}",
            self.modulus, other.modulus
        );
    }

    pub fn add(&self, other: &Residue) -> Residue {
        self.check_same(other);
        Residue::new(&self.value + &other.value, self.modulus.clone())
    }

    pub fn sub(&self, other: &Residue) -> Residue {
        self.check_same(other);
        Residue::new(&self.value - &other.value, self.modulus.clone())
    }

    pub fn mul(&self, other: &Residue) -> Residue {
        self.check_same(other);
        Residue::new(&self.value * &other.value, self.modulus.clone())
    }

    pub fn neg(&self) -> Residue {
        Residue::new(-&self.value, self.modulus.clone())
    }

    pub fn pow(&self, k: u64) -> Residue {
        let v = self.value.modpow(&BigInt::from(k), &self.modulus.pe);
        Residue {
            value: v,
            modulus: self.modulus.clone(),
        }
    }

    pub fn inv(&self) -> Result<Residue> {
        mod_inv(&self.value, &self.modulus)
    }

    /// Reduce into the ring with the same prime and a smaller exponent.
    pub fn to_modulus(&self, m: &Modulus) -> Result<Residue> {
        if m.p != self.modulus.p || m.e > self.modulus.e {
            return Err(Error::DomainViolation(format!(
                "cannot reduce residue mod {} into mod {}",
                self.modulus, m
            )));
        }
        Ok(Residue::new(self.value.clone(), m.clone()))
    }
}

/// Inverse of `a` modulo `m`, by extended gcd.
pub fn mod_inv(a: &BigInt, m: &Modulus) -> Result<Residue> {
    let a_red = a.mod_floor(m.value());
    let g = a_red.extended_gcd(m.value());
    if !g.gcd.is_one() {
        return Err(Error::NotInvertible {
            value: a_red.to_string(),
            modulus: m.to_string(),
        });
    }
    Ok(Residue::new(g.x, m.clone()))
}

/// Valuation and unit part of a nonzero integer: n = p^v * u with p ∤ u.
pub(crate) fn split_valuation(n: &BigInt, p: u64) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0i64;
    let mut u = n.clone();
    loop {
        let (q, r) = u.div_rem(&pb);
        if r.is_zero() {
            v += 1;
            u = q;
        } else {
            return (v, u);
        }
    }
}

/// p-adic valuation of a rational (Infinite for zero).
pub fn p_valuation(x: &BigRational, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let (vn, _) = split_valuation(x.numer(), p);
    if vn > 0 {
        return Valuation::Finite(vn);
    }
    let (vd, _) = split_valuation(x.denom(), p);
    Valuation::Finite(-vd)
}

/// Reduce a p-integral rational modulo p^e.
pub fn reduce_rational(x: &BigRational, m: &Modulus) -> Result<Residue> {
    let (vd, du) = split_valuation(x.denom(), m.p());
    if vd > 0 {
        return Err(Error::DenominatorDivisibleByP {
            value: format_rational(x),
            p: m.p(),
        });
    }
    let dinv = mod_inv(&du, m)?;
    Ok(m.reduce_int(x.numer()).mul(&dinv))
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<i32> {
    if n.is_negative() || n.is_even() {
        return Err(Error::DomainViolation(format!(
            "jacobi symbol needs odd positive n, got {n}"
        )));
    }
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i32;
    let three = BigInt::from(3);
    let four = BigInt::from(4);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    while !a.is_zero() {
        while a.is_even() {
            a /= 2;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { t } else { 0 })
}

/// Legendre symbol (x/p) for rational p-integral x: multiplicative over
/// numerator and denominator; 0 when p divides the numerator.
pub fn legendre(x: &BigRational, p: u64) -> Result<i32> {
    let pb = BigInt::from(p);
    let (vd, _) = split_valuation(x.denom(), p);
    if vd > 0 {
        return Err(Error::DenominatorDivisibleByP {
            value: format_rational(x),
            p,
        });
    }
    let jn = jacobi(x.numer(), &pb)?;
    let jd = jacobi(x.denom(), &pb)?;
    Ok(jn * jd)
}

/// Fermat quotient q_p(2) = (2^(p-1) - 1)/p reduced modulo p^e.
pub fn fermat_quotient(p: u64, e: u32) -> Result<Residue> {
    let m = Modulus::new(p, e)?;
    let big = BigInt::from(p).pow(e + 1);
    let x = BigInt::from(2).modpow(&BigInt::from(p - 1), &big);
    let q = (x - 1u32) / BigInt::from(p);
    Ok(m.reduce_int(&q))
}

/// Binomial coefficient with nonnegative integer arguments.
pub fn binom_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    binom_int_big(&BigInt::from(n), k)
}

/// Binomial coefficient with arbitrary integer upper argument (exact; always
/// an integer).
pub fn binom_int_big(n: &BigInt, k: u64) -> BigInt {
    let mut c = BigInt::one();
    for j in 0..k {
        c *= n - BigInt::from(j);
        c /= BigInt::from(j + 1); // exact: every prefix is a binomial
    }
    c
}

/// Generalized binomial coefficient with rational upper argument.
pub fn binom_gen(x: &BigRational, k: u64) -> BigRational {
    let mut c = BigRational::one();
    for j in 0..k {
        c *= x - BigRational::from_integer(BigInt::from(j));
        c /= BigRational::from_integer(BigInt::from(j + 1));
    }
    c
}

/// Deterministic primality by trial division (fine for the supported range).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    // wheel over 30: candidates coprime to 2,3,5
    let mut d = 7u64;
    let steps = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut i = 0usize;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += steps[i];
        i = (i + 1) % steps.len();
    }
    true
}

/// Primes in [lo, hi], by sieve of Eratosthenes.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi < lo {
        return Vec::new();
    }
    let n = hi as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut i = 2usize;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (lo.max(2)..=hi).filter(|&q| sieve[q as usize]).collect()
}

/// Parse an integer or `a/b` rational literal (canonical form enforced).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    let bad = |_| Error::Parse(format!("malformed rational literal {s:?}"));
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(bad)?;
            Ok(BigRational::from_integer(n))
        }
        Some((ns, ds)) => {
            let n = BigInt::from_str(ns.trim()).map_err(bad)?;
            let d = BigInt::from_str(ds.trim()).map_err(bad)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Render a rational as `n` or `n/d` (matches `parse_rational`).
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A nonzero value p^v * u (unit u kept modulo p^e), or the zero element.
/// Valuation may be any integer while a product/quotient chain is running;
/// collapsing demands v >= 0.
#[derive(Clone, Debug)]
pub struct FactoredResidue {
    modulus: Modulus,
    repr: Option<(i64, BigInt)>,
}

impl FactoredResidue {
    pub fn zero(modulus: Modulus) -> FactoredResidue {
        FactoredResidue {
            modulus,
            repr: None,
        }
    }

    pub fn one(modulus: Modulus) -> FactoredResidue {
        let one = BigInt::one();
        FactoredResidue {
            modulus,
            repr: Some((0, one)),
        }
    }

    pub fn from_int(n: &BigInt, modulus: Modulus) -> FactoredResidue {
        if n.is_zero() {
            return FactoredResidue::zero(modulus);
        }
        let (v, u) = split_valuation(n, modulus.p());
        let u = u.mod_floor(modulus.value());
        FactoredResidue {
            modulus,
            repr: Some((v, u)),
        }
    }

    /// Any nonzero rational is representable: valuation may be negative.
    pub fn from_rational(x: &BigRational, modulus: Modulus) -> Result<FactoredResidue> {
        if x.is_zero() {
            return Ok(FactoredResidue::zero(modulus));
        }
        let num = FactoredResidue::from_int(x.numer(), modulus.clone());
        let den = FactoredResidue::from_int(x.denom(), modulus);
        num.div(&den)
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_none()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.repr.as_ref().map(|(v, _)| *v)
    }

    pub fn unit(&self) -> Option<&BigInt> {
        self.repr.as_ref().map(|(_, u)| u)
    }

    pub fn mul(&self, other: &FactoredResidue) -> FactoredResidue {
        assert_eq!(self.modulus, other.modulus, "mixed moduli in factored mul");
        match (&self.repr, &other.repr) {
            (Some((v1, u1)), Some((v2, u2))) => {
                let u = (u1 * u2).mod_floor(self.modulus.value());
                FactoredResidue {
                    modulus: self.modulus.clone(),
                    repr: Some((v1 + v2, u)),
                }
            }
            _ => FactoredResidue::zero(self.modulus.clone()),
        }
    }

    pub fn div(&self, other: &FactoredResidue) -> Result<FactoredResidue> {
        assert_eq!(self.modulus, other.modulus, "mixed moduli in factored div");
        let (v2, u2) = other.repr.as_ref().ok_or(Error::DivisionByZero)?;
        let Some((v1, u1)) = &self.repr else {
            return Ok(FactoredResidue::zero(self.modulus.clone()));
        };
        let inv = mod_inv(u2, &self.modulus)?;
        let u = (u1 * inv.value()).mod_floor(self.modulus.value());
        Ok(FactoredResidue {
            modulus: self.modulus.clone(),
            repr: Some((v1 - v2, u)),
        })
    }

    pub fn pow(&self, k: u32) -> FactoredResidue {
        match &self.repr {
            None => {
                if k == 0 {
                    FactoredResidue::one(self.modulus.clone())
                } else {
                    FactoredResidue::zero(self.modulus.clone())
                }
            }
            Some((v, u)) => {
                let uu = u.modpow(&BigInt::from(k), self.modulus.value());
                FactoredResidue {
                    modulus: self.modulus.clone(),
                    repr: Some((v * k as i64, uu)),
                }
            }
        }
    }

    /// Collapse p^v * u to a plain residue. Errors when v < 0.
    pub fn collapse(&self) -> Result<Residue> {
        match &self.repr {
            None => Ok(Residue::zero(self.modulus.clone())),
            Some((v, u)) => {
                if *v < 0 {
                    return Err(Error::NegativeValuationAtCollapse { valuation: *v });
                }
                if *v >= self.modulus.e() as i64 {
                    return Ok(Residue::zero(self.modulus.clone()));
                }
                let pv = BigInt::from(self.modulus.p()).pow(*v as u32);
                Ok(Residue::new(pv * u, self.modulus.clone()))
            }
        }
    }
}

/// Spec-surface aliases for the factored operations.
pub fn factored_mul(a: &FactoredResidue, b: &FactoredResidue) -> FactoredResidue {
    a.mul(b)
}

pub fn factored_div(a: &FactoredResidue, b: &FactoredResidue) -> Result<FactoredResidue> {
    a.div(b)
}

//! Property tests: algebraic laws of the reduction and evaluation layers,
//! dual-formula agreement, and serialization round-trips.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use apery_lab::arith::{
    binom_gen, binom_int, format_rational, legendre, p_valuation, parse_rational, reduce_rational,
    FactoredResidue, Modulus, Valuation,
};
use apery_lab::report::{parse_jsonl_line, read_csv, write_csv, ClaimReport};
use apery_lab::sequences::{
    apery_poly, apery_poly_dual, delannoy_poly, sum_sequence_exact, sum_sequence_mod, w_poly,
    w_poly_dual, PolySequenceKind, Sign, SumSpec, Weight,
};

const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Bump a denominator off multiples of p so the value is p-integral.
fn coprime_den(d: i64, p: u64) -> i64 {
    if d % (p as i64) == 0 {
        d + 1
    } else {
        d
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn reduce_is_a_ring_homomorphism(
        pi in 0usize..PRIMES.len(),
        e in 1u32..=4,
        an in -1_000_000i64..=1_000_000,
        ad in 1i64..=5000,
        bn in -1_000_000i64..=1_000_000,
        bd in 1i64..=5000,
    ) {
        let p = PRIMES[pi];
        let m = Modulus::new(p, e).unwrap();
        let a = rat(an, coprime_den(ad, p));
        let b = rat(bn, coprime_den(bd, p));
        let red = |x: &BigRational| -> BigInt { reduce_rational(x, &m).unwrap().value().clone() };
        let ra = reduce_rational(&a, &m).unwrap();
        let rb = reduce_rational(&b, &m).unwrap();
        prop_assert_eq!(red(&(&a + &b)), ra.add(&rb).value().clone());
        prop_assert_eq!(red(&(&a * &b)), ra.mul(&rb).value().clone());
        prop_assert_eq!(red(&(-&a)), ra.neg().value().clone());
    }

    #[test]
    fn legendre_matches_euler_criterion(pi in 1usize..PRIMES.len(), a in 1u64..1000) {
        let p = PRIMES[pi]; // odd p > 3 keeps (p-1)/2 even/odd cases interesting
        let a = a % (p - 1) + 1; // unit residue 1..p-1
        let sym = legendre(&int(a as i64), p).unwrap();
        let pow = BigInt::from(a).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
        let expected = if pow.is_one() { 1 } else { -1 };
        prop_assert_eq!(sym, expected);
    }

    #[test]
    fn binom_gen_extends_integer_binomials(n in 0u64..=40, k in 0u64..=40) {
        prop_assert_eq!(
            binom_gen(&int(n as i64), k),
            BigRational::from_integer(binom_int(n, k))
        );
        // reflection: C(-n, k) = (-1)^k C(n+k-1, k)
        if n > 0 {
            let lhs = binom_gen(&int(-(n as i64)), k);
            let mut rhs = BigRational::from_integer(binom_int(n + k - 1, k));
            if k % 2 == 1 {
                rhs = -rhs;
            }
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dual_polynomial_formulas_agree(n in 0u64..=25, xn in -20i64..=20, xd in 1i64..=8) {
        let x = rat(xn, xd);
        prop_assert_eq!(apery_poly(n, &x), apery_poly_dual(n, &x));
        prop_assert_eq!(w_poly(n, &x), w_poly_dual(n, &x));
    }

    #[test]
    fn delannoy_at_one_is_central(n in 0u64..=30) {
        // D_n(1) counts lattice paths; equals Σ C(n,k)C(n+k,k)
        let direct: BigRational = (0..=n)
            .map(|k| BigRational::from_integer(binom_int(n, k) * binom_int(n + k, k)))
            .sum();
        prop_assert_eq!(delannoy_poly(n, &BigRational::one()), direct);
    }

    #[test]
    fn rational_text_round_trips(n in any::<i64>(), d in 1i64..=1_000_000) {
        let x = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn report_rows_round_trip(
        claim in "[a-z0-9.-]{1,8}",
        point in 0u64..=1_000_000,
        params in proptest::collection::btree_map("[a-z]{1,4}", "[a-z0-9/.-]{1,6}", 0..4),
        mi in 0usize..3,
        lhs in any::<i64>(),
        rhs in any::<i64>(),
        us in 0u32..1_000_000,
    ) {
        let params: BTreeMap<String, String> = params;
        let modulus = ["exact", "7", "5^2"][mi];
        let mut row = ClaimReport::from_strings(
            &claim, point, params, modulus, lhs.to_string(), rhs.to_string(),
        );
        row.us = us as u64;
        prop_assert_eq!(&parse_jsonl_line(&row.to_jsonl_line()).unwrap(), &row);
        let mut csv_bytes = Vec::new();
        write_csv(std::slice::from_ref(&row), &mut csv_bytes).unwrap();
        prop_assert_eq!(read_csv(csv_bytes.as_slice()).unwrap(), vec![row]);
    }
}

proptest! {
    // heavier cases: exact vs modular sum evaluation and factored chains
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sum_evaluators_agree(
        pi in 0usize..PRIMES.len(),
        e in 1u32..=3,
        ki in 0usize..3,
        si in 0usize..2,
        wi in 0usize..2,
        power in 1u32..=3,
        xn in -12i64..=12,
        xd in 1i64..=6,
    ) {
        let p = PRIMES[pi];
        let spec = SumSpec {
            kind: [PolySequenceKind::AperyA, PolySequenceKind::NewW, PolySequenceKind::DelannoyD][ki],
            x: rat(xn, coprime_den(xd, p)),
            sign: [Sign::Plus, Sign::Minus][si],
            weight: [Weight::Unit, Weight::TwoKPlusOne][wi],
            power,
        };
        let m = Modulus::new(p, e).unwrap();
        let fast = sum_sequence_mod(&spec, &m).unwrap();
        let slow = reduce_rational(&sum_sequence_exact(&spec, p).unwrap(), &m).unwrap();
        prop_assert_eq!(fast.value(), slow.value());
    }

    #[test]
    fn factored_chains_match_exact_mirrors(
        pi in 0usize..PRIMES.len(),
        e in 1u32..=5,
        ops in proptest::collection::vec((0u8..3, -40i64..=40, 1i64..=30), 1..10),
    ) {
        let p = PRIMES[pi];
        let m = Modulus::new(p, e).unwrap();
        let mut chain = FactoredResidue::one(m.clone());
        let mut mirror = BigRational::one();
        for (op, a, b) in ops {
            match op {
                0 => {
                    let x = rat(a, b);
                    if x.is_zero() {
                        continue;
                    }
                    chain = chain.mul(&FactoredResidue::from_rational(&x, m.clone()).unwrap());
                    mirror *= x;
                }
                1 => {
                    let d = if a == 0 { 1 } else { a };
                    chain = chain.div(&FactoredResidue::from_int(&BigInt::from(d), m.clone())).unwrap();
                    mirror /= int(d);
                }
                _ => {
                    let k = (a.unsigned_abs() % 3) as u32;
                    chain = chain.pow(k);
                    let mut powed = BigRational::one();
                    for _ in 0..k {
                        powed *= &mirror;
                    }
                    mirror = powed;
                }
            }
        }
        match p_valuation(&mirror, p) {
            Valuation::Finite(v) if v < 0 => prop_assert!(chain.collapse().is_err()),
            _ => {
                let got = chain.collapse().unwrap();
                let want = reduce_rational(&mirror, &m).unwrap();
                prop_assert_eq!(got.value(), want.value());
            }
        }
    }
}

#[test]
fn valuation_orders_with_infinite_on_top() {
    assert!(Valuation::Infinite > Valuation::Finite(1_000_000));
    assert!(Valuation::Finite(2) > Valuation::Finite(-3));
    assert_eq!(p_valuation(&BigRational::zero(), 5), Valuation::Infinite);
    assert_eq!(p_valuation(&rat(50, 7), 5), Valuation::Finite(2));
    assert_eq!(p_valuation(&rat(7, 25), 5), Valuation::Finite(-2));
    assert!(rat(3, 4).abs() > BigRational::zero());
}

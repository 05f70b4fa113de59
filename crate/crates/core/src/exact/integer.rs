//! Big-integer helpers: integer square root, squarefree parts and Bézout
//! coefficients.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `⌊√n⌋` for a nonnegative big integer.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::NegativeInput);
    }
    Ok(isqrt_unchecked(n))
}

pub(crate) fn isqrt_unchecked(n: &BigInt) -> BigInt {
    if let Some(small) = n.to_u128() {
        return BigInt::from(isqrt_u128(small));
    }
    // Newton iteration from an overestimate; the sequence decreases
    // monotonically until it reaches the floor.
    let bits = n.bits();
    let mut x: BigInt = BigInt::one() << bits.div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

pub(crate) fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    // f64 is accurate to ~2^-53 relative; correct in both directions.
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = isqrt_unchecked(n);
    &r * &r == *n
}

/// Splits `n ≥ 1` as `s² · d` with `d` squarefree, by trial division.
pub fn squarefree_decompose(n: &BigInt) -> Result<(BigInt, BigInt)> {
    if n.sign() != Sign::Plus {
        return Err(Error::BadParameters(format!(
            "squarefree decomposition needs a positive integer, got {n}"
        )));
    }
    if let Some(small) = n.to_u64() {
        let (s, d) = squarefree_decompose_u64(small);
        return Ok((BigInt::from(s), BigInt::from(d)));
    }
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut d = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut exp = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            exp += 1;
        }
        for _ in 0..exp / 2 {
            s *= &p;
        }
        if exp % 2 == 1 {
            d *= &p;
        }
        p += 1u32;
    }
    d *= rest;
    Ok((s, d))
}

fn squarefree_decompose_u64(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut d = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut exp = 0;
        while n.is_multiple_of(p) {
            n /= p;
            exp += 1;
        }
        for _ in 0..exp / 2 {
            s *= p;
        }
        if exp % 2 == 1 {
            d *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, d * n)
}

/// Returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b)`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_x, mut x) = (BigInt::one(), BigInt::zero());
    let (mut old_y, mut y) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_x = &old_x - &q * &x;
        old_x = std::mem::replace(&mut x, next_x);
        let next_y = &old_y - &q * &y;
        old_y = std::mem::replace(&mut y, next_y);
    }
    if old_r.is_negative() {
        (-old_r, -old_x, -old_y)
    } else {
        (old_r, old_x, old_y)
    }
}

/// Inverse of `a` modulo `m`, reduced into `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, x, _) = extended_gcd(a, m);
    g.is_one().then(|| x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&big(2017)).unwrap(), big(44));
        assert_eq!(isqrt(&big(0)).unwrap(), big(0));
        assert_eq!(isqrt(&big(1936)).unwrap(), big(44));
        assert_eq!(isqrt(&big(-1)), Err(Error::NegativeInput));
    }

    #[test]
    fn isqrt_huge_values() {
        let ten = BigInt::from(10u32);
        let x = num_traits::pow(ten, 40) + 12345u32;
        let r = isqrt(&(&x * &x)).unwrap();
        assert_eq!(r, x);
        let r = isqrt(&(&x * &x - 1u32)).unwrap();
        assert_eq!(r, &x - 1u32);
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_decompose(&big(8)).unwrap(), (big(2), big(2)));
        assert_eq!(
            squarefree_decompose(&big(2017)).unwrap(),
            (big(1), big(2017))
        );
        assert_eq!(squarefree_decompose(&big(36)).unwrap(), (big(6), big(1)));
        assert_eq!(squarefree_decompose(&big(1)).unwrap(), (big(1), big(1)));
        assert!(squarefree_decompose(&big(0)).is_err());
    }

    #[test]
    fn bezout_identity() {
        let (g, x, y) = extended_gcd(&big(240), &big(46));
        assert_eq!(g, big(2));
        assert_eq!(big(240) * x + big(46) * y, big(2));
        assert_eq!(mod_inverse(&big(4), &big(9)), Some(big(7)));
        assert_eq!(mod_inverse(&big(6), &big(9)), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn isqrt_brackets(hi in 0u64..1_000_000_000_000_000, lo in 0u64..1_000_000_000_000_000u64) {
            // values up to ~10^30
            let n = BigInt::from(hi) * BigInt::from(1_000_000_000_000_000u64) + BigInt::from(lo);
            let r = isqrt(&n).unwrap();
            prop_assert!(&r * &r <= n);
            let r1 = &r + 1u32;
            prop_assert!(&r1 * &r1 > n);
        }

        #[test]
        fn squarefree_recomposes(n in 1u64..10_000_000) {
            let (s, d) = squarefree_decompose(&BigInt::from(n)).unwrap();
            prop_assert_eq!(&s * &s * &d, BigInt::from(n));
            let mut p = 2u64;
            let d64 = d.to_u64().unwrap();
            while p * p <= d64 {
                prop_assert!(d64 % (p * p) != 0);
                p += 1;
            }
        }
    }
}

//! Simplest rational strictly inside an open interval.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::alg::{AlgNum, Rat};
use crate::error::{Error, Result};

/// The rational of smallest denominator in the open interval `(lo, hi)`:
/// the first node of the Stern–Brocot descent that lands strictly inside.
///
/// Runs of identical descent steps are taken at once via floors, so the
/// work grows with the continued-fraction length rather than the
/// denominator.
pub fn rational_between(lo: &AlgNum, hi: &AlgNum) -> Result<Rat> {
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    Ok(simplest(lo.clone(), Some(hi.clone())))
}

/// `hi = None` stands for `+∞`.
fn simplest(lo: AlgNum, hi: Option<AlgNum>) -> Rat {
    // Expansion as a continued fraction: collect integer parts, then fold.
    let mut terms: Vec<BigInt> = Vec::new();
    let (mut lo, mut hi) = (lo, hi);
    loop {
        let whole = lo.floor();
        let next = &whole + 1u32;
        let fits = match &hi {
            None => true,
            Some(h) => AlgNum::int(next.clone()) < *h,
        };
        if fits {
            terms.push(next);
            break;
        }
        // Both ends share the integer part; recurse on reciprocals of the
        // fractional parts, which swaps their order.
        terms.push(whole.clone());
        let shift = Rat::from_integer(-whole);
        let lo_frac = lo.add_rat(&shift);
        let hi_frac = hi.expect("bounded above").add_rat(&shift);
        let new_lo = hi_frac.recip().expect("upper end exceeds the integer part");
        let new_hi = if lo_frac == AlgNum::zero() {
            None
        } else {
            Some(lo_frac.recip().expect("nonzero"))
        };
        lo = new_lo;
        hi = new_hi;
    }
    let mut acc = Rat::from_integer(terms.pop().expect("at least one term"));
    while let Some(t) = terms.pop() {
        debug_assert!(!acc.is_zero());
        acc = Rat::from_integer(t) + Rat::one() / acc;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> AlgNum {
        AlgNum::ratio(n, d).unwrap()
    }

    /// Brute-force smallest denominator, then smallest numerator.
    fn brute(lo: &AlgNum, hi: &AlgNum) -> Rat {
        for den in 1i64.. {
            let start = lo.floor_mul_int(&BigInt::from(den));
            let mut num = start;
            loop {
                let cand = AlgNum::Rational(Rat::new(num.clone(), BigInt::from(den)));
                if cand >= *hi {
                    break;
                }
                if cand > *lo {
                    return Rat::new(num, BigInt::from(den));
                }
                num += 1;
            }
        }
        unreachable!()
    }

    #[test]
    fn examples() {
        let half_sqrt2 = AlgNum::quad(0, 1, 2, 2).unwrap();
        assert_eq!(
            rational_between(&rat(1, 2), &half_sqrt2).unwrap(),
            Rat::new(2.into(), 3.into())
        );
        assert_eq!(
            rational_between(&AlgNum::zero(), &AlgNum::one()).unwrap(),
            Rat::new(1.into(), 2.into())
        );
        let sqrt2 = AlgNum::quad(0, 1, 2, 1).unwrap();
        let w = rational_between(&sqrt2, &rat(3, 2)).unwrap();
        assert!(sqrt2 < AlgNum::Rational(w.clone()) && AlgNum::Rational(w.clone()) < rat(3, 2));
        assert_eq!(w, brute(&sqrt2, &rat(3, 2)));
        assert_eq!(
            rational_between(&rat(1, 2), &rat(1, 2)),
            Err(Error::EmptyInterval)
        );
        assert_eq!(
            rational_between(&rat(-5, 2), &rat(-2, 1)).unwrap(),
            Rat::new((-7).into(), 3.into())
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn strictly_between_and_simplest(
            a in -200i64..200, b in 1i64..60, c in 0i64..5, d in 2u64..30, w in 1i64..50
        ) {
            let lo = AlgNum::quad(a, c, d, b).unwrap();
            let hi = lo.add_rat(&Rat::new(w.into(), 97.into()));
            let m = rational_between(&lo, &hi).unwrap();
            let mm = AlgNum::Rational(m.clone());
            prop_assert!(lo < mm && mm < hi);
            prop_assert_eq!(m, brute(&lo, &hi));
        }
    }
}

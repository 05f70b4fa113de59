//! Formal sums `Σ cᵢ·√dᵢ` over distinct squarefree `dᵢ`. Square roots of
//! distinct squarefree integers are linearly independent over ℚ, so two sums
//! are equal exactly when their coefficient maps are.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::alg::{AlgNum, Rat};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurdSum {
    /// radicand (1 for the rational part) → coefficient; zeros are pruned.
    terms: BTreeMap<BigInt, Rat>,
}

impl SurdSum {
    pub fn zero() -> SurdSum {
        SurdSum::default()
    }

    fn push(&mut self, d: BigInt, c: Rat) {
        let slot = self.terms.entry(d.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, c)| {
                let root = if d.is_one() {
                    1.0
                } else {
                    AlgNum::from_parts(BigInt::zero(), BigInt::one(), d.clone(), BigInt::one())
                        .expect("positive radicand")
                        .to_f64()
                };
                c.to_f64().unwrap_or(f64::NAN) * root
            })
            .sum()
    }
}

impl From<&AlgNum> for SurdSum {
    fn from(x: &AlgNum) -> SurdSum {
        let mut out = SurdSum::zero();
        match x {
            AlgNum::Rational(v) => out.push(BigInt::one(), v.clone()),
            AlgNum::Quadratic(v) => {
                out.push(BigInt::one(), Rat::new(v.p().clone(), v.r().clone()));
                out.push(v.d().clone(), Rat::new(v.q().clone(), v.r().clone()));
            }
        }
        out
    }
}

impl Add<&SurdSum> for SurdSum {
    type Output = SurdSum;
    fn add(mut self, rhs: &SurdSum) -> SurdSum {
        for (d, c) in &rhs.terms {
            self.push(d.clone(), c.clone());
        }
        self
    }
}

impl Neg for SurdSum {
    type Output = SurdSum;
    fn neg(mut self) -> SurdSum {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub<&SurdSum> for SurdSum {
    type Output = SurdSum;
    fn sub(self, rhs: &SurdSum) -> SurdSum {
        self + &(-rhs.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_is_exact() {
        let a = AlgNum::quad(1, 1, 2, 3).unwrap();
        let b = AlgNum::quad(0, 1, 3, 1).unwrap();
        let s = SurdSum::from(&a) + &SurdSum::from(&b) - &SurdSum::from(&a) - &SurdSum::from(&b);
        assert!(s.is_zero());
        let t = SurdSum::from(&a) - &SurdSum::from(&AlgNum::ratio(1, 3).unwrap());
        assert!((t.to_f64() - 2f64.sqrt() / 3.0).abs() < 1e-15);
    }
}

//! Rational parameters `α = a/b`. `f_α` has period `b²` and vanishes on
//! multiples of `b²`, so the full range comes from `n ∈ ⟦1, b²−1⟧`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{mod_inverse, AlgNum};
use crate::floorfn::{f_eval, phi, to_i64, Dilation};
use crate::sets::{difference, format_set, int_range, scaled, set_of, sum, IntSet};

/// `a/b = sb + u + a_frac/b` with `u ∈ ⟦0, b−1⟧`, `a_frac ∈ ⟦1, b−1⟧`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalParam {
    pub a: u64,
    pub b: u64,
    pub s: u64,
    pub u: u64,
    pub a_frac: u64,
}

impl RationalParam {
    /// The parameter `sb + u + a_frac/b`.
    pub fn from_parts(b: u64, s: u64, u: u64, a_frac: u64) -> Result<RationalParam> {
        if b < 2 || u >= b || a_frac == 0 || a_frac >= b {
            return Err(Error::BadParameters(format!(
                "need b >= 2, u < b, 0 < a_frac < b; got b={b}, u={u}, a_frac={a_frac}"
            )));
        }
        let a = (s.checked_mul(b).and_then(|x| x.checked_add(u)))
            .and_then(|k| k.checked_mul(b))
            .and_then(|x| x.checked_add(a_frac))
            .ok_or(Error::Overflow)?;
        decompose_param(a, b)
    }

    pub fn value(&self) -> AlgNum {
        AlgNum::ratio(self.a, self.b).expect("b >= 2")
    }

    /// `⌊a/b⌋ = sb + u`.
    pub fn whole(&self) -> u64 {
        self.s * self.b + self.u
    }
}

impl fmt::Display for RationalParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

/// `(a, b)` for a positive rational `a/b` in lowest terms.
pub fn as_fraction(x: &AlgNum) -> Option<(u64, u64)> {
    let r = x.as_rational()?;
    Some((r.numer().to_u64()?, r.denom().to_u64()?)).filter(|(a, _)| *a > 0)
}

/// Splits `a/b` into `sb + u + a_frac/b`.
pub fn decompose_param(a: u64, b: u64) -> Result<RationalParam> {
    if a == 0 || b == 0 {
        return Err(Error::BadParameters(format!("need a, b > 0; got {a}/{b}")));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::NotCoprime(a, b));
    }
    if b == 1 {
        return Err(Error::IntegerParameter(a, b));
    }
    let whole = a / b;
    Ok(RationalParam {
        a,
        b,
        s: whole / b,
        u: whole % b,
        a_frac: a % b,
    })
}

/// A computed range with the smallest `n` attaining each value.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RangeSet {
    pub witnesses: BTreeMap<i64, u64>,
}

impl RangeSet {
    pub fn values(&self) -> IntSet {
        self.witnesses.keys().copied().collect()
    }

    pub(crate) fn record(&mut self, value: i64, n: u64) {
        self.witnesses.entry(value).or_insert(n);
    }
}

impl fmt::Display for RangeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_set(&self.values()))
    }
}

/// The exact range of `f_{a/b}`. `f(b) = 0`, so scanning `⟦1, b²−1⟧`
/// finds a witness for 0 no larger than `b`.
pub fn range_rational(a: u64, b: u64) -> Result<RangeSet> {
    let param = decompose_param(a, b)?;
    let dil = Dilation::new(&param.value())?;
    let period = b.checked_mul(b).ok_or(Error::Overflow)?;
    let mut out = RangeSet::default();
    for n in 1..period {
        out.record(dil.eval(n)?, n);
    }
    Ok(out)
}

/// The closed-form families with a known range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClosedForm {
    /// `0 < α < 1`.
    SubUnitary,
    /// `α = k + 1/2`.
    Half,
    /// `α = k + 1/3` or `k + 2/3`.
    Third,
    /// `α = sb + 1/b`, `s ≥ 1`.
    UnitShiftZero,
    /// `α = sb + 1 + 1/b`.
    UnitShiftOne,
    /// `α = sb − 1 + 1/b`, `s ≥ 1`.
    UnitShiftDown,
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosedForm::SubUnitary => "a/b<1",
            ClosedForm::Half => "k+1/2",
            ClosedForm::Third => "k+1/3,k+2/3",
            ClosedForm::UnitShiftZero => "sb+1/b",
            ClosedForm::UnitShiftOne => "sb+1+1/b",
            ClosedForm::UnitShiftDown => "sb-1+1/b",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub values: IntSet,
    /// Every family that applies; all of them predicted `values`.
    pub forms: Vec<ClosedForm>,
}

fn union(a: &IntSet, b: &IntSet) -> IntSet {
    a.union(b).copied().collect()
}

fn third_range(whole: i64, a_frac: u64) -> IntSet {
    match (whole.rem_euclid(3), a_frac) {
        (0, 1) => {
            let s = whole / 3;
            set_of([0, s, 2 * s])
        }
        (0, _) => {
            let s = whole / 3;
            set_of([0, s, 2 * s, 2 * s + 1])
        }
        (1, 1) => {
            let s = (whole + 2) / 3;
            set_of([0, s - 1, s, 2 * s - 2, 2 * s - 1])
        }
        (1, _) => {
            let s = (whole + 2) / 3;
            set_of([0, s - 1, s, 2 * s - 1])
        }
        _ => {
            let s = (whole + 1) / 3;
            set_of([0, s - 1, s, 2 * s - 1, 2 * s])
        }
    }
}

/// The range predicted by every closed form matching `a/b`, or `None`
/// when no closed form applies. Overlapping forms must agree, otherwise
/// the result is `PredictionConflict`.
pub fn predicted_range(a: u64, b: u64) -> Result<Option<Prediction>> {
    let p = decompose_param(a, b)?;
    let to_i = |x: u64| i64::try_from(x).map_err(|_| Error::Overflow);
    let (bi, s, whole) = (to_i(p.b)?, to_i(p.s)?, to_i(p.whole())?);
    let mut found: Vec<(ClosedForm, IntSet)> = Vec::new();

    if whole == 0 {
        let v = if p.a_frac == 1 {
            set_of([0])
        } else {
            set_of([0, 1])
        };
        found.push((ClosedForm::SubUnitary, v));
    }
    if p.b == 2 {
        let v = if whole % 2 == 0 {
            set_of([0, whole / 2])
        } else {
            let s = (whole + 1) / 2;
            set_of([0, s - 1, s])
        };
        found.push((ClosedForm::Half, v));
    }
    if p.b == 3 {
        found.push((ClosedForm::Third, third_range(whole, p.a_frac)));
    }
    if p.a_frac == 1 {
        let base = |s: i64| scaled(s, &int_range(0, bi - 1));
        let upper = |s: i64| scaled(s, &int_range(1, bi - 1));
        if p.u == 0 && s >= 1 {
            found.push((ClosedForm::UnitShiftZero, base(s)));
        }
        if p.u == 1 {
            found.push((
                ClosedForm::UnitShiftOne,
                union(&base(s), &sum(&upper(s), &set_of([1]))),
            ));
        }
        if p.u == p.b - 1 {
            let s = s + 1;
            found.push((
                ClosedForm::UnitShiftDown,
                union(&base(s), &difference(&upper(s), &set_of([1]))),
            ));
        }
    }

    let Some((_, first)) = found.first() else {
        return Ok(None);
    };
    if let Some((form, other)) = found.iter().find(|(_, v)| v != first) {
        return Err(Error::PredictionConflict(format!(
            "{p}: {} predicts {} but {form} predicts {}",
            found[0].0,
            format_set(first),
            format_set(other)
        )));
    }
    Ok(Some(Prediction {
        values: first.clone(),
        forms: found.into_iter().map(|(f, _)| f).collect(),
    }))
}

/// `f_α(n)` for `α = sb + u + a/b`, `n = bt + r` with `t, r ∈ ⟦0, b−1⟧`, as
/// `sar − (sb+u)⌊ar/b⌋ + ⌊2uar/b + a²t/b + a²r/b²⌋ − ⌊uar/b + a²t/b + (a/b)⌊ar/b⌋⌋`.
pub fn closed_form_eval(param: &RationalParam, n: u64) -> Result<i64> {
    let limit = param.b.checked_mul(param.b).ok_or(Error::Overflow)?;
    if n >= limit {
        return Err(Error::OutOfWindow { n, limit });
    }
    let big = BigInt::from;
    let (a, b, s, u) = (big(param.a_frac), big(param.b), big(param.s), big(param.u));
    let (t, r) = (big(n / param.b), big(n % param.b));
    let ar = &a * &r;
    let q = ar.div_floor(&b);
    let a2 = &a * &a;
    let first = &s * &ar - (&s * &b + &u) * &q;
    let second = (BigInt::from(2) * &u * &ar * &b + &a2 * &t * &b + &a2 * &r).div_floor(&(&b * &b));
    let third = (&u * &ar + &a2 * &t + &a * &q).div_floor(&b);
    to_i64(first + second - third)
}

/// `(f_{sb+u+a/b}(n), s·φ_{a,b}(n) + f_{u+a/b}(n))`.
pub fn decomposition_identity_check(param: &RationalParam, n: u64) -> Result<(i64, i64)> {
    let lhs = f_eval(&param.value(), n)?;
    let reduced = AlgNum::ratio(param.u * param.b + param.a_frac, param.b)?;
    let phi_part = param
        .s
        .checked_mul(phi(param.a_frac, param.b, n)?)
        .and_then(|v| v.to_i64())
        .ok_or(Error::Overflow)?;
    let rhs = phi_part + f_eval(&reduced, n)?;
    Ok((lhs, rhs))
}

/// Smallest `n ≥ 1` with `a²n ≡ 1 (mod b²)`; then `f_{a/b}(n) = 1`.
pub fn bezout_witness(a: u64, b: u64) -> Result<u64> {
    if !(1 < a && a < b) || a.gcd(&b) != 1 {
        return Err(Error::BadParameters(format!(
            "need coprime 1 < a < b, got a = {a}, b = {b}"
        )));
    }
    let a2 = BigInt::from(a) * a;
    let b2 = BigInt::from(b) * b;
    let inv = mod_inverse(&a2, &b2).expect("coprime");
    // inv = 0 only if b² = 1.
    inv.to_u64().filter(|n| !n.is_zero()).ok_or(Error::Overflow)
}

/// For `(x, y) ∈ ⟦0, b−1⟧²`, whether `(x, y) ↦ ax + by` is injective and
/// whether its image contains `⟦0, b²−1⟧`.
pub fn linear_combination_probe(a: u64, b: u64) -> (bool, bool) {
    let mut seen = std::collections::BTreeSet::new();
    let mut injective = true;
    for x in 0..b {
        for y in 0..b {
            injective &= seen.insert(a * x + b * y);
        }
    }
    let covers = (0..b * b).all(|v| seen.contains(&v));
    (injective, covers)
}

/// `s⟦0, b−1⟧ ∪ (s⟦1, b−1⟧ − {1})`, the conjectured range of `f_{sb − a/b}`.
pub fn minus_fraction_conjecture(b: u64, s: u64) -> IntSet {
    let (b, s) = (b as i64, s as i64);
    union(
        &scaled(s, &int_range(0, b - 1)),
        &difference(&scaled(s, &int_range(1, b - 1)), &set_of([1])),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepCase {
    pub b: u64,
    pub a: u64,
    pub s: u64,
    pub param: RationalParam,
    pub predicted: IntSet,
    pub computed: IntSet,
}

impl SweepCase {
    pub fn matches(&self) -> bool {
        self.predicted == self.computed
    }

    pub fn record(&self) -> String {
        format!(
            "b={} a={} s={} alpha={} predicted={} computed={} status={}",
            self.b,
            self.a,
            self.s,
            self.param,
            format_set(&self.predicted),
            format_set(&self.computed),
            if self.matches() { "match" } else { "mismatch" }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub b_max: u64,
    pub s_max: u64,
    pub cases: Vec<SweepCase>,
}

impl SweepReport {
    pub fn checked_count(&self) -> usize {
        self.cases.len()
    }

    pub fn counterexamples(&self) -> Vec<&SweepCase> {
        self.cases.iter().filter(|c| !c.matches()).collect()
    }

    pub fn records(&self) -> Vec<String> {
        self.cases.iter().map(SweepCase::record).collect()
    }

    pub fn summary(&self) -> String {
        format!(
            "range of f at sb - a/b for 2 <= b <= {}, 1 <= s <= {}: {} cases checked, {} counterexamples",
            self.b_max,
            self.s_max,
            self.checked_count(),
            self.counterexamples().len()
        )
    }
}

/// Compares the computed range of `f_{sb − a/b}` with
/// [`minus_fraction_conjecture`] for `2 ≤ b ≤ b_max`, `a < b` coprime to
/// `b`, `1 ≤ s ≤ s_max`. Cases are listed in `(b, a, s)` order.
pub fn minus_fraction_sweep(b_max: u64, s_max: u64) -> Result<SweepReport> {
    let grid: Vec<(u64, u64, u64)> = (2..=b_max)
        .flat_map(|b| {
            (1..b)
                .filter(move |a| a.gcd(&b) == 1)
                .flat_map(move |a| (1..=s_max).map(move |s| (b, a, s)))
        })
        .collect();
    let cases = grid
        .into_par_iter()
        .map(|(b, a, s)| {
            let num = s.checked_mul(b * b).map(|x| x - a).ok_or(Error::Overflow)?;
            let param = decompose_param(num, b)?;
            Ok(SweepCase {
                b,
                a,
                s,
                param,
                predicted: minus_fraction_conjecture(b, s),
                computed: range_rational(num, b)?.values(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        b_max,
        s_max,
        cases,
    })
}

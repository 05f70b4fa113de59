//! Exact numbers of degree at most two: rationals and quadratic irrationals
//! `(p + q√d)/r`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::integer::{isqrt_unchecked, squarefree_decompose};
use crate::error::{Error, Result};

/// Reduced arbitrary-precision fraction.
pub type Rat = BigRational;

/// A quadratic irrational `(p + q·√d)/r` in canonical form: `r > 0`,
/// `gcd(p, q, r) = 1`, `q ≠ 0` and `d > 1` squarefree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    r: BigInt,
}

impl QuadExt {
    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    /// The conjugate `(p - q√d)/r`.
    pub fn conjugate(&self) -> QuadExt {
        QuadExt {
            q: -&self.q,
            ..self.clone()
        }
    }
}

/// Either a rational or a quadratic irrational. Rationals always use the
/// `Rational` variant, so every value has exactly one representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgNum {
    Rational(Rat),
    Quadratic(QuadExt),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Un-normalized `(p + q√d)/r` with `r > 0`; `d = 1, q = 0` for rationals.
#[derive(Clone, Debug)]
struct Parts {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    r: BigInt,
}

impl Parts {
    fn into_alg(self) -> AlgNum {
        normalize(self.p, self.q, self.d, self.r)
    }
}

/// `⌊q·√d⌋` for `d` not a perfect square (or `q = 0`).
fn floor_q_sqrt_d(q: &BigInt, d: &BigInt) -> BigInt {
    if q.is_zero() {
        return BigInt::zero();
    }
    let root = isqrt_unchecked(&(q * q * d));
    if q.is_negative() {
        -root - 1
    } else {
        root
    }
}

/// Sign of `p + q√d` with `d ≥ 1`.
fn sign_of(p: &BigInt, q: &BigInt, d: &BigInt) -> Ordering {
    let sp = p.sign();
    let sq = q.sign();
    match (sp, sq) {
        (_, Sign::NoSign) => p.cmp(&BigInt::zero()),
        (Sign::NoSign, _) => q.cmp(&BigInt::zero()),
        (Sign::Plus, Sign::Plus) => Ordering::Greater,
        (Sign::Minus, Sign::Minus) => Ordering::Less,
        (Sign::Plus, Sign::Minus) => (p * p).cmp(&(q * q * d)),
        (Sign::Minus, Sign::Plus) => (q * q * d).cmp(&(p * p)),
    }
}

fn normalize(p: BigInt, q: BigInt, d: BigInt, r: BigInt) -> AlgNum {
    debug_assert!(!r.is_zero() && !d.is_negative());
    if q.is_zero() || d.is_zero() {
        return AlgNum::Rational(Rat::new(p, r));
    }
    let (square, free) = squarefree_decompose(&d).expect("radicand is positive");
    let q = q * square;
    if free.is_one() {
        return AlgNum::Rational(Rat::new(p + q, r));
    }
    let (mut p, mut q, mut r) = (p, q, r);
    if r.is_negative() {
        p = -p;
        q = -q;
        r = -r;
    }
    let g = p.gcd(&q).gcd(&r);
    if !g.is_one() {
        p /= &g;
        q /= &g;
        r /= &g;
    }
    AlgNum::Quadratic(QuadExt { p, q, d: free, r })
}

impl AlgNum {
    /// Canonical value of `(p + q√d)/r`.
    pub fn from_parts(p: BigInt, q: BigInt, d: BigInt, r: BigInt) -> Result<AlgNum> {
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if d.is_negative() {
            return Err(Error::BadParameters(format!("negative radicand {d}")));
        }
        Ok(normalize(p, q, d, r))
    }

    /// Convenience wrapper over [`AlgNum::from_parts`] for small inputs.
    pub fn quad(p: i64, q: i64, d: u64, r: i64) -> Result<AlgNum> {
        AlgNum::from_parts(p.into(), q.into(), d.into(), r.into())
    }

    pub fn int<T: Into<BigInt>>(n: T) -> AlgNum {
        AlgNum::Rational(Rat::from_integer(n.into()))
    }

    pub fn ratio<T: Into<BigInt>>(num: T, den: T) -> Result<AlgNum> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(AlgNum::Rational(Rat::new(num.into(), den)))
    }

    /// `√x` for a nonnegative rational `x`.
    pub fn sqrt_rat(x: &Rat) -> Result<AlgNum> {
        if x.is_negative() {
            return Err(Error::NegativeInput);
        }
        let d = x.numer() * x.denom();
        AlgNum::from_parts(BigInt::zero(), BigInt::one(), d, x.denom().clone())
    }

    pub fn zero() -> AlgNum {
        AlgNum::int(0)
    }

    pub fn one() -> AlgNum {
        AlgNum::int(1)
    }

    fn parts(&self) -> Parts {
        match self {
            AlgNum::Rational(x) => Parts {
                p: x.numer().clone(),
                q: BigInt::zero(),
                d: BigInt::one(),
                r: x.denom().clone(),
            },
            AlgNum::Quadratic(x) => Parts {
                p: x.p.clone(),
                q: x.q.clone(),
                d: x.d.clone(),
                r: x.r.clone(),
            },
        }
    }

    /// The squarefree radicand, or `None` for rationals.
    pub fn radicand(&self) -> Option<&BigInt> {
        match self {
            AlgNum::Rational(_) => None,
            AlgNum::Quadratic(x) => Some(&x.d),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            AlgNum::Rational(x) => Some(x),
            AlgNum::Quadratic(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlgNum::Rational(_))
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, AlgNum::Rational(x) if x.is_integer())
    }

    pub fn signum(&self) -> Ordering {
        match self {
            AlgNum::Rational(x) => x.numer().cmp(&BigInt::zero()),
            AlgNum::Quadratic(x) => sign_of(&x.p, &x.q, &x.d),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    fn common_radicand(&self, other: &AlgNum) -> Result<BigInt> {
        match (self.radicand(), other.radicand()) {
            (None, None) => Ok(BigInt::one()),
            (Some(d), None) | (None, Some(d)) => Ok(d.clone()),
            (Some(d1), Some(d2)) if d1 == d2 => Ok(d1.clone()),
            (Some(d1), Some(d2)) => {
                Err(Error::IncompatibleRadicands(d1.to_string(), d2.to_string()))
            }
        }
    }

    /// Exact field arithmetic inside `ℚ(√d)`.
    pub fn arith(&self, other: &AlgNum, op: ArithOp) -> Result<AlgNum> {
        let d = self.common_radicand(other)?;
        let x = self.parts();
        let y = other.parts();
        let out = match op {
            ArithOp::Add => Parts {
                p: &x.p * &y.r + &y.p * &x.r,
                q: &x.q * &y.r + &y.q * &x.r,
                d,
                r: &x.r * &y.r,
            },
            ArithOp::Sub => Parts {
                p: &x.p * &y.r - &y.p * &x.r,
                q: &x.q * &y.r - &y.q * &x.r,
                d,
                r: &x.r * &y.r,
            },
            ArithOp::Mul => Parts {
                p: &x.p * &y.p + &x.q * &y.q * &d,
                q: &x.p * &y.q + &x.q * &y.p,
                d,
                r: &x.r * &y.r,
            },
            ArithOp::Div => {
                // (p + q√d)/r inverts to r(p - q√d)/(p² - q²d).
                let norm = &y.p * &y.p - &y.q * &y.q * &d;
                if norm.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let (ip, iq) = (&y.r * &y.p, -(&y.r * &y.q));
                Parts {
                    p: &x.p * &ip + &x.q * &iq * &d,
                    q: &x.p * &iq + &x.q * &ip,
                    d,
                    r: &x.r * norm,
                }
            }
        };
        Ok(out.into_alg())
    }

    pub fn checked_add(&self, other: &AlgNum) -> Result<AlgNum> {
        self.arith(other, ArithOp::Add)
    }

    pub fn checked_sub(&self, other: &AlgNum) -> Result<AlgNum> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn checked_mul(&self, other: &AlgNum) -> Result<AlgNum> {
        self.arith(other, ArithOp::Mul)
    }

    pub fn checked_div(&self, other: &AlgNum) -> Result<AlgNum> {
        self.arith(other, ArithOp::Div)
    }

    pub fn recip(&self) -> Result<AlgNum> {
        AlgNum::one().checked_div(self)
    }

    /// Multiplies by a rational; never changes the field.
    pub fn scale(&self, k: &Rat) -> AlgNum {
        let x = self.parts();
        Parts {
            p: x.p * k.numer(),
            q: x.q * k.numer(),
            d: x.d,
            r: x.r * k.denom(),
        }
        .into_alg()
    }

    pub fn add_rat(&self, k: &Rat) -> AlgNum {
        let x = self.parts();
        Parts {
            p: x.p * k.denom() + k.numer() * &x.r,
            q: x.q * k.denom(),
            d: x.d,
            r: x.r * k.denom(),
        }
        .into_alg()
    }

    /// `⌊x⌋`.
    pub fn floor(&self) -> BigInt {
        match self {
            AlgNum::Rational(x) => x.numer().div_floor(x.denom()),
            AlgNum::Quadratic(x) => floor_quad(&x.p, &x.q, &x.d, &x.r),
        }
    }

    /// `⌊x·k⌋` for an integer `k`, without building the product.
    pub fn floor_mul_int(&self, k: &BigInt) -> BigInt {
        match self {
            AlgNum::Rational(x) => (x.numer() * k).div_floor(x.denom()),
            AlgNum::Quadratic(x) => floor_quad(&(&x.p * k), &(&x.q * k), &x.d, &x.r),
        }
    }

    /// `⌈x⌉ = -⌊-x⌋`.
    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// `⌈x·k⌉` for an integer `k`.
    pub fn ceil_mul_int(&self, k: &BigInt) -> BigInt {
        -self.floor_mul_int(&-k)
    }

    /// Fractional part `x - ⌊x⌋ ∈ [0, 1)`.
    pub fn fract(&self) -> AlgNum {
        self.add_rat(&Rat::from_integer(-self.floor()))
    }

    /// Rational bounds `lo < x < hi` (or `lo = x = hi` for rationals) with
    /// width at most `2^-bits` times the denominator scale.
    pub fn enclose(&self, bits: u64) -> (Rat, Rat) {
        match self {
            AlgNum::Rational(x) => (x.clone(), x.clone()),
            AlgNum::Quadratic(x) => {
                let scale = BigInt::one() << bits;
                let f = floor_q_sqrt_d(&(&x.q * &scale), &x.d);
                let base = &x.p * &scale;
                let den = &x.r * &scale;
                (
                    Rat::new(&base + &f, den.clone()),
                    Rat::new(base + f + 1u32, den),
                )
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            AlgNum::Rational(x) => x.to_f64().unwrap_or(f64::NAN),
            AlgNum::Quadratic(_) => {
                let (lo, _) = self.enclose(80);
                lo.to_f64().unwrap_or(f64::NAN)
            }
        }
    }

    /// Decimal string with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        format_sig(self.to_f64(), sig)
    }

    fn cmp_value(&self, other: &AlgNum) -> Ordering {
        match (self, other) {
            (AlgNum::Rational(x), AlgNum::Rational(y)) => x.cmp(y),
            _ => match self.checked_sub(other) {
                Ok(diff) => diff.signum(),
                Err(_) => cmp_mixed(self, other),
            },
        }
    }
}

/// Formats `x` with `sig` significant digits, trimming trailing zeros.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn floor_quad(p: &BigInt, q: &BigInt, d: &BigInt, r: &BigInt) -> BigInt {
    // p + q√d lies strictly between N and N + 1 with N = p + ⌊q√d⌋, and
    // ⌊y/r⌋ = ⌊⌊y⌋/r⌋ for integer r > 0.
    let n = p + floor_q_sqrt_d(q, d);
    let out = n.div_floor(r);
    debug_assert!({
        let lo = sign_of(&(p - &out * r), q, d) != Ordering::Less;
        let hi = sign_of(&(p - (&out + 1u32) * r), q, d) == Ordering::Less;
        lo && hi
    });
    out
}

/// Ordering of two quadratic irrationals with different radicands. Such a
/// difference `A + B√d₁ + C√d₂` with `B, C ≠ 0` is never zero, so refining
/// enclosures always separates the operands.
fn cmp_mixed(x: &AlgNum, y: &AlgNum) -> Ordering {
    if let (AlgNum::Quadratic(a), AlgNum::Quadratic(b)) = (x, y) {
        if a.p.is_zero() && b.p.is_zero() {
            let (sa, sb) = (a.q.sign(), b.q.sign());
            if sa != sb {
                return a.q.cmp(&b.q).then(Ordering::Equal);
            }
            // Compare squares, flipping for negatives.
            let lhs = &a.q * &a.q * &a.d * &b.r * &b.r;
            let rhs = &b.q * &b.q * &b.d * &a.r * &a.r;
            let ord = lhs.cmp(&rhs);
            return if sa == Sign::Minus {
                ord.reverse()
            } else {
                ord
            };
        }
    }
    let mut bits = 32;
    loop {
        let (xl, xh) = x.enclose(bits);
        let (yl, yh) = y.enclose(bits);
        if xh <= yl {
            return Ordering::Less;
        }
        if yh <= xl {
            return Ordering::Greater;
        }
        bits *= 2;
    }
}

impl Ord for AlgNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl PartialOrd for AlgNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        match self {
            AlgNum::Rational(x) => AlgNum::Rational(-x),
            AlgNum::Quadratic(x) => AlgNum::Quadratic(QuadExt {
                p: -&x.p,
                q: -&x.q,
                d: x.d.clone(),
                r: x.r.clone(),
            }),
        }
    }
}

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        -&self
    }
}

// Operator sugar for same-field arithmetic. Mixed radicands panic; use the
// `checked_*` methods where operands may come from different fields.
macro_rules! forward_op {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait<&AlgNum> for &AlgNum {
            type Output = AlgNum;
            fn $method(self, rhs: &AlgNum) -> AlgNum {
                self.arith(rhs, $op)
                    .expect("operands in incompatible quadratic fields")
            }
        }
        impl $trait<AlgNum> for AlgNum {
            type Output = AlgNum;
            fn $method(self, rhs: AlgNum) -> AlgNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, ArithOp::Add);
forward_op!(Sub, sub, ArithOp::Sub);
forward_op!(Mul, mul, ArithOp::Mul);

impl From<Rat> for AlgNum {
    fn from(x: Rat) -> Self {
        AlgNum::Rational(x)
    }
}

impl From<i64> for AlgNum {
    fn from(x: i64) -> Self {
        AlgNum::int(x)
    }
}

impl From<QuadExt> for AlgNum {
    fn from(x: QuadExt) -> Self {
        AlgNum::Quadratic(x)
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgNum::Rational(x) => write!(f, "{}/{}", x.numer(), x.denom()),
            AlgNum::Quadratic(x) => x.fmt(f),
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.q.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}*sqrt({}))/{}",
            self.p,
            sign,
            self.q.abs(),
            self.d,
            self.r
        )
    }
}

fn parse_int(s: &str, full: &str) -> Result<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad integer `{s}` in `{full}`")));
    }
    s.parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("{e} in `{full}`")))
}

impl FromStr for AlgNum {
    type Err = Error;

    /// Accepts `p/r`, a bare integer `p`, or `(p+q*sqrt(d))/r` (with `-`
    /// allowed in place of `+`). Non-canonical inputs are normalized.
    fn from_str(input: &str) -> Result<AlgNum> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if !s.contains("sqrt") {
            return match s.split_once('/') {
                Some((num, den)) => {
                    let den = parse_int(den, input)?;
                    if den.is_zero() {
                        return Err(Error::ZeroDenominator);
                    }
                    Ok(AlgNum::Rational(Rat::new(parse_int(num, input)?, den)))
                }
                None => Ok(AlgNum::int(parse_int(&s, input)?)),
            };
        }
        let bad = || Error::Parse(format!("expected `(p+q*sqrt(d))/r`, got `{input}`"));
        let rest = s.strip_prefix('(').ok_or_else(bad)?;
        let (body, den) = rest.rsplit_once(")/").ok_or_else(bad)?;
        let body = body.strip_suffix(')').ok_or_else(bad)?;
        let (lhs, radicand) = body.split_once("*sqrt(").ok_or_else(bad)?;
        // Split `p±q` at the sign that follows the first character.
        let cut = lhs
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .ok_or_else(bad)?;
        let (p, q) = lhs.split_at(cut);
        let q = q.strip_prefix('+').unwrap_or(q);
        let d = parse_int(radicand, input)?;
        AlgNum::from_parts(
            parse_int(p, input)?,
            parse_int(q, input)?,
            d,
            parse_int(den, input)?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, qq: i64, d: u64, r: i64) -> AlgNum {
        AlgNum::quad(p, qq, d, r).unwrap()
    }

    fn rat(n: i64, d: i64) -> AlgNum {
        AlgNum::ratio(n, d).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let phi = q(1, 1, 5, 2);
        assert_eq!(phi.to_string(), "(1+1*sqrt(5))/2");
        assert_eq!(q(0, 2, 8, 4).to_string(), "(0+1*sqrt(2))/1");
        assert_eq!(q(3, 1, 9, 2), AlgNum::int(3));
        assert_eq!(AlgNum::quad(1, 1, 2, 0), Err(Error::ZeroDenominator));
        // sign of the denominator moves to the numerator
        assert_eq!(q(1, 1, 2, -2).to_string(), "(-1-1*sqrt(2))/2");
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(q(0, 1, 2, 2).cmp(&rat(7, 10)), Ordering::Greater);
        assert_eq!(rat(1, 2).cmp(&rat(1, 2)), Ordering::Equal);
        assert_eq!(q(0, 1, 2, 10).cmp(&rat(1, 7)), Ordering::Less);
        // distinct radicands
        assert_eq!(q(0, 1, 2, 1).cmp(&q(0, 1, 3, 1)), Ordering::Less);
        assert_eq!(q(1, 1, 2, 1).cmp(&q(0, 1, 5, 1)), Ordering::Greater);
        assert_eq!(q(1, -1, 2, 1).cmp(&q(-1, 1, 3, 1)), Ordering::Less);
    }

    #[test]
    fn floor_ceil_fract_examples() {
        assert_eq!(q(1, 1, 2017, 2).floor(), BigInt::from(22));
        assert_eq!(rat(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(q(0, 1, 2, 1).floor(), BigInt::from(1));
        assert_eq!(q(0, 1, 2, 1).ceil(), BigInt::from(2));
        assert_eq!(AlgNum::int(3).ceil(), BigInt::from(3));
        assert_eq!(q(1, 1, 5, 2).ceil(), BigInt::from(2));
        assert_eq!(q(1, 1, 5, 2).fract(), q(-1, 1, 5, 2));
        assert_eq!(rat(7, 3).fract(), rat(1, 3));
        assert_eq!(AlgNum::int(5).fract(), AlgNum::zero());
        assert_eq!(q(0, -1, 2, 1).floor(), BigInt::from(-2));
    }

    #[test]
    fn arith_examples() {
        let phi = q(1, 1, 5, 2);
        assert_eq!(&phi * &phi, q(3, 1, 5, 2));
        assert_eq!(q(2, 1, 2, 1) - q(0, 1, 2, 1), AlgNum::int(2));
        let tau = q(1, 1, 2017, 2);
        assert_eq!(&(&tau * &tau) - &tau, AlgNum::int(504));
        assert!(matches!(
            q(0, 1, 2, 1).checked_add(&q(0, 1, 3, 1)),
            Err(Error::IncompatibleRadicands(..))
        ));
        assert_eq!(phi.checked_div(&AlgNum::zero()), Err(Error::DivisionByZero));
        assert_eq!(phi.recip().unwrap(), q(-1, 1, 5, 2));
    }

    #[test]
    fn display_and_parse() {
        for s in [
            "(1+1*sqrt(2017))/2",
            "(0+1*sqrt(2))/10",
            "3/1",
            "-7/2",
            "(-1-3*sqrt(7))/5",
        ] {
            let x: AlgNum = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("(0+2*sqrt(8))/4".parse::<AlgNum>().unwrap(), q(0, 1, 2, 1));
        assert_eq!("5".parse::<AlgNum>().unwrap(), AlgNum::int(5));
        assert!("(1+sqrt(2))/2".parse::<AlgNum>().is_err());
        assert!("1/0".parse::<AlgNum>().is_err());
        assert!("abc".parse::<AlgNum>().is_err());
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(q(0, 1, 2, 10).to_decimal(5), "0.14142");
        assert_eq!(rat(1, 5).to_decimal(5), "0.2");
        assert_eq!(rat(1, 7).to_decimal(5), "0.14286");
    }
}

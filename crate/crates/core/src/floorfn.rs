//! Evaluation of `f_α(n) = ⌊α²n⌋ − ⌊α⌊αn⌋⌋`, its ceiling variants, the
//! two-sided sandwich and the mod-like map `φ_{a,b}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{floor_enclosure, AlgNum, Constants, Enclosure, FloorOutcome, Rat};

pub(crate) fn to_i64(x: BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

fn require_positive(alpha: &AlgNum) -> Result<()> {
    if alpha.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveAlpha)
    }
}

/// A positive exact parameter with `α²` cached, for repeated evaluation.
#[derive(Clone, Debug)]
pub struct Dilation {
    alpha: AlgNum,
    alpha_sq: AlgNum,
}

impl Dilation {
    pub fn new(alpha: &AlgNum) -> Result<Dilation> {
        require_positive(alpha)?;
        Ok(Dilation {
            alpha: alpha.clone(),
            alpha_sq: alpha * alpha,
        })
    }

    pub fn alpha(&self) -> &AlgNum {
        &self.alpha
    }

    /// `f_α(n)` as a big integer; `f_α(0) = 0`.
    pub fn eval_big(&self, n: &BigInt) -> BigInt {
        let inner = self.alpha.floor_mul_int(n);
        self.alpha_sq.floor_mul_int(n) - self.alpha.floor_mul_int(&inner)
    }

    pub fn eval(&self, n: u64) -> Result<i64> {
        to_i64(self.eval_big(&BigInt::from(n)))
    }
}

/// `f_α(n)` in exact arithmetic. `n = 0` yields 0.
pub fn f_eval(alpha: &AlgNum, n: u64) -> Result<i64> {
    Dilation::new(alpha)?.eval(n)
}

/// `f_c(n)` for a constant known only through an enclosure. Each of the
/// three floors is certified separately.
pub fn f_eval_real(c: &Enclosure, n: u64) -> Result<i64> {
    if c.lo() <= &Rat::zero() {
        return Err(Error::NonPositiveAlpha);
    }
    let exhausted = || Error::PrecisionExhausted(c.name().to_string());
    let one = BigInt::from(1u32);
    let n = BigInt::from(n);
    let certified = |k: &BigInt| match floor_enclosure(c, k, &one) {
        FloorOutcome::Exact(v) => Ok(v),
        FloorOutcome::Ambiguous => Err(exhausted()),
    };
    let inner = certified(&n)?;
    let n_rat = Rat::from_integer(n.clone());
    let square = c
        .certified_floor(|lo, hi| (lo * lo * &n_rat, hi * hi * &n_rat))
        .ok_or_else(exhausted)?;
    let outer = certified(&inner)?;
    to_i64(square - outer)
}

/// `⌈α²n⌉ − ⌈α⌈αn⌉⌉`.
pub fn g_ceil_eval(alpha: &AlgNum, n: u64) -> Result<i64> {
    require_positive(alpha)?;
    let n = BigInt::from(n);
    let sq = alpha * alpha;
    let inner = alpha.ceil_mul_int(&n);
    to_i64(sq.ceil_mul_int(&n) - alpha.ceil_mul_int(&inner))
}

/// `⌊β²n⌋ − ⌊β⌈βn⌉⌋`.
pub fn h_mixed_eval(beta: &AlgNum, n: u64) -> Result<i64> {
    require_positive(beta)?;
    let n = BigInt::from(n);
    let sq = beta * beta;
    let inner = beta.ceil_mul_int(&n);
    to_i64(sq.floor_mul_int(&n) - beta.floor_mul_int(&inner))
}

/// `φ_{a,b}(n) = na − ⌊na/b⌋b`, for coprime `a < b`.
pub fn phi(a: u64, b: u64, n: u64) -> Result<u64> {
    if a == 0 || a >= b || a.gcd(&b) != 1 {
        return Err(Error::BadParameters(format!(
            "phi needs coprime 0 < a < b, got a = {a}, b = {b}"
        )));
    }
    let na = n as u128 * a as u128;
    Ok((na - (na / b as u128) * b as u128) as u64)
}

/// `(⌊α⟨αn⟩⌋, ⌈α⟨αn⟩⌉)`, which bracket `f_α(n)`; `f_α(n)` equals one of them.
pub fn sandwich_bounds(alpha: &AlgNum, n: u64) -> Result<(i64, i64)> {
    require_positive(alpha)?;
    let frac = alpha.scale(&Rat::from_integer(n.into())).fract();
    let v = alpha * &frac;
    Ok((to_i64(v.floor())?, to_i64(v.ceil())?))
}

/// The integer/fractional-part form of `f_α`:
/// `−⌊α⌋⌊⟨α⟩n⌋ + ⌊2⌊α⌋⟨α⟩n + ⟨α⟩²n⌋ − ⌊⌊α⌋⟨α⟩n + ⟨α⟩⌊⟨α⟩n⌋⌋`.
/// Shares no intermediate values with [`f_eval`].
pub fn alt_form_eval(alpha: &AlgNum, n: u64) -> Result<i64> {
    require_positive(alpha)?;
    let whole = alpha.floor();
    let frac = alpha.fract();
    let n = BigInt::from(n);
    let whole_rat = Rat::from_integer(whole.clone());
    let frac_floor = frac.floor_mul_int(&n);
    let first = -(&whole * &frac_floor);
    // 2⌊α⌋⟨α⟩ + ⟨α⟩²
    let coeff = &frac.scale(&(&whole_rat * Rat::from_integer(2.into()))) + &(&frac * &frac);
    let second = coeff.floor_mul_int(&n);
    // ⟨α⟩·(⌊α⌋n + ⌊⟨α⟩n⌋)
    let third = frac.floor_mul_int(&(&whole * &n + &frac_floor));
    to_i64(first + second - third)
}

/// A parameter given either exactly or as a named constant.
#[derive(Clone, Debug)]
pub enum Param {
    Exact(AlgNum),
    Constant(Enclosure),
}

impl Param {
    /// Canonical number syntax or a constant name from `constants`.
    pub fn parse(text: &str, constants: &Constants) -> Result<Param> {
        let trimmed = text.trim();
        if trimmed
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            return Ok(Param::Constant(constants.get(trimmed)?.clone()));
        }
        Ok(Param::Exact(trimmed.parse()?))
    }

    pub fn eval(&self, n: u64) -> Result<i64> {
        match self {
            Param::Exact(a) => f_eval(a, n),
            Param::Constant(c) => f_eval_real(c, n),
        }
    }

    /// `(⌊α⌋, ⌈α⌉)`.
    pub fn floor_ceil(&self) -> Result<(i64, i64)> {
        match self {
            Param::Exact(a) => Ok((to_i64(a.floor())?, to_i64(a.ceil())?)),
            Param::Constant(c) => {
                let one = BigInt::from(1u32);
                match floor_enclosure(c, &one, &one) {
                    // Bundled constants are irrational, so the ceiling is one more.
                    FloorOutcome::Exact(f) => {
                        let f = to_i64(f)?;
                        Ok((f, f + 1))
                    }
                    FloorOutcome::Ambiguous => Err(Error::PrecisionExhausted(c.name().into())),
                }
            }
        }
    }

    pub fn is_irrational(&self) -> bool {
        match self {
            Param::Exact(a) => !a.is_rational(),
            Param::Constant(_) => true,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Exact(a) => a.fmt(f),
            Param::Constant(c) => f.write_str(c.name()),
        }
    }
}

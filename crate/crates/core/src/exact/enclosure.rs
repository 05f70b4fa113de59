//! Certified rational enclosures of transcendental constants, backed by
//! stored decimal digits.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};

use super::alg::Rat;
use crate::error::{Error, Result};

/// Bundled digits of π and e.
pub const BUNDLED_CONSTANTS: &str = include_str!("../../data/constants.txt");

/// Environment variable naming an alternative constants file.
pub const CONSTANTS_ENV: &str = "FLOORGAP_CONSTANTS";

/// `lo < c < hi` where `lo` is the decimal truncation of `c` to `depth`
/// fractional digits and `hi = lo + 10^-depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    name: Arc<str>,
    /// Integer part followed by all stored fractional digits, as one integer.
    digits: Arc<BigInt>,
    lo: Rat,
    hi: Rat,
    depth: usize,
    max_depth: usize,
}

impl Enclosure {
    /// Builds an enclosure from a decimal expansion such as `3.14159...`.
    /// The expansion must be a truncation of an irrational constant.
    pub fn from_decimal(name: &str, text: &str) -> Result<Enclosure> {
        let text = text.trim();
        let (int_part, frac_part) = text
            .split_once('.')
            .ok_or_else(|| Error::Parse(format!("constant `{name}` needs a decimal point")))?;
        let ok = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        if !ok(int_part) || !ok(frac_part) {
            return Err(Error::Parse(format!(
                "constant `{name}` has malformed digits"
            )));
        }
        let digits: BigInt = format!("{int_part}{frac_part}")
            .parse()
            .expect("digits checked");
        let max_depth = frac_part.len();
        let mut out = Enclosure {
            name: name.into(),
            digits: Arc::new(digits),
            lo: Rat::one(),
            hi: Rat::one(),
            depth: 0,
            max_depth,
        };
        out.set_depth(max_depth.min(8));
        Ok(out)
    }

    fn set_depth(&mut self, depth: usize) {
        let drop = self.max_depth - depth;
        let truncated = self.digits.div_floor(&Pow::pow(BigInt::from(10u32), drop));
        let den: BigInt = Pow::pow(BigInt::from(10u32), depth);
        self.lo = Rat::new(truncated.clone(), den.clone());
        self.hi = Rat::new(truncated + 1u32, den);
        self.depth = depth;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    /// Same constant at a given number of fractional digits.
    pub fn at_depth(&self, depth: usize) -> Enclosure {
        let mut out = self.clone();
        out.set_depth(depth.clamp(1, self.max_depth));
        out
    }

    /// Next enclosure in the refinement sequence (doubling the digits), or
    /// `None` once every stored digit is in use.
    pub fn refine(&self) -> Option<Enclosure> {
        (self.depth < self.max_depth).then(|| self.at_depth((self.depth * 2).max(self.depth + 1)))
    }

    /// Repeatedly refines until `bounds` maps the enclosure to an open
    /// interval containing no integer.
    pub(crate) fn certified_floor<F>(&self, bounds: F) -> Option<BigInt>
    where
        F: Fn(&Rat, &Rat) -> (Rat, Rat),
    {
        let mut cur = self.clone();
        loop {
            let (a, b) = bounds(&cur.lo, &cur.hi);
            // The constant is strictly inside, so its image is below `b`.
            let (fa, fb) = (a.floor(), b.ceil() - Rat::one());
            if fa == fb {
                return Some(fa.to_integer());
            }
            cur = cur.refine()?;
        }
    }
}

/// Result of a certified floor that may fail at the stored precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FloorOutcome {
    Exact(BigInt),
    Ambiguous,
}

/// `⌊c · num/den⌋`, certified by refinement, or `Ambiguous` if the stored
/// digits cannot separate the value from an integer.
pub fn floor_enclosure(c: &Enclosure, scale_num: &BigInt, scale_den: &BigInt) -> FloorOutcome {
    let s = Rat::new(scale_num.clone(), scale_den.clone());
    match c.certified_floor(|lo, hi| {
        let (a, b) = (lo * &s, hi * &s);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }) {
        Some(v) => FloorOutcome::Exact(v),
        None => FloorOutcome::Ambiguous,
    }
}

/// Named constants parsed from `name=digits` lines.
#[derive(Clone, Debug)]
pub struct Constants {
    table: BTreeMap<String, Enclosure>,
}

impl Constants {
    pub fn parse(text: &str) -> Result<Constants> {
        let mut table = BTreeMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, digits) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected `name=digits`, got `{line}`")))?;
            let name = name.trim();
            table.insert(name.to_string(), Enclosure::from_decimal(name, digits)?);
        }
        Ok(Constants { table })
    }

    pub fn bundled() -> Constants {
        Constants::parse(BUNDLED_CONSTANTS).expect("bundled constants file is well formed")
    }

    /// The file named by `FLOORGAP_CONSTANTS` if set, else the bundled table.
    pub fn from_env() -> Result<Constants> {
        match std::env::var_os(CONSTANTS_ENV) {
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    Error::Parse(format!("cannot read {}: {e}", path.to_string_lossy()))
                })?;
                Constants::parse(&text)
            }
            None => Ok(Constants::bundled()),
        }
    }

    pub fn get(&self, name: &str) -> Result<&Enclosure> {
        self.table
            .get(name)
            .ok_or_else(|| Error::UnknownConstant(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.table.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn bundled_constants_have_enough_digits() {
        let c = Constants::bundled();
        for name in ["pi", "e"] {
            assert!(c.get(name).unwrap().max_depth() >= 60);
        }
        assert!(c.get("tau").is_err());
    }

    #[test]
    fn refinement_shrinks() {
        let pi = Constants::bundled().get("pi").unwrap().clone();
        let mut cur = pi.at_depth(1);
        assert_eq!(cur.lo(), &Rat::new(big(31), big(10)));
        while let Some(next) = cur.refine() {
            assert!(next.lo() >= cur.lo() && next.hi() <= cur.hi());
            assert!(next.hi() - next.lo() < cur.hi() - cur.lo());
            cur = next;
        }
        assert_eq!(cur.depth(), cur.max_depth());
    }

    #[test]
    fn floor_examples() {
        let c = Constants::bundled();
        let pi = c.get("pi").unwrap();
        let e = c.get("e").unwrap();
        assert_eq!(
            floor_enclosure(pi, &big(1), &big(1)),
            FloorOutcome::Exact(big(3))
        );
        assert_eq!(
            floor_enclosure(e, &big(2), &big(1)),
            FloorOutcome::Exact(big(5))
        );
        assert_eq!(
            floor_enclosure(pi, &big(-1), &big(1)),
            FloorOutcome::Exact(big(-4))
        );
        assert_eq!(
            pi.certified_floor(|lo, hi| (lo * lo, hi * hi)),
            Some(big(9))
        );
    }

    #[test]
    fn ambiguous_when_digits_run_out() {
        let short = Enclosure::from_decimal("x", "1.99").unwrap();
        assert_eq!(
            floor_enclosure(&short, &big(1), &big(1)),
            FloorOutcome::Exact(big(1))
        );
        // 0.9 < y < 1.0 scaled by 21/20 straddles 1.
        let straddle = Enclosure::from_decimal("y", "0.9").unwrap();
        assert_eq!(
            floor_enclosure(&straddle, &big(21), &big(20)),
            FloorOutcome::Ambiguous
        );
    }

    #[test]
    fn parse_errors() {
        assert!(Constants::parse("pi=3").is_err());
        assert!(Constants::parse("pi 3.14").is_err());
        assert!(Constants::parse("# comment\n\nq=1.5").is_ok());
    }
}

//! Irrational parameters: the family `α(t) = (1 + √(1+4t))/2`, observed
//! ranges over a scan prefix `⟦1, N⟧`, and neighborhoods of `√(k/n)`.
//!
//! Observed ranges are subsets of the true range. Every report carries
//! its scan bound and never claims more than the prefix shows.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{is_perfect_square, rational_between, AlgNum, Rat};
use crate::floorfn::{f_eval, to_i64, Dilation, Param};
use crate::sets::{format_set, int_range, IntSet};

const CHUNK: u64 = 256;

/// `α(t) = (1 + √(1+4t))/2`, the positive root of `x² − x − t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenParam {
    pub t: u64,
    pub alpha: AlgNum,
}

/// `α(t)`; rejects `t = (s−1)s`, where `1 + 4t` is a square and `α(t) = s`.
pub fn alpha_t(t: u64) -> Result<GoldenParam> {
    if t == 0 {
        return Err(Error::BadParameters("t must be positive".into()));
    }
    let disc = BigInt::from(t) * 4u32 + 1u32;
    if is_perfect_square(&disc) {
        return Err(Error::RationalDegenerate(t));
    }
    let alpha = AlgNum::from_parts(BigInt::one(), BigInt::one(), disc, BigInt::from(2))?;
    debug_assert_eq!(&(&alpha * &alpha) - &alpha, AlgNum::int(t));
    Ok(GoldenParam { t, alpha })
}

/// The shapes `⟦1,⌊α⌋⟧`, `⟦0,⌊α⌋⟧`, `⟦1,⌈α⌉⟧`, `⟦0,⌈α⌉⟧`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    A,
    B,
    C,
    D,
    Other,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::A => "A",
            Classification::B => "B",
            Classification::C => "C",
            Classification::D => "D",
            Classification::Other => "other",
        })
    }
}

/// Matches `observed` against the four candidate shapes for a parameter
/// with the given floor and ceiling.
pub fn classify_bounds(observed: &IntSet, floor: i64, ceil: i64) -> Classification {
    let candidates = [
        (Classification::A, int_range(1, floor)),
        (Classification::B, int_range(0, floor)),
        (Classification::C, int_range(1, ceil)),
        (Classification::D, int_range(0, ceil)),
    ];
    candidates
        .into_iter()
        .find(|(_, set)| set == observed)
        .map_or(Classification::Other, |(c, _)| c)
}

pub fn classify(observed: &IntSet, alpha: &Param) -> Result<Classification> {
    let (floor, ceil) = alpha.floor_ceil()?;
    Ok(classify_bounds(observed, floor, ceil))
}

/// Values of `f_α` over `⟦1, N⟧`, with the smallest witness of each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeReport {
    pub alpha: String,
    pub scan_bound: u64,
    pub witnesses: BTreeMap<i64, u64>,
    pub classification: Classification,
    /// Set for named constants: every value was certified with the stored digits.
    pub from_constant: bool,
}

impl RangeReport {
    pub fn observed(&self) -> IntSet {
        self.witnesses.keys().copied().collect()
    }

    pub fn record(&self) -> String {
        let wit: Vec<String> = self
            .witnesses
            .iter()
            .map(|(v, n)| format!("{v}:{n}"))
            .collect();
        let mut line = format!(
            "alpha={} N={} observed={} witnesses={} class={}",
            self.alpha,
            self.scan_bound,
            format_set(&self.observed()),
            wit.join(","),
            self.classification
        );
        if self.from_constant {
            line.push_str(" precision=certified");
        }
        line
    }
}

impl fmt::Display for RangeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha = {}", self.alpha)?;
        writeln!(
            f,
            "observed range over n <= {}: {}",
            self.scan_bound,
            format_set(&self.observed())
        )?;
        for (v, n) in &self.witnesses {
            writeln!(f, "  f({n}) = {v}")?;
        }
        write!(f, "class {}", self.classification)?;
        if self.from_constant {
            write!(f, " (certified at stored precision)")?;
        }
        Ok(())
    }
}

fn merge_min(mut a: BTreeMap<i64, u64>, b: BTreeMap<i64, u64>) -> BTreeMap<i64, u64> {
    for (v, n) in b {
        a.entry(v).and_modify(|m| *m = (*m).min(n)).or_insert(n);
    }
    a
}

/// Smallest witnesses of every value of `eval` on `⟦1, N⟧`.
fn scan_values<F>(scan_bound: u64, eval: F) -> Result<BTreeMap<i64, u64>>
where
    F: Fn(u64) -> Result<i64> + Sync,
{
    let chunks = scan_bound.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local = BTreeMap::new();
            for n in c * CHUNK + 1..=((c + 1) * CHUNK).min(scan_bound) {
                local.entry(eval(n)?).or_insert(n);
            }
            Ok(local)
        })
        .try_reduce(BTreeMap::new, |a, b| Ok(merge_min(a, b)))
}

fn exact_eval(alpha: &Param) -> Result<Option<Dilation>> {
    match alpha {
        Param::Exact(a) => Ok(Some(Dilation::new(a)?)),
        Param::Constant(_) => Ok(None),
    }
}

fn eval_with(dil: &Option<Dilation>, alpha: &Param, n: u64) -> Result<i64> {
    match dil {
        Some(d) => d.eval(n),
        None => alpha.eval(n),
    }
}

/// Values of `f_α(n)` for `n ∈ ⟦1, N⟧`, classified.
pub fn observed_range(alpha: &Param, scan_bound: u64) -> Result<RangeReport> {
    let dil = exact_eval(alpha)?;
    let witnesses = scan_values(scan_bound, |n| eval_with(&dil, alpha, n))?;
    let observed: IntSet = witnesses.keys().copied().collect();
    Ok(RangeReport {
        alpha: alpha.to_string(),
        scan_bound,
        classification: classify(&observed, alpha)?,
        witnesses,
        from_constant: matches!(alpha, Param::Constant(_)),
    })
}

fn require_irrational(alpha: &AlgNum) -> Result<()> {
    if alpha.is_rational() {
        Err(Error::RationalAlpha)
    } else {
        Ok(())
    }
}

/// Smallest `n ≤ N` with `lo < ⟨αn⟩ < hi`, or `None` if the scan runs out.
pub fn fractional_window_witness(
    alpha: &AlgNum,
    lo: &AlgNum,
    hi: &AlgNum,
    scan_bound: u64,
) -> Result<Option<u64>> {
    require_irrational(alpha)?;
    if !(&AlgNum::zero() <= lo && lo < hi && hi <= &AlgNum::one()) {
        return Err(Error::BadParameters("need 0 <= lo < hi <= 1".into()));
    }
    Ok((1..=scan_bound).find(|&n| {
        let frac = alpha.scale(&Rat::from_integer(n.into())).fract();
        lo < &frac && &frac < hi
    }))
}

/// Witnesses for the values `⟦1, ⌊α⌋⟧` within a scan prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerIntervalReport {
    pub alpha: String,
    pub scan_bound: u64,
    pub witnessed: BTreeMap<i64, u64>,
    pub missing: Vec<i64>,
}

impl LowerIntervalReport {
    pub fn complete(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn record(&self) -> String {
        let wit: Vec<String> = self
            .witnessed
            .iter()
            .map(|(v, n)| format!("{v}:{n}"))
            .collect();
        let missing: IntSet = self.missing.iter().copied().collect();
        format!(
            "alpha={} N={} witnessed={} missing={} status={}",
            self.alpha,
            self.scan_bound,
            wit.join(","),
            format_set(&missing),
            if self.complete() {
                "complete"
            } else {
                "incomplete"
            }
        )
    }
}

/// Which of `⟦1, ⌊α⌋⟧` are attained by `f_α` on `⟦1, N⟧`. Missing values
/// only mean the scan was too short to find them.
pub fn lower_interval_check(alpha: &Param, scan_bound: u64) -> Result<LowerIntervalReport> {
    if let Param::Exact(a) = alpha {
        require_irrational(a)?;
    }
    let (floor, _) = alpha.floor_ceil()?;
    let report = observed_range(alpha, scan_bound)?;
    let witnessed: BTreeMap<i64, u64> = report
        .witnesses
        .into_iter()
        .filter(|(v, _)| (1..=floor).contains(v))
        .collect();
    let missing = (1..=floor).filter(|v| !witnessed.contains_key(v)).collect();
    Ok(LowerIntervalReport {
        alpha: alpha.to_string(),
        scan_bound,
        witnessed,
        missing,
    })
}

/// [`lower_interval_check`] for `α(t)`, where the full set is attained.
pub fn full_range_witnesses(g: &GoldenParam, scan_bound: u64) -> Result<LowerIntervalReport> {
    lower_interval_check(&Param::Exact(g.alpha.clone()), scan_bound)
}

/// Violations of `1 ≤ f_β(n) ≤ ⌊β⌋` and of the strict sandwich
/// `(β−p)⟨βn⟩ < f_β(n) < p + (β−p)⟨βn⟩` for `β = p·α(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledBoundReport {
    pub p: u64,
    pub t: u64,
    pub scan_bound: u64,
    pub violations: Vec<(u64, String)>,
}

pub fn scaled_bound_check(p: u64, t: u64, scan_bound: u64) -> Result<ScaledBoundReport> {
    if p == 0 {
        return Err(Error::BadParameters("p must be positive".into()));
    }
    let g = alpha_t(t)?;
    let p_rat = Rat::from_integer(p.into());
    let beta = g.alpha.scale(&p_rat);
    let slope = beta.add_rat(&-p_rat.clone());
    let floor = to_i64(beta.floor())?;
    let dil = Dilation::new(&beta)?;
    let chunks = scan_bound.div_ceil(CHUNK);
    let violations = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local = Vec::new();
            for n in c * CHUNK + 1..=((c + 1) * CHUNK).min(scan_bound) {
                let f = dil.eval(n)?;
                if !(1..=floor).contains(&f) {
                    local.push((n, format!("f = {f} outside [1, {floor}]")));
                }
                let lower = &slope * &beta.scale(&Rat::from_integer(n.into())).fract();
                let upper = lower.add_rat(&p_rat);
                let fv = AlgNum::int(f);
                if !(lower < fv && fv < upper) {
                    local.push((n, format!("f = {f} outside ({lower}, {upper})")));
                }
            }
            Ok(local)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(ScaledBoundReport {
        p,
        t,
        scan_bound,
        violations,
    })
}

fn check_kn(k: u64, n: u64) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::BadParameters(format!(
            "need 0 < k < n, got k = {k}, n = {n}"
        )));
    }
    if is_perfect_square(&(BigInt::from(k) * n)) {
        return Err(Error::PerfectSquare(k, n));
    }
    Ok(())
}

/// `√(k/n)`.
pub fn sqrt_kn(k: u64, n: u64) -> Result<AlgNum> {
    check_kn(k, n)?;
    AlgNum::sqrt_rat(&Rat::new(k.into(), n.into()))
}

/// `ε_{k,n} = (1/n)·min(⌈√(kn)⌉ − √(kn), √(kn) − ⌊√(kn)⌋)`.
pub fn eps_kn(k: u64, n: u64) -> Result<AlgNum> {
    check_kn(k, n)?;
    let root = AlgNum::quad(0, 1, k * n, 1)?;
    let below = root.fract();
    let above = (-&below).add_rat(&Rat::one());
    let dist = if below < above { below } else { above };
    Ok(dist.scale(&Rat::new(BigInt::one(), n.into())))
}

/// `f_α(n)` at `α = √(k/n)` and at `samples` points of `(√(k/n), √(k/n) + ε_{k,n})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodReport {
    pub k: u64,
    pub n: u64,
    pub eps: AlgNum,
    pub points: Vec<(AlgNum, i64)>,
}

impl NeighborhoodReport {
    pub fn all_one(&self) -> bool {
        self.points.iter().all(|(_, f)| *f == 1)
    }
}

/// Offsets are `r·j/(samples+1)` for `j ∈ ⟦1, samples⟧`, where `r` is the
/// simplest rational in `(0, ε_{k,n})`, so every point stays in `ℚ(√(kn))`.
pub fn sqrt_neighborhood_check(k: u64, n: u64, samples: u64) -> Result<NeighborhoodReport> {
    let base = sqrt_kn(k, n)?;
    let eps = eps_kn(k, n)?;
    let r = rational_between(&AlgNum::zero(), &eps)?;
    let mut points = vec![(base.clone(), f_eval(&base, n)?)];
    for j in 1..=samples {
        let x = &r * Rat::new(j.into(), (samples + 1).into());
        let alpha = base.add_rat(&x);
        let f = f_eval(&alpha, n)?;
        points.push((alpha, f));
    }
    Ok(NeighborhoodReport { k, n, eps, points })
}

/// Outcome of scanning a family for parameters whose observed range is `{1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingletonScan {
    pub scan_bound: u64,
    pub survivors: Vec<String>,
    /// `(α, n, f_α(n))` with `f_α(n) ≠ 1`, at the smallest such `n`.
    pub eliminated: Vec<(String, u64, i64)>,
}

impl SingletonScan {
    pub fn records(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .survivors
            .iter()
            .map(|a| {
                format!(
                    "alpha={a} N={} observed={{1}} status=survivor",
                    self.scan_bound
                )
            })
            .collect();
        out.extend(self.eliminated.iter().map(|(a, n, f)| {
            format!(
                "alpha={a} N={} n={n} f={f} status=eliminated",
                self.scan_bound
            )
        }));
        out
    }
}

/// Members of `family` with `f_α(n) = 1` for every `n ≤ N`.
pub fn singleton_range_scan(family: &[Param], scan_bound: u64) -> Result<SingletonScan> {
    let outcomes = family
        .par_iter()
        .map(|alpha| {
            if let Param::Exact(a) = alpha {
                require_irrational(a)?;
            }
            let dil = exact_eval(alpha)?;
            for n in 1..=scan_bound {
                let f = eval_with(&dil, alpha, n)?;
                if f != 1 {
                    return Ok((alpha.to_string(), Some((n, f))));
                }
            }
            Ok((alpha.to_string(), None))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut scan = SingletonScan {
        scan_bound,
        survivors: Vec::new(),
        eliminated: Vec::new(),
    };
    for (name, hit) in outcomes {
        match hit {
            None => scan.survivors.push(name),
            Some((n, f)) => scan.eliminated.push((name, n, f)),
        }
    }
    Ok(scan)
}

/// `√k` for non-square `2 ≤ k ≤ k_max`, then `α(t)` for valid `t ≤ t_max`.
pub fn default_family(k_max: u64, t_max: u64) -> Vec<AlgNum> {
    let roots = (2..=k_max)
        .filter(|k| !is_perfect_square(&BigInt::from(*k)))
        .map(|k| AlgNum::quad(0, 1, k, 1).expect("valid"));
    let golden = (1..=t_max).filter_map(|t| alpha_t(t).ok().map(|g| g.alpha));
    roots.chain(golden).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Constants;
    use crate::sets::set_of;
    use proptest::prelude::*;

    fn q(p: i64, qq: i64, d: u64, r: i64) -> AlgNum {
        AlgNum::quad(p, qq, d, r).unwrap()
    }

    fn exact(a: AlgNum) -> Param {
        Param::Exact(a)
    }

    fn constant(name: &str) -> Param {
        Param::Constant(Constants::bundled().get(name).unwrap().clone())
    }

    fn phi_golden() -> AlgNum {
        q(1, 1, 5, 2)
    }

    #[test]
    fn alpha_t_examples() {
        assert_eq!(alpha_t(1).unwrap().alpha, phi_golden());
        assert_eq!(alpha_t(504).unwrap().alpha, q(1, 1, 2017, 2));
        assert_eq!(alpha_t(2), Err(Error::RationalDegenerate(2)));
        assert_eq!(alpha_t(6), Err(Error::RationalDegenerate(6)));
        for t in 1..200 {
            if let Ok(g) = alpha_t(t) {
                assert_eq!(&(&g.alpha * &g.alpha) - &g.alpha, AlgNum::int(t));
            }
        }
    }

    #[test]
    fn observed_examples() {
        let r = observed_range(&exact(phi_golden()), 1000).unwrap();
        assert_eq!(r.observed(), set_of([1]));
        assert_eq!(r.classification, Classification::A);
        let r = observed_range(&exact(q(0, 1, 2, 1)), 1000).unwrap();
        assert_eq!(r.observed(), set_of([1, 2]));
        assert_eq!(r.classification, Classification::C);
        let r = observed_range(&exact(q(2, 1, 2, 2)), 1000).unwrap();
        assert_eq!(r.observed(), set_of([0, 1, 2]));
        assert_eq!(r.classification, Classification::D);
        assert_eq!(r.witnesses[&1], 1);
        assert_eq!(r.witnesses[&0], 2);
        assert_eq!(r.witnesses[&2], 7);
        let r = observed_range(&constant("pi"), 300).unwrap();
        assert_eq!(r.classification, Classification::D);
        assert!(r.record().ends_with("precision=certified"));
    }

    #[test]
    fn scan_is_deterministic() {
        let alpha = exact(q(1, 1, 13, 2));
        let a = observed_range(&alpha, 5000).unwrap();
        let b = observed_range(&alpha, 5000).unwrap();
        assert_eq!(a, b);
        let dil = Dilation::new(&q(1, 1, 13, 2)).unwrap();
        let mut serial = BTreeMap::new();
        for n in 1..=5000 {
            serial.entry(dil.eval(n).unwrap()).or_insert(n);
        }
        assert_eq!(a.witnesses, serial);
    }

    #[test]
    fn classify_examples() {
        let b = exact(q(2, 1, 2, 1));
        assert_eq!(
            classify(&set_of([0, 1, 2, 3]), &b).unwrap(),
            Classification::B
        );
        assert_eq!(
            classify(&set_of([1]), &exact(phi_golden())).unwrap(),
            Classification::A
        );
        assert_eq!(
            classify(&set_of([2]), &exact(q(0, 1, 2, 1))).unwrap(),
            Classification::Other
        );
    }

    #[test]
    fn window_examples() {
        let phi = phi_golden();
        let lo = AlgNum::ratio(3, 5).unwrap();
        let hi = AlgNum::ratio(13, 20).unwrap();
        let n = fractional_window_witness(&phi, &lo, &hi, 100)
            .unwrap()
            .unwrap();
        let frac = phi.scale(&Rat::from_integer(n.into())).fract();
        assert!(lo < frac && frac < hi);
        let float_first = (1..=100u64)
            .find(|&m| {
                let x = (m as f64 * 1.618_033_988_749_895).fract();
                0.6 < x && x < 0.65
            })
            .unwrap();
        assert_eq!(n, float_first);
        let root2 = q(0, 1, 2, 1);
        assert_eq!(
            fractional_window_witness(&root2, &AlgNum::zero(), &AlgNum::one(), 1).unwrap(),
            Some(1)
        );
        let near_one = AlgNum::ratio(999, 1000).unwrap();
        assert!(
            fractional_window_witness(&phi, &near_one, &AlgNum::one(), 10_000)
                .unwrap()
                .is_some()
        );
        assert_eq!(
            fractional_window_witness(&AlgNum::ratio(1, 2).unwrap(), &lo, &hi, 10),
            Err(Error::RationalAlpha)
        );
    }

    #[test]
    fn full_range_examples() {
        let r = full_range_witnesses(&alpha_t(1).unwrap(), 10).unwrap();
        assert_eq!(r.witnessed, BTreeMap::from([(1, 1)]));
        let r = full_range_witnesses(&alpha_t(5).unwrap(), 1000).unwrap();
        assert!(r.complete());
        assert_eq!(r.witnessed.len(), 2);
    }

    #[test]
    fn lower_interval_examples() {
        let r = lower_interval_check(&exact(q(0, 1, 2, 1)), 100).unwrap();
        assert!(r.complete());
        let r = lower_interval_check(&exact(q(2, 1, 2, 1)), 100).unwrap();
        assert_eq!(r.witnessed, BTreeMap::from([(1, 1), (2, 4), (3, 2)]));
        assert_eq!(
            lower_interval_check(&exact(AlgNum::int(3)), 100),
            Err(Error::RationalAlpha)
        );
    }

    #[test]
    fn scaled_bound_examples() {
        for (p, t) in [(2, 1), (1, 504), (3, 3)] {
            let r = scaled_bound_check(p, t, 1000).unwrap();
            assert!(r.violations.is_empty(), "{:?}", r.violations);
        }
        // 2φ = 1 + √5
        let beta = alpha_t(1)
            .unwrap()
            .alpha
            .scale(&Rat::from_integer(2.into()));
        assert_eq!(beta, q(1, 1, 5, 1));
    }

    #[test]
    fn eps_examples() {
        assert_eq!(eps_kn(1, 2).unwrap(), q(-1, 1, 2, 2));
        assert_eq!(eps_kn(2, 3).unwrap(), q(-2, 1, 6, 3));
        assert_eq!(eps_kn(1, 4), Err(Error::PerfectSquare(1, 4)));
        assert!(eps_kn(3, 3).is_err());
    }

    #[test]
    fn neighborhood_examples() {
        let r = sqrt_neighborhood_check(1, 2, 5).unwrap();
        assert!(r.all_one());
        assert_eq!(r.points.len(), 6);
        assert_eq!(r.points[0].0, q(0, 1, 2, 2));
        assert!(sqrt_neighborhood_check(3, 47, 5).unwrap().all_one());
        assert_eq!(
            sqrt_neighborhood_check(1, 4, 5),
            Err(Error::PerfectSquare(1, 4))
        );
    }

    #[test]
    fn singleton_examples() {
        let fam = [phi_golden(), q(0, 1, 2, 1), q(1, 1, 13, 2)].map(exact);
        let r = singleton_range_scan(&fam, 1000).unwrap();
        assert_eq!(r.survivors, vec![phi_golden().to_string()]);
        let r = singleton_range_scan(&[exact(phi_golden())], 1).unwrap();
        assert_eq!(r.survivors.len(), 1);
        let r = singleton_range_scan(&[exact(q(2, 1, 2, 1))], 10).unwrap();
        assert!(r.survivors.is_empty());
        assert_eq!((r.eliminated[0].1, r.eliminated[0].2), (2, 3));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn golden_values_stay_in_lower_interval(t in 1u64..200, n in 1u64..100_000) {
            if let Ok(g) = alpha_t(t) {
                let f = f_eval(&g.alpha, n).unwrap();
                prop_assert!(1 <= f && f <= to_i64(g.alpha.floor()).unwrap());
            }
        }

        #[test]
        fn neighborhood_points_give_one(n in 2u64..100, k_seed in 0u64..1000) {
            let k = 1 + k_seed % (n - 1);
            prop_assume!(!is_perfect_square(&BigInt::from(k * n)));
            let eps = eps_kn(k, n).unwrap();
            prop_assert!(eps.is_positive());
            prop_assert!(sqrt_neighborhood_check(k, n, 5).unwrap().all_one());
        }
    }
}

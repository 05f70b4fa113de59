//! End-to-end verification: ten criteria, each with a runtime bound.
//! Shared by the `acceptance` test target and `floorgap check`.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::am::{am_sets, gaps, union, Interval, IntervalSet};
use crate::error::{Error, Result};
use crate::exact::{format_sig, is_perfect_square, AlgNum, Constants, Rat};
use crate::floorfn::{alt_form_eval, f_eval, phi, sandwich_bounds, to_i64, Param};
use crate::irrational::{
    alpha_t, classify, observed_range, scaled_bound_check, sqrt_neighborhood_check, Classification,
};
use crate::rational::{
    bezout_witness, closed_form_eval, decomposition_identity_check, linear_combination_probe,
    minus_fraction_sweep, predicted_range, range_rational, ClosedForm, RationalParam,
};
use crate::sets::{format_set, int_range, set_of, IntSet};

/// Result of one criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<28} {:>8.2}s / {}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub limit: Duration,
    check: fn() -> Result<(bool, String)>,
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let result = (self.check)();
        let elapsed = start.elapsed();
        let (ok, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
        let passed = ok && elapsed <= self.limit;
        let detail = if ok && !passed {
            format!("{detail}; exceeded time limit")
        } else {
            detail
        };
        Outcome {
            id: self.id,
            name: self.name,
            passed,
            detail,
            elapsed,
            limit: self.limit,
        }
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "rational dichotomy",
            limit: secs(60),
            check: dichotomy,
        },
        Criterion {
            id: 2,
            name: "closed-form ranges",
            limit: secs(120),
            check: closed_forms,
        },
        Criterion {
            id: 3,
            name: "oracle identities",
            limit: secs(120),
            check: oracles,
        },
        Criterion {
            id: 4,
            name: "sb - a/b sweep",
            limit: secs(60),
            check: minus_fraction,
        },
        Criterion {
            id: 5,
            name: "golden family",
            limit: secs(120),
            check: golden_family,
        },
        Criterion {
            id: 6,
            name: "value tables",
            limit: secs(120),
            check: value_tables,
        },
        Criterion {
            id: 7,
            name: "A_m union",
            limit: secs(600),
            check: am_union,
        },
        Criterion {
            id: 8,
            name: "gap widths",
            limit: secs(600),
            check: gap_widths,
        },
        Criterion {
            id: 9,
            name: "sqrt neighborhoods",
            limit: secs(120),
            check: neighborhoods,
        },
        Criterion {
            id: 10,
            name: "foundation invariants",
            limit: secs(120),
            check: foundations,
        },
    ]
}

pub fn run_all() -> Vec<Outcome> {
    criteria().iter().map(Criterion::run).collect()
}

fn coprime_below(b: u64) -> impl Iterator<Item = u64> {
    (1..b).filter(move |a| a.gcd(&b) == 1)
}

fn dichotomy() -> Result<(bool, String)> {
    let pairs: Vec<(u64, u64)> = (2..=40)
        .flat_map(|b| coprime_below(b).map(move |a| (a, b)))
        .collect();
    let bad = pairs
        .par_iter()
        .map(|&(a, b)| {
            let expected = if a == 1 { set_of([0]) } else { set_of([0, 1]) };
            Ok((range_rational(a, b)?.values() != expected).then_some((a, b)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    Ok((
        bad.is_empty(),
        format!("{} pairs, mismatches {:?}", pairs.len(), bad),
    ))
}

fn closed_forms() -> Result<(bool, String)> {
    let mut cases: Vec<(u64, u64, ClosedForm)> = Vec::new();
    for s in 1..=20u64 {
        // 2s + 1/2 and 2s − 1 + 1/2
        cases.push((4 * s + 1, 2, ClosedForm::Half));
        cases.push((4 * s - 1, 2, ClosedForm::Half));
        // 3s + c/3, 3s − 2 + c/3, 3s − 1 + c/3
        for whole in [3 * s, 3 * s - 2, 3 * s - 1] {
            for c in 1..=2 {
                cases.push((3 * whole + c, 3, ClosedForm::Third));
            }
        }
    }
    for b in 2..=15u64 {
        for s in 1..=8u64 {
            cases.push((s * b * b + 1, b, ClosedForm::UnitShiftZero));
            cases.push(((s * b - 1) * b + 1, b, ClosedForm::UnitShiftDown));
        }
        for s in 0..=8u64 {
            cases.push(((s * b + 1) * b + 1, b, ClosedForm::UnitShiftOne));
        }
    }
    let bad = cases
        .par_iter()
        .map(|&(a, b, form)| {
            let Some(pred) = predicted_range(a, b)? else {
                return Ok(Some(format!("{a}/{b}: no prediction")));
            };
            let computed = range_rational(a, b)?.values();
            Ok(
                (!pred.forms.contains(&form) || pred.values != computed).then(|| {
                    format!(
                        "{a}/{b}: predicted {} computed {}",
                        format_set(&pred.values),
                        format_set(&computed)
                    )
                }),
            )
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    Ok((
        bad.is_empty(),
        format!("{} parameters, mismatches {:?}", cases.len(), bad),
    ))
}

fn oracles() -> Result<(bool, String)> {
    let mut params = Vec::new();
    for b in 2..=12u64 {
        for s in 0..=4 {
            for u in 0..b {
                for a in coprime_below(b) {
                    params.push(RationalParam::from_parts(b, s, u, a)?);
                }
            }
        }
    }
    let counts = params
        .par_iter()
        .map(|p| {
            let alpha = p.value();
            let (mut evals, mut bad) = (0u64, Vec::new());
            for n in 0..p.b * p.b {
                let f = f_eval(&alpha, n)?;
                let closed = closed_form_eval(p, n)?;
                let alt = alt_form_eval(&alpha, n)?;
                let (lhs, rhs) = decomposition_identity_check(p, n)?;
                evals += 1;
                if closed != f || alt != f || lhs != f || rhs != f {
                    bad.push(format!(
                        "{p} n={n}: f={f} closed={closed} alt={alt} split={rhs}"
                    ));
                }
            }
            Ok((evals, bad))
        })
        .collect::<Result<Vec<_>>>()?;
    let evals: u64 = counts.iter().map(|c| c.0).sum();
    let bad: Vec<String> = counts.into_iter().flat_map(|c| c.1).take(5).collect();
    Ok((
        bad.is_empty(),
        format!(
            "{} parameters, {evals} points, mismatches {:?}",
            params.len(),
            bad
        ),
    ))
}

fn minus_fraction() -> Result<(bool, String)> {
    let report = minus_fraction_sweep(10, 6)?;
    Ok((report.counterexamples().is_empty(), report.summary()))
}

fn golden_family() -> Result<(bool, String)> {
    const N: u64 = 20_000;
    let ts: Vec<u64> = (1..=60)
        .chain([504])
        .filter(|&t| alpha_t(t).is_ok())
        .collect();
    let results = ts
        .par_iter()
        .map(|&t| {
            let g = alpha_t(t)?;
            let floor = to_i64(g.alpha.floor())?;
            let r = observed_range(&Param::Exact(g.alpha), N)?;
            Ok((t, floor, r.observed()))
        })
        .collect::<Result<Vec<_>>>()?;
    let bad: Vec<String> = results
        .iter()
        .filter(|(_, floor, obs)| *obs != int_range(1, *floor))
        .map(|(t, _, obs)| format!("t={t}: {}", format_set(obs)))
        .collect();
    let find = |t: u64| results.iter().find(|r| r.0 == t).map(|r| r.2.clone());
    let phi_ok = find(1) == Some(set_of([1]));
    let tau_ok = find(504) == Some(int_range(1, 22));
    Ok((
        bad.is_empty() && phi_ok && tau_ok,
        format!(
            "{} values of t with N = {N}; phi {}, tau {}; mismatches {:?}",
            ts.len(),
            format_set(&find(1).unwrap_or_default()),
            format_set(&find(504).unwrap_or_default()),
            bad
        ),
    ))
}

fn value_tables() -> Result<(bool, String)> {
    let constants = Constants::bundled();
    let param = |s: &str| Param::parse(s, &constants);
    let mut failures = Vec::new();
    let mut table = |label: &str, p: &Param, expected: &[(u64, i64)]| -> Result<()> {
        for &(n, v) in expected {
            let got = p.eval(n)?;
            if got != v {
                failures.push(format!("{label}({n}) = {got}, expected {v}"));
            }
        }
        Ok(())
    };
    let pi = param("pi")?;
    let e = param("e")?;
    let root2 = param("(0+1*sqrt(2))/1")?;
    let two_root2 = param("(2+1*sqrt(2))/1")?;
    let one_root2 = param("(2+1*sqrt(2))/2")?;
    let pi_vals = [0, 1, 1, 2, 2, 3, 4];
    let e_vals = [2, 1, 1, 2, 1, 1, 0, 2, 1, 0, 3];
    let indexed = |vals: &[i64]| -> Vec<(u64, i64)> {
        vals.iter()
            .enumerate()
            .map(|(i, &v)| (i as u64 + 1, v))
            .collect()
    };
    table("f_pi", &pi, &indexed(&pi_vals))?;
    table("f_e", &e, &indexed(&e_vals))?;
    table("f_2+sqrt2", &two_root2, &[(1, 1), (2, 3), (3, 0), (4, 2)])?;
    table("f_1+1/sqrt2", &one_root2, &[(1, 1), (2, 0), (7, 2)])?;

    let mut expect_class = |p: &Param, set: IntSet, class: Classification| -> Result<()> {
        let r = observed_range(p, 1000)?;
        if r.observed() != set || r.classification != class {
            failures.push(format!(
                "{p}: observed {} class {}, expected {} class {class}",
                format_set(&r.observed()),
                r.classification,
                format_set(&set)
            ));
        }
        Ok(())
    };
    expect_class(&root2, set_of([1, 2]), Classification::C)?;
    expect_class(&two_root2, set_of([0, 1, 2, 3]), Classification::B)?;
    expect_class(&one_root2, set_of([0, 1, 2]), Classification::D)?;
    expect_class(&pi, int_range(0, 4), Classification::D)?;
    expect_class(&e, int_range(0, 3), Classification::D)?;
    let phi = Param::Exact(alpha_t(1)?.alpha);
    expect_class(&phi, set_of([1]), Classification::A)?;
    let doubled = match &one_root2 {
        Param::Exact(a) => Param::Exact(a.scale(&Rat::from_integer(2.into()))),
        Param::Constant(_) => unreachable!("parsed from an exact literal"),
    };
    if classify(&observed_range(&doubled, 1000)?.observed(), &doubled)? != Classification::B {
        failures.push("2(1 + 1/sqrt2) is not class B".into());
    }
    Ok((
        failures.is_empty(),
        if failures.is_empty() {
            "pi, e, sqrt2, 2+sqrt2, 1+1/sqrt2 tables and classes A, B, C, D".into()
        } else {
            failures.join("; ")
        },
    ))
}

fn union_to_50() -> Result<&'static IntervalSet> {
    static UNION: OnceLock<std::result::Result<IntervalSet, Error>> = OnceLock::new();
    UNION
        .get_or_init(|| {
            let sets = am_sets(50)?;
            Ok(union(sets.iter().map(|(_, s)| s)))
        })
        .as_ref()
        .map_err(Clone::clone)
}

fn root(num: u64, den: u64) -> AlgNum {
    AlgNum::sqrt_rat(&Rat::new(num.into(), den.into())).expect("positive")
}

fn ratio(num: u64, den: u64) -> AlgNum {
    AlgNum::ratio(num, den).expect("nonzero denominator")
}

/// The ten half-open intervals making up `A_2 ∪ … ∪ A_50`.
pub fn expected_union_to_50() -> Vec<Interval> {
    [
        (root(1, 50), ratio(1, 7)),
        (root(1, 48), ratio(7, 48)),
        (root(1, 47), ratio(1, 6)),
        (root(1, 35), ratio(6, 35)),
        (root(1, 34), ratio(1, 5)),
        (root(2, 49), ratio(10, 49)),
        (root(1, 24), ratio(1, 4)),
        (root(3, 47), ratio(1, 3)),
        (root(5, 44), ratio(1, 2)),
        (root(12, 47), ratio(1, 1)),
    ]
    .into_iter()
    .map(|(lo, hi)| Interval::half_open(lo, hi))
    .collect()
}

fn am_union() -> Result<(bool, String)> {
    let u = union_to_50()?;
    let expected = expected_union_to_50();
    let ok = u.intervals() == expected.as_slice();
    let detail = if ok {
        format!("{} intervals, all endpoints equal", u.len())
    } else {
        format!("got {} intervals: {}", u.len(), u.lines().join(" | "))
    };
    Ok((ok, detail))
}

fn gap_widths() -> Result<(bool, String)> {
    let u = union_to_50()?;
    let lo = u
        .intervals()
        .first()
        .ok_or(Error::EmptyInterval)?
        .lo
        .clone();
    let g = gaps(u, &lo, &AlgNum::one());
    let mut ok = g.len() == 9;
    let mut notes = vec![format!("{} gaps", g.len())];
    for (near, width) in [(0.1458, 0.00003), (0.1715, 0.00007), (0.2041, 0.00004)] {
        let closest = g.iter().min_by(|a, b| {
            let da = (a.interval.lo.to_f64() - near).abs();
            let db = (b.interval.lo.to_f64() - near).abs();
            da.total_cmp(&db)
        });
        match closest {
            Some(gap) if (gap.interval.lo.to_f64() - near).abs() < 1e-3 => {
                let fine = (gap.width - width).abs() <= 0.00001 + 1e-12;
                ok &= fine;
                notes.push(format!("near {near}: {}", format_sig(gap.width, 3)));
            }
            _ => {
                ok = false;
                notes.push(format!("no gap near {near}"));
            }
        }
    }
    Ok((ok, notes.join(", ")))
}

fn neighborhoods() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0046);
    let mut pairs = BTreeSet::new();
    while pairs.len() < 200 {
        let n = rng.gen_range(2..=100u64);
        let k = rng.gen_range(1..n);
        if !is_perfect_square(&(k * n).into()) {
            pairs.insert((k, n));
        }
    }
    let reports = pairs
        .par_iter()
        .map(|&(k, n)| sqrt_neighborhood_check(k, n, 5))
        .collect::<Result<Vec<_>>>()?;
    let evals: usize = reports.iter().map(|r| r.points.len()).sum();
    let bad: Vec<(u64, u64)> = reports
        .iter()
        .filter(|r| !r.all_one())
        .map(|r| (r.k, r.n))
        .collect();
    Ok((
        bad.is_empty() && evals == 1200,
        format!(
            "{} pairs, {evals} evaluations, failures {:?}",
            reports.len(),
            bad
        ),
    ))
}

fn foundations() -> Result<(bool, String)> {
    let mut failures: Vec<String> = Vec::new();

    // Sandwich and envelope over a mixed family.
    let mut family: Vec<AlgNum> = Vec::new();
    for b in 2..=12u64 {
        family.extend(
            (1..6 * b)
                .filter(|a| a.gcd(&b) == 1 && a % b != 0)
                .map(|a| ratio(a, b)),
        );
    }
    family.extend(
        (2..=30u64)
            .filter(|k| !is_perfect_square(&(*k).into()))
            .map(|k| root(k, 1)),
    );
    family.extend((1..=20).filter_map(|t| alpha_t(t).ok()).map(|g| g.alpha));
    let sandwich_bad = family
        .par_iter()
        .map(|alpha| {
            let ceil = to_i64(alpha.ceil())?;
            for n in 1..=1000 {
                let f = f_eval(alpha, n)?;
                let (lo, hi) = sandwich_bounds(alpha, n)?;
                if !(f == lo || f == hi) || !(0..=ceil).contains(&f) {
                    return Ok(Some(format!("{alpha} n={n}")));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    failures.extend(sandwich_bad.into_iter().flatten());

    // Periodicity.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0031);
    for _ in 0..5000 {
        let b = rng.gen_range(2..=20u64);
        let a = rng.gen_range(1..=10 * b);
        if a.gcd(&b) != 1 || a % b == 0 {
            continue;
        }
        let n = rng.gen_range(1..=100_000u64);
        let alpha = ratio(a, b);
        let r = n % (b * b);
        let expected = if r == 0 { 0 } else { f_eval(&alpha, r)? };
        if f_eval(&alpha, n)? != expected {
            failures.push(format!("periodicity {a}/{b} n={n}"));
        }
    }

    for b in 2..=25u64 {
        for a in coprime_below(b) {
            let image: BTreeSet<u64> = (1..=b).map(|n| phi(a, b, n)).collect::<Result<_>>()?;
            if image != (0..b).collect() {
                failures.push(format!("phi {a},{b}"));
            }
            if linear_combination_probe(a, b) != (true, a == 1) {
                failures.push(format!("linear combinations {a},{b}"));
            }
            if a > 1 {
                let n = bezout_witness(a, b)?;
                if (a * a * n) % (b * b) != 1 || f_eval(&ratio(a, b), n)? != 1 {
                    failures.push(format!("bezout {a},{b}"));
                }
            }
        }
    }

    // Scaled bound for p ≤ 3, t ≤ 10, and the strict sandwich for α(t), t ≤ 60.
    let mut bound_runs: Vec<(u64, u64, u64)> = Vec::new();
    for p in 1..=3u64 {
        bound_runs.extend(
            (1..=10)
                .filter(|&t| alpha_t(t).is_ok())
                .map(|t| (p, t, 1000)),
        );
    }
    bound_runs.extend(
        (1..=60)
            .filter(|&t| alpha_t(t).is_ok())
            .map(|t| (1, t, 2000)),
    );
    for (p, t, n) in bound_runs {
        let r = scaled_bound_check(p, t, n)?;
        if let Some((n, why)) = r.violations.first() {
            failures.push(format!("bound p={p} t={t} n={n}: {why}"));
        }
    }

    Ok((
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "{} parameters in sandwich scan, no violations",
                family.len()
            )
        } else {
            failures.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
    ))
}

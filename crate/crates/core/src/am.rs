//! The sets `A_m = {α ∈ (0, 1] : f_α(m) = 1}` as exact unions of intervals.
//!
//! On `(0, 1]`, `α ↦ f_α(m)` can only change value where `⌊αm⌋`, `⌊α²m⌋`
//! or `⌊αj⌋` (with `j = ⌊αm⌋ ≤ m`) jumps, i.e. at `j/m`, `√(k/m)` or
//! `i/j`. Between consecutive candidates the value is constant, so one
//! evaluation per open gap and one per candidate decide `A_m` exactly.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{format_sig, rational_between, AlgNum, Rat, SurdSum};
use crate::floorfn::Dilation;

/// Significant digits of the decimal annotations.
pub const DECIMAL_DIGITS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: AlgNum,
    pub hi: AlgNum,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: AlgNum, hi: AlgNum, lo_closed: bool, hi_closed: bool) -> Interval {
        debug_assert!(lo < hi || (lo == hi && lo_closed && hi_closed));
        Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
    }

    pub fn point(x: AlgNum) -> Interval {
        Interval::new(x.clone(), x, true, true)
    }

    /// `[lo, hi)`.
    pub fn half_open(lo: AlgNum, hi: AlgNum) -> Interval {
        Interval::new(lo, hi, true, false)
    }

    pub fn contains(&self, x: &AlgNum) -> bool {
        let above = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let below = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    pub fn width(&self) -> SurdSum {
        SurdSum::from(&self.hi) - &SurdSum::from(&self.lo)
    }

    fn brackets(&self) -> (char, char) {
        (
            if self.lo_closed { '[' } else { '(' },
            if self.hi_closed { ']' } else { ')' },
        )
    }

    /// Exact form followed by a decimal annotation.
    pub fn line(&self) -> String {
        let (l, r) = self.brackets();
        format!(
            "{self}  ≈ {l}{}, {}{r}",
            self.lo.to_decimal(DECIMAL_DIGITS),
            self.hi.to_decimal(DECIMAL_DIGITS)
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = self.brackets();
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// Disjoint, non-touching intervals sorted by left endpoint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet::default()
    }

    /// Union of arbitrary intervals, merging overlaps and intervals that
    /// touch at an endpoint belonging to either of them.
    pub fn from_pieces(mut pieces: Vec<Interval>) -> IntervalSet {
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Interval> = Vec::with_capacity(pieces.len());
        for next in pieces {
            if let Some(cur) = out.last_mut() {
                let joins = match next.lo.cmp(&cur.hi) {
                    Ordering::Less => true,
                    Ordering::Equal => cur.hi_closed || next.lo_closed,
                    Ordering::Greater => false,
                };
                if joins {
                    match next.hi.cmp(&cur.hi) {
                        Ordering::Greater => {
                            cur.hi = next.hi;
                            cur.hi_closed = next.hi_closed;
                        }
                        Ordering::Equal => cur.hi_closed |= next.hi_closed,
                        Ordering::Less => {}
                    }
                    continue;
                }
            }
            out.push(next);
        }
        IntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &AlgNum) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    /// Total length, exactly.
    pub fn measure(&self) -> SurdSum {
        self.intervals
            .iter()
            .fold(SurdSum::zero(), |acc, i| acc + &i.width())
    }

    pub fn lines(&self) -> Vec<String> {
        self.intervals.iter().map(Interval::line).collect()
    }

    /// Complement within `[lo, hi]`, one interval per component.
    pub fn complement_within(&self, lo: &AlgNum, hi: &AlgNum) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut cursor = (lo.clone(), true);
        for iv in &self.intervals {
            if &iv.hi < lo || &iv.lo > hi {
                continue;
            }
            push_gap(&mut out, &cursor, (&iv.lo, !iv.lo_closed));
            cursor = (iv.hi.clone(), !iv.hi_closed);
        }
        push_gap(&mut out, &cursor, (hi, true));
        out
    }
}

fn push_gap(out: &mut Vec<Interval>, from: &(AlgNum, bool), to: (&AlgNum, bool)) {
    let (lo, lo_closed) = (&from.0, from.1);
    let (hi, hi_closed) = to;
    match lo.cmp(hi) {
        Ordering::Less => out.push(Interval::new(lo.clone(), hi.clone(), lo_closed, hi_closed)),
        Ordering::Equal if lo_closed && hi_closed => out.push(Interval::point(lo.clone())),
        _ => {}
    }
}

/// Candidate discontinuities of `α ↦ f_α(m)` in `(0, 1]`, sorted.
pub fn breakpoints(m: u64) -> Vec<AlgNum> {
    let mut set = BTreeSet::new();
    for j in 1..=m {
        for i in 1..=j {
            set.insert(AlgNum::ratio(i, j).expect("j > 0"));
        }
        set.insert(AlgNum::sqrt_rat(&Rat::new(j.into(), m.into())).expect("positive"));
    }
    set.into_iter().collect()
}

/// `A_m`, decided by exact evaluation at every breakpoint and at the
/// simplest rational inside every gap between consecutive breakpoints.
pub fn am_set(m: u64) -> Result<IntervalSet> {
    if m < 2 {
        return Err(Error::BadParameters(format!(
            "m must be at least 2, got {m}"
        )));
    }
    let m_big = BigInt::from(m);
    let is_one =
        |alpha: &AlgNum| -> Result<bool> { Ok(Dilation::new(alpha)?.eval_big(&m_big).is_one()) };
    let mut pieces = Vec::new();
    let mut prev = AlgNum::zero();
    for b in breakpoints(m) {
        let sample = AlgNum::from(rational_between(&prev, &b)?);
        if is_one(&sample)? {
            pieces.push(Interval::new(prev.clone(), b.clone(), false, false));
        }
        if is_one(&b)? {
            pieces.push(Interval::point(b.clone()));
        }
        prev = b;
    }
    Ok(IntervalSet::from_pieces(pieces))
}

/// `A_2, …, A_M` in order of `m`.
pub fn am_sets(m_max: u64) -> Result<Vec<(u64, IntervalSet)>> {
    (2..=m_max)
        .into_par_iter()
        .map(|m| Ok((m, am_set(m)?)))
        .collect()
}

pub fn union<'a, I>(sets: I) -> IntervalSet
where
    I: IntoIterator<Item = &'a IntervalSet>,
{
    IntervalSet::from_pieces(
        sets.into_iter()
            .flat_map(|s| s.intervals.iter().cloned())
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gap {
    pub interval: Interval,
    pub width: f64,
}

impl Gap {
    pub fn line(&self) -> String {
        format!(
            "{}  width ≈ {}",
            self.interval.line(),
            format_sig(self.width, DECIMAL_DIGITS)
        )
    }
}

/// Components of positive length in `[lo, hi] ∖ s`.
pub fn gaps(s: &IntervalSet, lo: &AlgNum, hi: &AlgNum) -> Vec<Gap> {
    s.complement_within(lo, hi)
        .into_iter()
        .filter(|i| i.lo < i.hi)
        .map(|interval| Gap {
            width: interval.width().to_f64(),
            interval,
        })
        .collect()
}

/// Union of `A_2, …, A_M` measured against `(0, 1]`.
#[derive(Clone, Debug)]
pub struct CoverageReport {
    pub m_max: u64,
    pub union: IntervalSet,
    pub covered: SurdSum,
    /// `(0, 1] ∖ union`.
    pub uncovered: Vec<Interval>,
    /// Points `1/b` lying in the union. None can, since `f_{1/b} ≡ 0`.
    pub covered_reciprocals: Vec<u64>,
}

impl CoverageReport {
    pub fn uncovered_measure(&self) -> f64 {
        1.0 - self.covered.to_f64()
    }

    pub fn records(&self) -> Vec<String> {
        let mut out = vec![format!(
            "M={} intervals={} covered={} uncovered={} reciprocals_covered={}",
            self.m_max,
            self.union.len(),
            format_sig(self.covered.to_f64(), DECIMAL_DIGITS),
            format_sig(self.uncovered_measure(), DECIMAL_DIGITS),
            self.covered_reciprocals.len()
        )];
        out.extend(
            self.union
                .lines()
                .into_iter()
                .map(|l| format!("covered {l}")),
        );
        out.extend(
            self.uncovered
                .iter()
                .map(|i| format!("uncovered {}", i.line())),
        );
        out
    }
}

/// Every `b` with `1/b` in `s`.
fn reciprocals_in(s: &IntervalSet) -> Vec<u64> {
    let mut hits = BTreeSet::new();
    for iv in s.intervals() {
        let from = iv
            .hi
            .recip()
            .map(|x| x.floor())
            .unwrap_or_default()
            .max(BigInt::one());
        let Ok(to) = iv.lo.recip().map(|x| x.ceil()) else {
            continue;
        };
        let (Some(from), Some(to)) = (from.to_u64(), to.to_u64()) else {
            continue;
        };
        for b in from..=to {
            if b >= 1 && iv.contains(&AlgNum::ratio(1, b).expect("b >= 1")) {
                hits.insert(b);
            }
        }
    }
    hits.into_iter().collect()
}

pub fn coverage_report(m_max: u64) -> Result<CoverageReport> {
    let sets = am_sets(m_max)?;
    let u = union(sets.iter().map(|(_, s)| s));
    let mut uncovered = u.complement_within(&AlgNum::zero(), &AlgNum::one());
    // 0 itself is outside the domain (0, 1].
    if let Some(first) = uncovered.first_mut() {
        if first.lo == AlgNum::zero() {
            if first.hi == first.lo {
                uncovered.remove(0);
            } else {
                first.lo_closed = false;
            }
        }
    }
    Ok(CoverageReport {
        m_max,
        covered: u.measure(),
        covered_reciprocals: reciprocals_in(&u),
        union: u,
        uncovered,
    })
}

const SVG_WIDTH: f64 = 800.0;
const MARGIN: f64 = 40.0;
const ROW: f64 = 8.0;

/// `#rrggbb` for hue `h ∈ [0, 360)` at full saturation and value.
fn hue_hex(h: f64) -> String {
    let x = 1.0 - ((h / 60.0) % 2.0 - 1.0).abs();
    let (r, g, b) = match (h / 60.0) as u32 {
        0 => (1.0, x, 0.0),
        1 => (x, 1.0, 0.0),
        2 => (0.0, 1.0, x),
        3 => (0.0, x, 1.0),
        4 => (x, 0.0, 1.0),
        _ => (1.0, 0.0, x),
    };
    let c = |v: f64| (v * 255.0).round() as u8;
    format!("#{:02x}{:02x}{:02x}", c(r), c(g), c(b))
}

/// One row per `A_m` stacked upwards from `m = 2`, and the union in black
/// on the bottom row. The x axis maps `[0, 1]` linearly.
pub fn figure_svg(sets: &[(u64, IntervalSet)], union: &IntervalSet) -> String {
    use std::fmt::Write;

    let rows = sets.len() + 1;
    let plot_w = SVG_WIDTH - 2.0 * MARGIN;
    let height = 2.0 * MARGIN + rows as f64 * ROW;
    let axis_y = height - MARGIN;
    let x = |a: &AlgNum| MARGIN + a.to_f64() * plot_w;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" height="{height}" viewBox="0 0 {SVG_WIDTH} {height}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let mut bar = |iv: &Interval, row: usize, class: &str, fill: &str| {
        let y = axis_y - (row + 1) as f64 * ROW;
        let (x0, x1) = (x(&iv.lo), x(&iv.hi));
        let _ = writeln!(
            svg,
            r#"<rect class="{class}" x="{x0:.3}" y="{y:.3}" width="{:.3}" height="{:.3}" fill="{fill}"/>"#,
            (x1 - x0).max(0.5),
            ROW * 0.8
        );
    };
    for iv in union.intervals() {
        bar(iv, 0, "union", "#000000");
    }
    for (i, (m, set)) in sets.iter().enumerate() {
        let colour = hue_hex(300.0 * i as f64 / sets.len().max(1) as f64);
        for iv in set.intervals() {
            bar(iv, i + 1, &format!("am m{m}"), &colour);
        }
    }
    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="black"/>"#,
        MARGIN + plot_w
    );
    for k in 0..=4 {
        let tx = MARGIN + plot_w * k as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{tx}" y1="{axis_y}" x2="{tx}" y2="{}" stroke="black"/><text x="{tx}" y="{}" font-size="10" text-anchor="middle">{}</text>"#,
            axis_y + 4.0,
            axis_y + 16.0,
            k as f64 / 4.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn render_figure(sets: &[(u64, IntervalSet)], union: &IntervalSet, out: &Path) -> Result<()> {
    std::fs::write(out, figure_svg(sets, union)).map_err(|e| Error::FileWrite {
        path: out.display().to_string(),
        reason: e.to_string(),
    })
}

//! Finite integer sets and the set arithmetic used to state ranges:
//! `⟦a, b⟧`, `cA`, `A + B`, `A − B`.

use std::collections::BTreeSet;

pub type IntSet = BTreeSet<i64>;

/// `⟦a, b⟧`; empty when `a > b`.
pub fn int_range(a: i64, b: i64) -> IntSet {
    (a..=b).collect()
}

/// `cA`.
pub fn scaled(c: i64, set: &IntSet) -> IntSet {
    set.iter().map(|v| c * v).collect()
}

/// `A + B`.
pub fn sum(a: &IntSet, b: &IntSet) -> IntSet {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x + y))
        .collect()
}

/// `A − B = A + (−1)B`.
pub fn difference(a: &IntSet, b: &IntSet) -> IntSet {
    sum(a, &scaled(-1, b))
}

pub fn set_of<const N: usize>(values: [i64; N]) -> IntSet {
    values.into_iter().collect()
}

/// `{v1,v2,...}`.
pub fn format_set(set: &IntSet) -> String {
    let body: Vec<String> = set.iter().map(i64::to_string).collect();
    format!("{{{}}}", body.join(","))
}

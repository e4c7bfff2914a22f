//! Exhaustive enumeration of `B_n` and extremal degree statistics.
//!
//! `B_n` is split into blocks by window prefix. Blocks are scanned
//! independently, possibly in parallel, and their partial results are merged
//! in block order, so reports do not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ExtremalError;
use crate::order;
use crate::perm::{ReflectionLabel, SignedPermutation};

pub mod lemmas;

pub const MAX_RANK: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Down,
    Up,
    Total,
}

impl Statistic {
    pub const ALL: [Statistic; 3] = [Statistic::Down, Statistic::Up, Statistic::Total];

    pub fn evaluate(self, p: &SignedPermutation) -> u32 {
        match self {
            Statistic::Down => order::down_degree(p),
            Statistic::Up => order::up_degree(p),
            Statistic::Total => order::total_degree(p),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Statistic::Down => "down",
            Statistic::Up => "up",
            Statistic::Total => "total",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Statistic {
    type Err = ExtremalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "down" => Ok(Statistic::Down),
            "up" => Ok(Statistic::Up),
            "total" => Ok(Statistic::Total),
            other => Err(ExtremalError::UnknownStatistic(other.to_string())),
        }
    }
}

fn check_rank(n: usize, min: usize, max: usize) -> Result<(), ExtremalError> {
    if n < min || n > max {
        Err(ExtremalError::RankOutOfRange { n, min, max })
    } else {
        Ok(())
    }
}

/// Moves `window` to its lexicographic successor among signed arrangements
/// of the same magnitudes, leaving the first `fixed` entries untouched.
fn advance(window: &mut [i32], fixed: usize) -> bool {
    let n = window.len();
    for k in (fixed..n).rev() {
        let cur = window[k];
        let next = window[k..]
            .iter()
            .flat_map(|v| [v.abs(), -v.abs()])
            .filter(|&c| c > cur)
            .min();
        if let Some(c) = next {
            let mut rest = [0i32; MAX_RANK];
            let mut len = 0;
            for v in &window[k..] {
                if v.abs() != c.abs() {
                    rest[len] = v.abs();
                    len += 1;
                }
            }
            rest[..len].sort_unstable_by(|x, y| y.cmp(x));
            window[k] = c;
            for (slot, m) in window[k + 1..].iter_mut().zip(&rest[..len]) {
                *slot = -m;
            }
            return true;
        }
    }
    false
}

/// Smallest window starting with `prefix`: the remaining magnitudes, all
/// negative, largest first.
fn first_with_prefix(n: usize, prefix: &[i32]) -> Vec<i32> {
    let mut window = prefix.to_vec();
    let used: BTreeSet<i32> = prefix.iter().map(|v| v.abs()).collect();
    window.extend(
        (1..=n as i32)
            .rev()
            .filter(|m| !used.contains(m))
            .map(|m| -m),
    );
    window
}

/// Windows of one block in lexicographic order.
pub struct BlockIter {
    window: Vec<i32>,
    fixed: usize,
    done: bool,
}

impl Iterator for BlockIter {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = SignedPermutation::from_window_unchecked(self.window.clone());
        self.done = !advance(&mut self.window, self.fixed);
        Some(out)
    }
}

/// Partition of `B_n` into blocks sharing a window prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationPlan {
    n: usize,
    prefixes: Vec<Vec<i32>>,
}

impl EnumerationPlan {
    /// Blocks keyed by the first two window entries (one entry for `n = 1`).
    pub fn new(n: usize) -> Result<Self, ExtremalError> {
        check_rank(n, 1, MAX_RANK)?;
        Ok(Self::with_prefix_len(n, n.min(2)))
    }

    fn with_prefix_len(n: usize, prefix_len: usize) -> Self {
        fn extend(n: usize, len: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            let candidates: Vec<i32> = (1..=n as i32)
                .rev()
                .map(|m| -m)
                .chain(1..=n as i32)
                .filter(|v| !cur.iter().any(|c| c.abs() == v.abs()))
                .collect();
            for v in candidates {
                cur.push(v);
                extend(n, len, cur, out);
                cur.pop();
            }
        }
        let mut prefixes = Vec::new();
        extend(n, prefix_len, &mut Vec::new(), &mut prefixes);
        Self { n, prefixes }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn block_count(&self) -> usize {
        self.prefixes.len()
    }

    pub fn prefixes(&self) -> &[Vec<i32>] {
        &self.prefixes
    }

    pub fn block(&self, index: usize) -> BlockIter {
        let prefix = &self.prefixes[index];
        BlockIter {
            window: first_with_prefix(self.n, prefix),
            fixed: prefix.len(),
            done: false,
        }
    }

    /// Every element of `B_n` once, lexicographic by window.
    pub fn iter(&self) -> impl Iterator<Item = SignedPermutation> + '_ {
        (0..self.block_count()).flat_map(move |b| self.block(b))
    }

    /// Applies `f` to every block on `jobs` workers and returns the results
    /// in block order.
    pub fn map_blocks<T, F>(&self, jobs: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(BlockIter) -> T + Sync + Send,
    {
        let run = || {
            (0..self.block_count())
                .into_par_iter()
                .map(|b| f(self.block(b)))
                .collect()
        };
        if jobs <= 1 {
            return (0..self.block_count()).map(|b| f(self.block(b))).collect();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    }
}

/// Every element of `B_n`, lexicographic by window.
pub fn enumerate_bn(n: usize) -> Result<impl Iterator<Item = SignedPermutation>, ExtremalError> {
    let plan = EnumerationPlan::new(n)?;
    Ok((0..plan.block_count()).flat_map(move |b| plan.block(b)))
}

/// Available cores, or 1 when that cannot be determined.
pub fn default_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// What is claimed about the maximizers of a statistic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectedMaximizers {
    Family(Vec<SignedPermutation>),
    Count(usize),
    Unknown,
}

impl ExpectedMaximizers {
    pub fn matches(&self, maximizers: &[SignedPermutation]) -> bool {
        match self {
            ExpectedMaximizers::Family(f) => f.as_slice() == maximizers,
            ExpectedMaximizers::Count(c) => *c == maximizers.len(),
            ExpectedMaximizers::Unknown => true,
        }
    }

    pub fn family(&self) -> Option<&[SignedPermutation]> {
        match self {
            ExpectedMaximizers::Family(f) => Some(f),
            _ => None,
        }
    }

    pub fn count(&self) -> Option<usize> {
        match self {
            ExpectedMaximizers::Family(f) => Some(f.len()),
            ExpectedMaximizers::Count(c) => Some(*c),
            ExpectedMaximizers::Unknown => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalReport {
    pub n: usize,
    pub statistic: Statistic,
    pub max_value: u32,
    /// Sorted lexicographically by window.
    pub maximizers: Vec<SignedPermutation>,
    pub expected: ExpectedMaximizers,
    pub matches_family: bool,
    pub elapsed_ms: u64,
}

/// Wire form of [`ExtremalReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub n: usize,
    pub statistic: Statistic,
    pub max_value: u32,
    pub maximizer_count: usize,
    pub maximizers: Vec<SignedPermutation>,
    pub matches_family: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl ExtremalReport {
    pub fn expected_family(&self) -> Option<&[SignedPermutation]> {
        self.expected.family()
    }

    /// JSON wire form; `elapsed_ms` is left out when `with_timing` is false
    /// so that output is reproducible byte for byte.
    pub fn to_json(&self, with_timing: bool) -> ReportJson {
        ReportJson {
            n: self.n,
            statistic: self.statistic,
            max_value: self.max_value,
            maximizer_count: self.maximizers.len(),
            maximizers: self.maximizers.clone(),
            matches_family: self.matches_family,
            elapsed_ms: with_timing.then_some(self.elapsed_ms),
        }
    }
}

#[derive(Debug, Clone, Default)]
struct MaxAccumulator {
    max: Option<u32>,
    maximizers: Vec<SignedPermutation>,
}

impl MaxAccumulator {
    fn push(&mut self, value: u32, p: SignedPermutation) {
        match self.max {
            Some(m) if value < m => {}
            Some(m) if value == m => self.maximizers.push(p),
            _ => {
                self.max = Some(value);
                self.maximizers.clear();
                self.maximizers.push(p);
            }
        }
    }

    fn merge(mut self, other: MaxAccumulator) -> Self {
        match (self.max, other.max) {
            (_, None) => self,
            (None, _) => other,
            (Some(a), Some(b)) if a > b => self,
            (Some(a), Some(b)) if a < b => other,
            _ => {
                self.maximizers.extend(other.maximizers);
                self
            }
        }
    }
}

/// Scans `B_n` for the maximum of `statistic` and every element attaining it.
pub fn max_statistic(
    n: usize,
    statistic: Statistic,
    jobs: usize,
) -> Result<ExtremalReport, ExtremalError> {
    check_rank(n, 2, MAX_RANK)?;
    let start = Instant::now();
    let plan = EnumerationPlan::new(n)?;
    let merged = plan
        .map_blocks(jobs, |block| {
            let mut acc = MaxAccumulator::default();
            for p in block {
                acc.push(statistic.evaluate(&p), p);
            }
            acc
        })
        .into_iter()
        .fold(MaxAccumulator::default(), MaxAccumulator::merge);
    let mut maximizers = merged.maximizers;
    maximizers.sort();
    let expected = expected_maximizers(n, statistic);
    let matches_family = expected.matches(&maximizers);
    Ok(ExtremalReport {
        n,
        statistic,
        max_value: merged.max.unwrap_or(0),
        maximizers,
        expected,
        matches_family,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Count of elements per statistic value.
pub fn degree_histogram(
    n: usize,
    statistic: Statistic,
    jobs: usize,
) -> Result<BTreeMap<u32, u64>, ExtremalError> {
    check_rank(n, 1, 8)?;
    let plan = EnumerationPlan::new(n)?;
    Ok(plan
        .map_blocks(jobs, |block| {
            let mut hist = BTreeMap::new();
            for p in block {
                *hist.entry(statistic.evaluate(&p)).or_insert(0u64) += 1;
            }
            hist
        })
        .into_iter()
        .fold(BTreeMap::new(), |mut acc, part| {
            for (k, v) in part {
                *acc.entry(k).or_insert(0) += v;
            }
            acc
        }))
}

/// `⌊n²/2⌋`.
pub fn max_down_formula(n: usize) -> u32 {
    (n * n / 2) as u32
}

/// `4(n-1)` for `2 ≤ n ≤ 5`, `⌊n²/2⌋ + n - 1` for `n ≥ 5`.
pub fn max_total_formula(n: usize) -> u32 {
    if n <= 5 {
        4 * (n as u32 - 1)
    } else {
        max_down_formula(n) + n as u32 - 1
    }
}

/// The closed-form maximum of a statistic, for `n ≥ 2`.
pub fn expected_max_value(n: usize, statistic: Statistic) -> Option<u32> {
    if n < 2 {
        return None;
    }
    Some(match statistic {
        Statistic::Down | Statistic::Up => max_down_formula(n),
        Statistic::Total => max_total_formula(n),
    })
}

fn windows(list: &[&[i32]]) -> Vec<SignedPermutation> {
    let mut out: Vec<_> = list
        .iter()
        .map(|w| SignedPermutation::new(w.to_vec()).expect("valid literal window"))
        .collect();
    out.sort();
    out
}

/// `π_0 = [1, 2, …, m, -n, -(n-1), …, -(m+1)]`.
pub fn pi_zero(n: usize, m: usize) -> SignedPermutation {
    let mut window: Vec<i32> = (1..=m as i32).collect();
    window.extend((m as i32 + 1..=n as i32).rev().map(|v| -v));
    SignedPermutation::from_window_unchecked(window)
}

fn middle_splits(n: usize) -> BTreeSet<usize> {
    [n / 2, n.div_ceil(2)].into_iter().collect()
}

/// Down-degree maximizers for `n ≥ 4`: `π_0` with `m ∈ {⌊n/2⌋, ⌈n/2⌉}`.
pub fn expected_down_family(n: usize) -> Result<Vec<SignedPermutation>, ExtremalError> {
    check_rank(n, 4, usize::MAX)?;
    let mut out: Vec<_> = middle_splits(n)
        .into_iter()
        .map(|m| pi_zero(n, m))
        .collect();
    out.sort();
    Ok(out)
}

/// Total-degree maximizers for `n ≥ 6`: the closure of the two `π_0` under
/// `π ↦ -π`, `π ↦ u_{m,m+1}π` and `π ↦ u_{m,-n}π`, the `u` maps applied
/// only where defined.
pub fn expected_total_family(n: usize) -> Result<Vec<SignedPermutation>, ExtremalError> {
    check_rank(n, 6, usize::MAX)?;
    let mut family = BTreeSet::new();
    for m in middle_splits(n) {
        let swap_up = ReflectionLabel::new(m as i32, m as i32 + 1).expect("valid label");
        let swap_far = ReflectionLabel::new(m as i32, -(n as i32)).expect("valid label");
        let mut pending = vec![pi_zero(n, m)];
        while let Some(p) = pending.pop() {
            if family.contains(&p) {
                continue;
            }
            pending.push(p.negate());
            pending.extend(
                [swap_up, swap_far]
                    .iter()
                    .filter_map(|&l| p.apply_u(l).ok()),
            );
            family.insert(p);
        }
    }
    Ok(family.into_iter().collect())
}

/// Claimed maximizers of `statistic` over `B_n`.
pub fn expected_maximizers(n: usize, statistic: Statistic) -> ExpectedMaximizers {
    match statistic {
        Statistic::Down => match n {
            2 => ExpectedMaximizers::Family(windows(&[
                &[-2, 1],
                &[2, -1],
                &[1, -2],
                &[-2, -1],
                &[-1, -2],
            ])),
            3 => ExpectedMaximizers::Family(windows(&[
                &[-2, 1, -3],
                &[1, -3, -2],
                &[-3, 1, -2],
                &[2, -3, -1],
                &[-3, 2, -1],
                &[3, -2, -1],
                &[3, -2, 1],
                &[1, 2, -3],
                &[-2, -1, -3],
            ])),
            n if n >= 4 => ExpectedMaximizers::Family(expected_down_family(n).expect("n >= 4")),
            _ => ExpectedMaximizers::Unknown,
        },
        // d_+(π) = d_-(-π): up maximizers are the negated down maximizers.
        Statistic::Up => match expected_maximizers(n, Statistic::Down) {
            ExpectedMaximizers::Family(f) => {
                let mut neg: Vec<_> = f.iter().map(SignedPermutation::negate).collect();
                neg.sort();
                ExpectedMaximizers::Family(neg)
            }
            other => other,
        },
        Statistic::Total => match n {
            2 => ExpectedMaximizers::Family(windows(&[&[2, -1], &[-2, 1]])),
            3 => ExpectedMaximizers::Family(windows(&[&[-3, 2, -1], &[3, -2, 1]])),
            4 => ExpectedMaximizers::Family(windows(&[
                &[4, -3, 2, -1],
                &[-4, 3, -2, 1],
                &[4, -3, -2, 1],
                &[-4, 3, 2, -1],
            ])),
            5 => ExpectedMaximizers::Count(112),
            n if n >= 6 => ExpectedMaximizers::Family(expected_total_family(n).expect("n >= 6")),
            _ => ExpectedMaximizers::Unknown,
        },
    }
}

/// Whether the window interleaves an increasing run of positive values with
/// an increasing run of negative values.
pub fn is_signed_shuffle_of_increasing(p: &SignedPermutation) -> bool {
    let increasing = |vals: Vec<i32>| vals.windows(2).all(|w| w[0] < w[1]);
    let pos = p.window().iter().copied().filter(|&v| v > 0).collect();
    let neg = p.window().iter().copied().filter(|&v| v < 0).collect();
    increasing(pos) && increasing(neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i32]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_sizes() {
        let sizes: Vec<usize> = (1..=5).map(|n| enumerate_bn(n).unwrap().count()).collect();
        assert_eq!(sizes, vec![2, 8, 48, 384, 3840]);
        assert!(enumerate_bn(0).is_err());
        assert!(enumerate_bn(10).is_err());
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        for n in 1..=4 {
            let all: Vec<_> = enumerate_bn(n).unwrap().collect();
            assert!(all.windows(2).all(|p| p[0] < p[1]), "n={n}");
            let lengths = crate::oracle::bfs_word_lengths(n);
            assert_eq!(all.len(), lengths.len());
            assert!(all.iter().all(|p| lengths.contains_key(p)));
        }
        let first: Vec<_> = enumerate_bn(2).unwrap().take(3).collect();
        assert_eq!(first, vec![w(&[-2, -1]), w(&[-2, 1]), w(&[-1, -2])]);
    }

    #[test]
    fn plan_blocks_partition() {
        let plan = EnumerationPlan::new(4).unwrap();
        assert_eq!(plan.block_count(), 8 * 6);
        let sizes = plan.map_blocks(3, |b| b.count());
        assert!(sizes.iter().all(|&s| s == 8));
        assert_eq!(EnumerationPlan::new(1).unwrap().block_count(), 2);
    }

    #[test]
    fn max_examples() {
        let r = max_statistic(4, Statistic::Down, 2).unwrap();
        assert_eq!(r.max_value, 8);
        assert!(r.matches_family);
        let r = max_statistic(2, Statistic::Down, 1).unwrap();
        assert_eq!((r.max_value, r.maximizers.len()), (2, 5));
        assert!(r.matches_family);
        assert!(max_statistic(1, Statistic::Down, 1).is_err());
    }

    #[test]
    fn histogram_examples() {
        let h = degree_histogram(2, Statistic::Down, 1).unwrap();
        assert_eq!(h, BTreeMap::from([(0, 1), (1, 2), (2, 5)]));
        let h = degree_histogram(3, Statistic::Total, 2).unwrap();
        assert_eq!(h.values().sum::<u64>(), 48);
        let h = degree_histogram(4, Statistic::Total, 2).unwrap();
        assert_eq!(h.keys().next_back(), Some(&12));
        assert!(degree_histogram(9, Statistic::Down, 1).is_err());
    }

    #[test]
    fn down_families() {
        assert_eq!(expected_down_family(4).unwrap(), vec![w(&[1, 2, -4, -3])]);
        assert_eq!(
            expected_down_family(5).unwrap(),
            vec![w(&[1, 2, -5, -4, -3]), w(&[1, 2, 3, -5, -4])]
        );
        assert_eq!(expected_down_family(6).unwrap().len(), 1);
        assert!(expected_down_family(3).is_err());
    }

    #[test]
    fn total_family_sizes() {
        assert_eq!(expected_total_family(6).unwrap().len(), 8);
        assert_eq!(expected_total_family(7).unwrap().len(), 16);
        assert!(expected_total_family(5).is_err());
        for n in 6..=8 {
            for p in expected_total_family(n).unwrap() {
                assert_eq!(order::total_degree(&p), max_total_formula(n), "{p}");
            }
        }
    }

    #[test]
    fn formulas() {
        let down: Vec<u32> = (2..=7).map(max_down_formula).collect();
        assert_eq!(down, vec![2, 4, 8, 12, 18, 24]);
        let total: Vec<u32> = (2..=7).map(max_total_formula).collect();
        assert_eq!(total, vec![4, 8, 12, 16, 23, 30]);
        assert_eq!(max_down_formula(5) + 5 - 1, 16);
    }

    #[test]
    fn shuffle_shape() {
        assert!(is_signed_shuffle_of_increasing(&w(&[1, -4, 2, -3])));
        assert!(!is_signed_shuffle_of_increasing(&w(&[2, 1])));
    }
}

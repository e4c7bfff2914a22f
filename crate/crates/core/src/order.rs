//! Cover relations of the strong Bruhat order on `B_n`, degrees, strong
//! descent sets, and reconstruction of a permutation from its descent set.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::DescentError;
use crate::graphs;
use crate::perm::{all_reflections, ReflectionLabel, SignedPermutation};

/// Scans all full-sequence index pairs `i < k` with `π(i) > π(k)`, `u`
/// defined, and no `j` strictly between holding a value strictly between.
/// The visitor receives the two indices; each cover shows up once for
/// `(i, k)` and once for its mirror `(2n-1-k, 2n-1-i)` unless the two
/// coincide.
fn scan_down_pairs(full: &[i32], mut visit: impl FnMut(usize, usize)) {
    let n = full.len() / 2;
    for i in 0..full.len() {
        let b = full[i];
        // Largest value below `b` seen strictly between i and k.
        let mut ceiling = i32::MIN;
        for (k, &a) in full.iter().enumerate().skip(i + 1) {
            if a >= b || a <= ceiling {
                continue;
            }
            ceiling = a;
            let defined = a == -b || (a > 0) == (b > 0) || (i < n) == (k < n);
            if defined {
                visit(i, k);
            }
        }
    }
}

/// Elements covered by `π`, one entry per descent label, sorted by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverList {
    pub entries: Vec<(ReflectionLabel, SignedPermutation)>,
}

impl CoverList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = ReflectionLabel> + '_ {
        self.entries.iter().map(|(l, _)| *l)
    }
}

/// All `σ = u_{a,b}π` covered by `π`, found by the position-pair scan.
pub fn covers_down(p: &SignedPermutation) -> CoverList {
    let full = p.full_sequence();
    let mut labels = BTreeSet::new();
    scan_down_pairs(&full, |i, k| {
        labels.insert(ReflectionLabel::new(full[k], full[i]).expect("distinct nonzero values"));
    });
    CoverList {
        entries: labels.into_iter().map(|l| (l, p.swap_values(l))).collect(),
    }
}

/// Number of elements covered by `π`.
pub fn down_degree(p: &SignedPermutation) -> u32 {
    let full = p.full_sequence();
    let last = full.len().saturating_sub(1);
    let mut count = 0;
    // Keep one pair per mirror orbit: index sums below the centre, plus the
    // self-mirrored pairs on it.
    scan_down_pairs(&full, |i, k| {
        if i + k <= last {
            count += 1;
        }
    });
    count
}

/// Number of adjacent elements in the Hasse diagram, counted as empty
/// rectangles avoiding the origin.
pub fn total_degree(p: &SignedPermutation) -> u32 {
    graphs::count_adjacent_rectangles(p)
}

/// Number of elements covering `π`.
pub fn up_degree(p: &SignedPermutation) -> u32 {
    total_degree(p) - down_degree(p)
}

/// Up degree through `d_+(π) = d_-(-π)`, since `-π = w0·π` with `w0` central.
pub fn up_degree_by_duality(p: &SignedPermutation) -> u32 {
    down_degree(&p.negate())
}

/// Labels `u` defined for `π` with `ℓ(uπ) = ℓ(π) - 1`, from the length
/// function alone.
pub fn descent_labels_oracle(p: &SignedPermutation) -> BTreeSet<ReflectionLabel> {
    labels_with_length_change(p, -1)
}

/// Labels `u` defined for `π` with `ℓ(uπ) = ℓ(π) + 1`.
pub fn ascent_labels_oracle(p: &SignedPermutation) -> BTreeSet<ReflectionLabel> {
    labels_with_length_change(p, 1)
}

fn labels_with_length_change(p: &SignedPermutation, delta: i64) -> BTreeSet<ReflectionLabel> {
    let len = i64::from(p.length().value());
    all_reflections(p.rank())
        .into_iter()
        .filter(|l| p.u_defined(l.a(), l.b()).expect("label within rank"))
        .filter(|&l| i64::from(p.swap_values(l).length().value()) - len == delta)
        .collect()
}

pub fn down_degree_oracle(p: &SignedPermutation) -> u32 {
    descent_labels_oracle(p).len() as u32
}

/// Undefined labels whose action still changes the length by exactly one.
/// Degrees only count defined labels, so this is expected to be empty.
pub fn undefined_unit_steps(p: &SignedPermutation) -> Vec<ReflectionLabel> {
    let len = i64::from(p.length().value());
    all_reflections(p.rank())
        .into_iter()
        .filter(|l| !p.u_defined(l.a(), l.b()).expect("label within rank"))
        .filter(|&l| (i64::from(p.swap_values(l).length().value()) - len).abs() == 1)
        .collect()
}

/// The strong descent set `D_-^B(π)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DescentSet {
    n: usize,
    labels: BTreeSet<ReflectionLabel>,
}

impl DescentSet {
    pub fn new(
        n: usize,
        labels: impl IntoIterator<Item = ReflectionLabel>,
    ) -> Result<Self, DescentError> {
        let labels: BTreeSet<_> = labels.into_iter().collect();
        if let Some(&label) = labels.iter().find(|l| l.magnitude_bound() as usize > n) {
            return Err(DescentError::LabelOutOfRange { label, rank: n });
        }
        Ok(Self { n, labels })
    }

    /// Parses `a,b;c,d;…`; each pair is normalized to its canonical label.
    pub fn parse(text: &str, n: usize) -> Result<Self, DescentError> {
        let labels = text
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse::<ReflectionLabel>)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, labels)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &BTreeSet<ReflectionLabel> {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, label: &ReflectionLabel) -> bool {
        self.labels.contains(label)
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(";"))
    }
}

pub fn descent_set(p: &SignedPermutation) -> DescentSet {
    DescentSet {
        n: p.rank(),
        labels: covers_down(p).labels().collect(),
    }
}

/// Rebuilds `π` from `D_-^B(π)` by inserting `±1, ±2, …, ±n` in turn.
///
/// With `π̄` built for `n-1`, the value `n` goes immediately left of
/// `min{a : u_{a,n} ∈ D}` in the full sequence (at the start of the window
/// as `-n` when `u_{-n,n} ∈ D`), or at the end of the window when no such
/// label exists. The result is checked against `d` before returning.
pub fn reconstruct_from_descents(
    d: &DescentSet,
    n: usize,
) -> Result<SignedPermutation, DescentError> {
    if let Some(&label) = d.labels.iter().find(|l| l.magnitude_bound() as usize > n) {
        return Err(DescentError::LabelOutOfRange { label, rank: n });
    }
    let mut window: Vec<i32> = Vec::with_capacity(n);
    for m in 1..=n as i32 {
        let lowest = d
            .labels
            .iter()
            .filter(|l| l.magnitude_bound() == m as u32)
            .filter_map(|l| l.partner_of(m))
            .min();
        match lowest {
            None => window.push(m),
            Some(c) if c == -m => window.insert(0, -m),
            Some(c) => {
                let idx = window
                    .iter()
                    .position(|&v| v == c || v == -c)
                    .expect("partner magnitude below m is already placed");
                if window[idx] == c {
                    // c at a positive position: m goes directly before it.
                    window.insert(idx, m);
                } else {
                    // -c in the window: -m goes directly after it.
                    window.insert(idx + 1, -m);
                }
            }
        }
    }
    let p = SignedPermutation::from_window_unchecked(window);
    if descent_set(&p).labels != d.labels {
        return Err(DescentError::NotADescentSet { rank: n });
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i32]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    fn labels(pairs: &[(i32, i32)]) -> BTreeSet<ReflectionLabel> {
        pairs
            .iter()
            .map(|&(a, b)| ReflectionLabel::new(a, b).unwrap())
            .collect()
    }

    #[test]
    fn identity_covers_nothing() {
        assert!(covers_down(&SignedPermutation::identity(4)).is_empty());
        assert_eq!(down_degree(&SignedPermutation::identity(4)), 0);
    }

    #[test]
    fn worked_descent_set() {
        let p = w(&[-2, 4, -3, 1]);
        let expected = labels(&[(1, 2), (1, 4), (2, -2), (2, 3), (3, -4)]);
        assert_eq!(descent_set(&p).labels(), &expected);
        assert_eq!(descent_labels_oracle(&p), expected);
        assert_eq!(down_degree(&p), 5);
        assert_eq!(down_degree_oracle(&p), 5);
        for (label, q) in covers_down(&p).entries {
            assert_eq!(q, p.apply_u(label).unwrap());
            assert_eq!(q.length().value() + 1, p.length().value());
        }
    }

    #[test]
    fn b2_degree_table() {
        // d values for all eight elements of B_2.
        let table = [
            ([1, 2], 0),
            ([2, 1], 1),
            ([-1, 2], 1),
            ([-2, 1], 2),
            ([2, -1], 2),
            ([1, -2], 2),
            ([-2, -1], 2),
            ([-1, -2], 2),
        ];
        for (win, d) in table {
            assert_eq!(down_degree(&w(&win)), d, "{win:?}");
            assert_eq!(covers_down(&w(&win)).len() as u32, d);
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(down_degree(&w(&[1, 2, -4, -3])), 8);
        assert_eq!(total_degree(&w(&[2, -1])), 4);
        assert_eq!(total_degree(&w(&[3, -2, 1])), 8);
        assert_eq!(total_degree(&SignedPermutation::identity(2)), 2);
        assert_eq!(up_degree(&SignedPermutation::identity(2)), 2);
        assert_eq!(up_degree(&SignedPermutation::longest(3)), 0);
    }

    #[test]
    fn small_descent_sets() {
        assert!(descent_set(&SignedPermutation::identity(3)).is_empty());
        assert_eq!(descent_set(&w(&[2, 1])).labels(), &labels(&[(1, 2)]));
    }

    #[test]
    fn descent_set_text_round_trip() {
        let d = descent_set(&w(&[-2, 4, -3, 1]));
        assert_eq!(d.to_string(), "-4,3;-2,2;1,2;1,4;2,3");
        assert_eq!(DescentSet::parse(&d.to_string(), 4).unwrap(), d);
        // Non-canonical spellings normalize.
        let alt = DescentSet::parse("2,1; 1,4 ; 2,-2;3,2;3,-4", 4).unwrap();
        assert_eq!(alt, d);
        assert!(DescentSet::parse("", 3).unwrap().is_empty());
        assert!(matches!(
            DescentSet::parse("1,5", 4),
            Err(DescentError::LabelOutOfRange { .. })
        ));
        assert!(matches!(
            DescentSet::parse("1;2", 4),
            Err(DescentError::Label(_))
        ));
    }

    #[test]
    fn reconstruction_examples() {
        let empty = DescentSet::new(2, []).unwrap();
        assert_eq!(reconstruct_from_descents(&empty, 2).unwrap(), w(&[1, 2]));
        let d = DescentSet::parse("1,2;1,4;-2,2;2,3;-4,3", 4).unwrap();
        assert_eq!(
            reconstruct_from_descents(&d, 4).unwrap(),
            w(&[-2, 4, -3, 1])
        );
        let d = DescentSet::parse("1,2", 2).unwrap();
        assert_eq!(reconstruct_from_descents(&d, 2).unwrap(), w(&[2, 1]));
    }

    #[test]
    fn reconstruction_rejects_non_descent_sets() {
        // {u_{1,2}, u_{-1,2}} would need 2 both left of 1 and left of -1.
        let d = DescentSet::parse("1,2;-2,1;-1,1", 2).unwrap();
        assert_eq!(
            reconstruct_from_descents(&d, 2),
            Err(DescentError::NotADescentSet { rank: 2 })
        );
    }

    #[test]
    fn duality_on_b3() {
        let lengths = crate::oracle::bfs_word_lengths(3);
        for p in lengths.keys() {
            assert_eq!(up_degree(p), up_degree_by_duality(p), "{p}");
            assert_eq!(up_degree(p) as usize, ascent_labels_oracle(p).len(), "{p}");
        }
    }
}

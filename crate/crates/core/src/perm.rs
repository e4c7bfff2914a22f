//! Signed permutations of `[-n, n] \ {0}`, their Coxeter length, and the
//! reflection family `u_{a,b}` together with its definedness rule.
//!
//! A permutation is stored only by its window `(π(1), …, π(n))`; values at
//! negative positions follow from `π(-i) = -π(i)` and are derived on demand.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::PermError;

/// An element of the hyperoctahedral group `B_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    /// Builds a permutation from its window, checking that the magnitudes
    /// form a permutation of `1..=n`.
    pub fn new(window: Vec<i32>) -> Result<Self, PermError> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &v in &window {
            if v == 0 {
                return Err(PermError::ZeroEntry);
            }
            let m = v.unsigned_abs() as usize;
            if m > n {
                return Err(PermError::MagnitudeOutOfRange { value: v, rank: n });
            }
            if seen[m] {
                return Err(PermError::DuplicateMagnitude(m as u32));
            }
            seen[m] = true;
        }
        Ok(Self { window })
    }

    /// Wraps a window that is already known to be valid.
    pub(crate) fn from_window_unchecked(window: Vec<i32>) -> Self {
        debug_assert!(Self::new(window.clone()).is_ok());
        Self { window }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            window: (1..=n as i32).collect(),
        }
    }

    /// The longest element `w0 = [-1, -2, …, -n]`.
    pub fn longest(n: usize) -> Self {
        Self {
            window: (1..=n as i32).map(|v| -v).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn into_window(self) -> Vec<i32> {
        self.window
    }

    /// `π(i)` for a signed position `i ∈ [-n, n] \ {0}`.
    pub fn value_at(&self, position: i32) -> i32 {
        debug_assert!(position != 0 && position.unsigned_abs() as usize <= self.rank());
        let v = self.window[position.unsigned_abs() as usize - 1];
        if position > 0 {
            v
        } else {
            -v
        }
    }

    /// The values `π(-n), …, π(-1), π(1), …, π(n)` from left to right.
    pub fn full_sequence(&self) -> Vec<i32> {
        let mut seq: Vec<i32> = self.window.iter().rev().map(|v| -v).collect();
        seq.extend_from_slice(&self.window);
        seq
    }

    /// `-π`: every value multiplied by `-1`. Equals `w0·π`.
    pub fn negate(&self) -> Self {
        Self {
            window: self.window.iter().map(|v| -v).collect(),
        }
    }

    /// The signed position `i` with `π(i) = v`.
    pub fn inverse_position(&self, v: i32) -> i32 {
        debug_assert!(v != 0 && v.unsigned_abs() as usize <= self.rank());
        let idx = self
            .window
            .iter()
            .position(|&w| w == v || w == -v)
            .expect("value magnitude within rank");
        let pos = idx as i32 + 1;
        if self.window[idx] == v {
            pos
        } else {
            -pos
        }
    }

    /// Coxeter length with respect to `s_0 = u_{1,-1}`, `s_i = u_{i,i+1}`.
    ///
    /// Closed form: inversions of the window plus the magnitudes of its
    /// negative entries.
    pub fn length(&self) -> CoxeterLength {
        CoxeterLength(window_length(&self.window))
    }

    /// Whether `u_{a,b}` is defined for this permutation.
    pub fn u_defined(&self, a: i32, b: i32) -> Result<bool, PermError> {
        self.check_value(a)?;
        self.check_value(b)?;
        if a == b {
            return Err(PermError::InvalidLabel { a, b });
        }
        Ok(a == -b
            || (a > 0) == (b > 0)
            || (self.inverse_position(a) > 0) == (self.inverse_position(b) > 0))
    }

    /// Left multiplication `u_{a,b}·π`; refused when the label is undefined
    /// for this permutation.
    pub fn apply_u(&self, label: ReflectionLabel) -> Result<Self, PermError> {
        if label.magnitude_bound() > self.rank() as u32 {
            return Err(PermError::LabelOutOfRange {
                label,
                rank: self.rank(),
            });
        }
        if !self.u_defined(label.a(), label.b())? {
            return Err(PermError::UndefinedReflection {
                label,
                window: self.clone(),
            });
        }
        Ok(self.swap_values(label))
    }

    /// Swaps `a ↔ b` and `-a ↔ -b` regardless of the definedness rule. The
    /// result is always an element of `B_n`.
    pub fn swap_values(&self, label: ReflectionLabel) -> Self {
        let (a, b) = (label.a(), label.b());
        let window = self
            .window
            .iter()
            .map(|&v| {
                if v == a {
                    b
                } else if v == b {
                    a
                } else if v == -a {
                    -b
                } else if v == -b {
                    -a
                } else {
                    v
                }
            })
            .collect();
        Self { window }
    }

    fn check_value(&self, v: i32) -> Result<(), PermError> {
        if v == 0 || v.unsigned_abs() as usize > self.rank() {
            Err(PermError::MagnitudeOutOfRange {
                value: v,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    /// The values `π[n]`, sorted ascending.
    pub fn window_values_sorted(&self) -> Vec<i32> {
        let mut v = self.window.clone();
        v.sort_unstable();
        v
    }

    /// Full sequence rendered like `[-1,3,-4,2,-2,4,-3,1]`.
    pub fn full_sequence_string(&self) -> String {
        bracketed(&self.full_sequence())
    }
}

pub(crate) fn window_length(window: &[i32]) -> u32 {
    let mut len = 0u32;
    for (i, &x) in window.iter().enumerate() {
        for &y in &window[i + 1..] {
            if x > y {
                len += 1;
            }
        }
        if x < 0 {
            len += x.unsigned_abs();
        }
    }
    len
}

fn bracketed(values: &[i32]) -> String {
    let inner: Vec<String> = values.iter().map(i32::to_string).collect();
    format!("[{}]", inner.join(","))
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bracketed(&self.window))
    }
}

impl FromStr for SignedPermutation {
    type Err = PermError;

    /// Accepts `[2,-1]`, `2,-1`, `2 -1` and mixtures thereof.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let trimmed = text.trim();
        let inner = trimmed
            .strip_prefix('[')
            .map(|s| s.strip_suffix(']').ok_or(PermError::UnbalancedBracket))
            .transpose()?
            .unwrap_or(trimmed);
        if inner.contains('[') || inner.contains(']') {
            return Err(PermError::UnbalancedBracket);
        }
        let window = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<i32>()
                    .map_err(|_| PermError::BadToken(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if window.is_empty() {
            return Err(PermError::Empty);
        }
        Self::new(window)
    }
}

impl TryFrom<Vec<i32>> for SignedPermutation {
    type Error = PermError;

    fn try_from(window: Vec<i32>) -> Result<Self, Self::Error> {
        Self::new(window)
    }
}

impl From<SignedPermutation> for Vec<i32> {
    fn from(p: SignedPermutation) -> Self {
        p.window
    }
}

/// Parses a window; see [`SignedPermutation::from_str`].
pub fn parse_window(text: &str) -> Result<SignedPermutation, PermError> {
    text.parse()
}

/// `ℓ(π)`, bounded by `n²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxeterLength(pub u32);

impl CoxeterLength {
    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for CoxeterLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReflectionKind {
    /// `a = -b`: the single transposition `t_{a,-a}`.
    Long,
    /// `t_{a,b} t_{-a,-b}`.
    Pair,
}

/// Canonical name for `u_{a,b} = u_{b,a} = u_{-a,-b}`.
///
/// Stored with `a < b`. Of the two representatives `{a,b}` and `{-a,-b}`
/// the one whose smaller-magnitude entry is positive is kept, so
/// `u_{3,-4}` is stored as `(-4, 3)` and `u_{2,-2}` as `(-2, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReflectionLabel {
    a: i32,
    b: i32,
}

impl ReflectionLabel {
    pub fn new(a: i32, b: i32) -> Result<Self, PermError> {
        if a == 0 || b == 0 || a == b {
            return Err(PermError::InvalidLabel { a, b });
        }
        let (small, large) = if a.abs() <= b.abs() { (a, b) } else { (b, a) };
        let (small, large) = if small < 0 {
            (-small, -large)
        } else {
            (small, large)
        };
        Ok(Self {
            a: small.min(large),
            b: small.max(large),
        })
    }

    pub fn a(self) -> i32 {
        self.a
    }

    pub fn b(self) -> i32 {
        self.b
    }

    pub fn kind(self) -> ReflectionKind {
        if self.a == -self.b {
            ReflectionKind::Long
        } else {
            ReflectionKind::Pair
        }
    }

    /// Largest magnitude among the two values.
    pub fn magnitude_bound(self) -> u32 {
        self.a.unsigned_abs().max(self.b.unsigned_abs())
    }

    /// Whether either value is `±m`.
    pub fn involves_magnitude(self, m: u32) -> bool {
        self.a.unsigned_abs() == m || self.b.unsigned_abs() == m
    }

    /// Rewrites the label as `{x, v}` for a given value `v` it involves
    /// (up to sign), returning `x`.
    pub fn partner_of(self, v: i32) -> Option<i32> {
        if self.a == v {
            Some(self.b)
        } else if self.b == v {
            Some(self.a)
        } else if self.a == -v {
            Some(-self.b)
        } else if self.b == -v {
            Some(-self.a)
        } else {
            None
        }
    }
}

impl fmt::Display for ReflectionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl FromStr for ReflectionLabel {
    type Err = PermError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut parts = text.split(',').map(str::trim);
        let mut next = || -> Result<i32, PermError> {
            let tok = parts
                .next()
                .ok_or_else(|| PermError::BadToken(text.to_string()))?;
            tok.parse()
                .map_err(|_| PermError::BadToken(tok.to_string()))
        };
        let (a, b) = (next()?, next()?);
        if parts.next().is_some() {
            return Err(PermError::BadToken(text.to_string()));
        }
        Self::new(a, b)
    }
}

/// Whether `u_{a,b}` is defined for `p`.
pub fn u_defined(a: i32, b: i32, p: &SignedPermutation) -> Result<bool, PermError> {
    p.u_defined(a, b)
}

/// Every canonical label of `B_n`, ascending: `n` long and `n(n-1)` pair
/// labels.
pub fn all_reflections(n: usize) -> Vec<ReflectionLabel> {
    let n = n as i32;
    let mut out = Vec::with_capacity((n * n) as usize);
    for small in 1..=n {
        out.push(ReflectionLabel {
            a: -small,
            b: small,
        });
        for large in small + 1..=n {
            out.push(ReflectionLabel { a: small, b: large });
            out.push(ReflectionLabel {
                a: -large,
                b: small,
            });
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i32]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn parses_bracketed_and_bare_windows() {
        assert_eq!(parse_window("[2,-1]").unwrap().window(), &[2, -1]);
        let p = parse_window("3 -1 -2").unwrap();
        assert_eq!(p.window(), &[3, -1, -2]);
        assert_eq!(p.rank(), 3);
        assert_eq!(
            parse_window(" [ 1, 2 ,-3 ] ").unwrap().window(),
            &[1, 2, -3]
        );
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert_eq!(parse_window("2,2"), Err(PermError::DuplicateMagnitude(2)));
        assert_eq!(parse_window("2,-2"), Err(PermError::DuplicateMagnitude(2)));
        assert_eq!(parse_window("[1,0]"), Err(PermError::ZeroEntry));
        assert_eq!(
            parse_window("1,3"),
            Err(PermError::MagnitudeOutOfRange { value: 3, rank: 2 })
        );
        assert_eq!(parse_window(""), Err(PermError::Empty));
        assert_eq!(parse_window("[]"), Err(PermError::Empty));
        assert!(matches!(parse_window("1,x"), Err(PermError::BadToken(_))));
        assert_eq!(parse_window("[1,2"), Err(PermError::UnbalancedBracket));
    }

    #[test]
    fn full_sequence_examples() {
        assert_eq!(w(&[1, 2]).full_sequence(), vec![-2, -1, 1, 2]);
        assert_eq!(
            w(&[-2, 4, -3, 1]).full_sequence(),
            vec![-1, 3, -4, 2, -2, 4, -3, 1]
        );
        assert_eq!(w(&[-1]).full_sequence(), vec![1, -1]);
        assert_eq!(
            w(&[-2, 4, -3, 1]).full_sequence_string(),
            "[-1,3,-4,2,-2,4,-3,1]"
        );
    }

    #[test]
    fn negate_examples() {
        assert_eq!(w(&[1, 2]).negate(), w(&[-1, -2]));
        assert_eq!(w(&[3, -2, 1]).negate(), w(&[-3, 2, -1]));
    }

    #[test]
    fn inverse_position_examples() {
        let p = w(&[-2, 4, -3, 1]);
        assert_eq!(p.inverse_position(3), -3);
        assert_eq!(p.inverse_position(-4), -2);
        assert_eq!(w(&[1, 2]).inverse_position(2), 2);
        for v in [-4, -3, -2, -1, 1, 2, 3, 4] {
            assert_eq!(p.value_at(p.inverse_position(v)), v);
            assert_eq!(p.inverse_position(-v), -p.inverse_position(v));
        }
    }

    #[test]
    fn length_examples() {
        for n in 1..6 {
            assert_eq!(SignedPermutation::identity(n).length().value(), 0);
            assert_eq!(
                SignedPermutation::longest(n).length().value(),
                (n * n) as u32
            );
        }
        assert_eq!(w(&[-1, 2]).length().value(), 1);
        assert_eq!(w(&[-2, -1]).length().value(), 3);
    }

    #[test]
    fn definedness_rule() {
        let any = w(&[2, -1]);
        assert!(any.u_defined(2, -2).unwrap());
        let p = w(&[-2, 4, -3, 1]);
        assert!(p.u_defined(-4, 3).unwrap());
        assert!(w(&[1, -2]).u_defined(-2, 1).unwrap());
        // π^{-1}(1) = 1 and π^{-1}(-2) = -2 for the identity: undefined.
        assert!(!w(&[1, 2]).u_defined(1, -2).unwrap());
        assert_eq!(
            w(&[1, 2]).u_defined(2, 2),
            Err(PermError::InvalidLabel { a: 2, b: 2 })
        );
    }

    #[test]
    fn apply_u_examples() {
        let s0 = ReflectionLabel::new(1, -1).unwrap();
        assert_eq!(w(&[1, 2]).apply_u(s0).unwrap(), w(&[-1, 2]));
        let p = w(&[-2, 4, -3, 1]);
        let u12 = ReflectionLabel::new(1, 2).unwrap();
        let q = p.apply_u(u12).unwrap();
        assert_eq!(q, w(&[-1, 4, -3, 2]));
        assert_eq!(q.length().value() + 1, p.length().value());
        assert_eq!(q.apply_u(u12).unwrap(), p);
    }

    #[test]
    fn apply_u_refuses_undefined_label() {
        let label = ReflectionLabel::new(1, -2).unwrap();
        assert!(matches!(
            w(&[1, 2]).apply_u(label),
            Err(PermError::UndefinedReflection { .. })
        ));
        let big = ReflectionLabel::new(1, 3).unwrap();
        assert!(matches!(
            w(&[1, 2]).apply_u(big),
            Err(PermError::LabelOutOfRange { .. })
        ));
    }

    #[test]
    fn labels_are_canonical() {
        let l = ReflectionLabel::new(3, -4).unwrap();
        assert_eq!((l.a(), l.b()), (-4, 3));
        assert_eq!(ReflectionLabel::new(-3, 4).unwrap(), l);
        assert_eq!(ReflectionLabel::new(2, -2).unwrap().to_string(), "-2,2");
        assert_eq!(ReflectionLabel::new(-2, -1).unwrap().to_string(), "1,2");
        assert_eq!(ReflectionLabel::new(2, -1).unwrap().to_string(), "-2,1");
        assert_eq!(
            ReflectionLabel::new(2, -2).unwrap().kind(),
            ReflectionKind::Long
        );
        assert!(ReflectionLabel::new(0, 1).is_err());
        assert_eq!("-4,3".parse::<ReflectionLabel>().unwrap(), l);
        assert_eq!(l.partner_of(4), Some(-3));
        assert_eq!(l.partner_of(-4), Some(3));
    }

    #[test]
    fn reflection_counts() {
        assert_eq!(
            all_reflections(1),
            vec![ReflectionLabel::new(-1, 1).unwrap()]
        );
        assert_eq!(all_reflections(2).len(), 4);
        for n in 1..=6 {
            let all = all_reflections(n);
            assert_eq!(all.len(), n * n);
            let mut dedup = all.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
            for l in all {
                assert_eq!(ReflectionLabel::new(l.b(), l.a()).unwrap(), l);
                assert_eq!(ReflectionLabel::new(-l.a(), -l.b()).unwrap(), l);
            }
        }
    }
}

//! Weighted degree graphs on the window values `π[n]`, the empty-rectangle
//! description of Hasse-diagram adjacency, flattening `π∖S`, and `r(S)`.
//!
//! For a permutation plotted as the points `(i, π(i))`, `i ∈ [-n,n]∖{0}`,
//! two values are adjacent in the Hasse diagram exactly when the rectangle
//! spanned by their points has no plotted point strictly inside, and the
//! rectangle either joins mirror positions `j = -i` or does not contain the
//! origin. Down-edges additionally require the left corner to be higher.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::order;
use crate::perm::SignedPermutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    /// Edges are down-covers; weights are `α`.
    Alpha,
    /// Edges are all Hasse-diagram adjacencies; weights are `β`.
    Beta,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Alpha => "alpha",
            GraphKind::Beta => "beta",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alpha" | "down" => Ok(GraphKind::Alpha),
            "beta" | "total" => Ok(GraphKind::Beta),
            other => Err(GraphError::UnknownKind(other.to_string())),
        }
    }
}

/// A permutation's plotted points with an inverse lookup table, for
/// repeated edge queries against the same permutation.
pub struct Plot {
    n: usize,
    full: Vec<i32>,
    /// `index[v + n]` is the full-sequence index holding value `v`.
    index: Vec<usize>,
}

impl Plot {
    pub fn new(p: &SignedPermutation) -> Self {
        let n = p.rank();
        let full = p.full_sequence();
        let mut index = vec![usize::MAX; 2 * n + 1];
        for (t, &v) in full.iter().enumerate() {
            index[(v + n as i32) as usize] = t;
        }
        Self { n, full, index }
    }

    fn index_of(&self, v: i32) -> usize {
        self.index[(v + self.n as i32) as usize]
    }

    fn index_of_position(&self, pos: i32) -> usize {
        if pos < 0 {
            (pos + self.n as i32) as usize
        } else {
            (pos + self.n as i32 - 1) as usize
        }
    }

    /// Values strictly inside the rectangle spanned by indices `s` and `t`.
    fn interior(&self, s: usize, t: usize) -> impl Iterator<Item = i32> + '_ {
        let (lo, hi) = (s.min(t), s.max(t));
        let (a, b) = (self.full[s], self.full[t]);
        let (vlo, vhi) = (a.min(b), a.max(b));
        self.full[lo + 1..hi]
            .iter()
            .copied()
            .filter(move |&v| vlo < v && v < vhi)
    }

    fn is_empty_rectangle(&self, s: usize, t: usize) -> bool {
        self.interior(s, t).next().is_none()
    }

    /// Mirror positions, or origin outside the closed rectangle.
    fn origin_condition(&self, s: usize, t: usize) -> bool {
        let (a, b) = (self.full[s], self.full[t]);
        let crosses_positions = (s < self.n) != (t < self.n);
        let crosses_values = (a > 0) != (b > 0);
        a == -b || !(crosses_positions && crosses_values)
    }

    /// `e(a,b)` of the given kind for values `a, b ∈ [-n,n]∖{0}`.
    pub fn edge(&self, a: i32, b: i32, kind: GraphKind) -> u8 {
        if a == b {
            return 0;
        }
        let (s, t) = (self.index_of(a), self.index_of(b));
        if !self.is_empty_rectangle(s, t) || !self.origin_condition(s, t) {
            return 0;
        }
        match kind {
            GraphKind::Beta => 1,
            GraphKind::Alpha => {
                let (lo, hi) = (s.min(t), s.max(t));
                u8::from(self.full[lo] > self.full[hi])
            }
        }
    }

    /// `α` or `β`: `e(a,b) + e(a,-b)`, or `e(a,-a)` when `a = b`.
    pub fn weight(&self, a: i32, b: i32, kind: GraphKind) -> u8 {
        if a == b {
            self.edge(a, -a, kind)
        } else {
            self.edge(a, b, kind) + self.edge(a, -b, kind)
        }
    }
}

/// `e(a, b)` for the total graph `Γ^B(π)`: 1 iff `a` and `b` label an
/// empty rectangle satisfying the origin condition.
pub fn edge_total(p: &SignedPermutation, a: i32, b: i32) -> u8 {
    Plot::new(p).edge(a, b, GraphKind::Beta)
}

/// `e(a, b)` for the down graph `Γ_-^B(π)`.
pub fn edge_down(p: &SignedPermutation, a: i32, b: i32) -> u8 {
    Plot::new(p).edge(a, b, GraphKind::Alpha)
}

/// `α(a,b) = e(a,b) + e(a,-b)` over down-edges; `α(a,a) = e(a,-a)`.
pub fn alpha(p: &SignedPermutation, a: i32, b: i32) -> u8 {
    Plot::new(p).weight(a, b, GraphKind::Alpha)
}

/// `β(a,b) = e(a,b) + e(a,-b)` over all Hasse adjacencies.
pub fn beta(p: &SignedPermutation, a: i32, b: i32) -> u8 {
    Plot::new(p).weight(a, b, GraphKind::Beta)
}

/// A rectangle `[i×j]` with opposite corners `(i, π(i))` and `(j, π(j))`,
/// stored in canonical orientation `i ∈ [1,n]`, `|j| ≥ i`, `j ≠ i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rectangle {
    i: i32,
    j: i32,
}

impl Rectangle {
    /// Canonical representative of `[p×q]` and its mirror `[-p×-q]`.
    pub fn new(p: i32, q: i32) -> Option<Self> {
        if p == 0 || q == 0 || p == q {
            return None;
        }
        let (s, l) = if p.abs() <= q.abs() { (p, q) } else { (q, p) };
        let (s, l) = if s < 0 { (-s, -l) } else { (s, l) };
        Some(Self { i: s, j: l })
    }

    pub fn i(self) -> i32 {
        self.i
    }

    pub fn j(self) -> i32 {
        self.j
    }

    /// All `n²` canonical rectangles of rank `n`.
    pub fn all(n: usize) -> impl Iterator<Item = Rectangle> {
        let n = n as i32;
        (1..=n).flat_map(move |i| {
            (i..=n)
                .flat_map(move |m| [m, -m])
                .filter(move |&j| j != i)
                .map(move |j| Rectangle { i, j })
        })
    }

    /// Values of `π` plotted strictly inside the rectangle.
    pub fn interior_values(self, p: &SignedPermutation) -> Vec<i32> {
        let plot = Plot::new(p);
        plot.interior(
            plot.index_of_position(self.i),
            plot.index_of_position(self.j),
        )
        .collect()
    }

    /// Whether the closed rectangle contains `(0,0)`.
    pub fn contains_origin(self, p: &SignedPermutation) -> bool {
        (self.i > 0) != (self.j > 0) && (p.value_at(self.i) > 0) != (p.value_at(self.j) > 0)
    }
}

/// `d^B(π)`: canonical empty rectangles satisfying the origin condition.
pub fn count_adjacent_rectangles(p: &SignedPermutation) -> u32 {
    let plot = Plot::new(p);
    Rectangle::all(p.rank())
        .filter(|r| {
            let (s, t) = (plot.index_of_position(r.i), plot.index_of_position(r.j));
            plot.origin_condition(s, t) && plot.is_empty_rectangle(s, t)
        })
        .count() as u32
}

/// `Γ_-^B(π)` or `Γ^B(π)` on the representative vertices `π[n]`.
///
/// `weight(a,b)` folds the edges `{a,b}` and `{a,-b}` together; the loop at
/// `a` records the edge `{a,-a}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDegreeGraph {
    n: usize,
    kind: GraphKind,
    vertices: Vec<i32>,
    /// Row-major `vertices.len()²` matrix; the diagonal holds loops.
    weights: Vec<u8>,
}

impl WeightedDegreeGraph {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Vertices sorted ascending.
    pub fn vertices(&self) -> &[i32] {
        &self.vertices
    }

    fn slot(&self, v: i32) -> Result<usize, GraphError> {
        self.vertices
            .binary_search(&v)
            .map_err(|_| GraphError::VertexNotInGraph(v))
    }

    fn at(&self, s: usize, t: usize) -> u8 {
        self.weights[s * self.vertices.len() + t]
    }

    /// `α(a,b)` or `β(a,b)`; for `a = b` the loop weight.
    pub fn weight(&self, a: i32, b: i32) -> Result<u8, GraphError> {
        Ok(self.at(self.slot(a)?, self.slot(b)?))
    }

    pub fn loop_weight(&self, a: i32) -> Result<u8, GraphError> {
        self.weight(a, a)
    }

    /// Sum over `a ≤ b` of the weights: the degree of the permutation.
    pub fn total_weight(&self) -> u32 {
        let k = self.vertices.len();
        (0..k)
            .flat_map(|s| (s..k).map(move |t| (s, t)))
            .map(|(s, t)| u32::from(self.at(s, t)))
            .sum()
    }

    /// `d(a) = Σ_b w(a,b)`, the loop counted once.
    pub fn vertex_degree(&self, a: i32) -> Result<u32, GraphError> {
        let s = self.slot(a)?;
        Ok((0..self.vertices.len())
            .map(|t| u32::from(self.at(s, t)))
            .sum())
    }

    /// `d(a∪b) = d(a) + d(b) - w(a,b)`.
    pub fn union_degree(&self, a: i32, b: i32) -> Result<u32, GraphError> {
        let da = self.vertex_degree(a)?;
        if a == b {
            return Ok(da);
        }
        Ok(da + self.vertex_degree(b)? - u32::from(self.weight(a, b)?))
    }

    /// The subgraph without the vertices of `removed` (and their negatives).
    pub fn remove(&self, removed: &[i32]) -> Result<Self, GraphError> {
        for &v in removed {
            self.slot(v)?;
        }
        let keep: Vec<usize> = (0..self.vertices.len())
            .filter(|&s| {
                let v = self.vertices[s];
                !removed.contains(&v) && !removed.contains(&-v)
            })
            .collect();
        let weights = keep
            .iter()
            .flat_map(|&s| keep.iter().map(move |&t| (s, t)))
            .map(|(s, t)| self.at(s, t))
            .collect();
        Ok(Self {
            n: self.n,
            kind: self.kind,
            vertices: keep.iter().map(|&s| self.vertices[s]).collect(),
            weights,
        })
    }

    /// Edges `(a, b, w)` with `a < b`, `w > 0`, ascending.
    pub fn edges(&self) -> Vec<(i32, i32, u8)> {
        let k = self.vertices.len();
        (0..k)
            .flat_map(|s| (s + 1..k).map(move |t| (s, t)))
            .filter(|&(s, t)| self.at(s, t) > 0)
            .map(|(s, t)| (self.vertices[s], self.vertices[t], self.at(s, t)))
            .collect()
    }

    /// Vertices carrying a loop, ascending.
    pub fn loops(&self) -> Vec<i32> {
        (0..self.vertices.len())
            .filter(|&s| self.at(s, s) > 0)
            .map(|s| self.vertices[s])
            .collect()
    }
}

pub fn build_graph(p: &SignedPermutation, kind: GraphKind) -> WeightedDegreeGraph {
    let plot = Plot::new(p);
    let vertices = p.window_values_sorted();
    let weights = vertices
        .iter()
        .flat_map(|&a| vertices.iter().map(move |&b| (a, b)))
        .map(|(a, b)| plot.weight(a, b, kind))
        .collect();
    WeightedDegreeGraph {
        n: p.rank(),
        kind,
        vertices,
        weights,
    }
}

pub fn vertex_degree(g: &WeightedDegreeGraph, a: i32) -> Result<u32, GraphError> {
    g.vertex_degree(a)
}

pub fn union_degree(g: &WeightedDegreeGraph, a: i32, b: i32) -> Result<u32, GraphError> {
    g.union_degree(a, b)
}

pub fn remove(g: &WeightedDegreeGraph, removed: &[i32]) -> Result<WeightedDegreeGraph, GraphError> {
    g.remove(removed)
}

/// `π∖S`: deletes every entry whose value or negation is in `S`, then
/// relabels magnitudes order-isomorphically, keeping signs.
pub fn flatten(p: &SignedPermutation, removed: &[i32]) -> SignedPermutation {
    let kept: Vec<i32> = p
        .window()
        .iter()
        .copied()
        .filter(|v| !removed.contains(v) && !removed.contains(&-v))
        .collect();
    let mut magnitudes: Vec<i32> = kept.iter().map(|v| v.abs()).collect();
    magnitudes.sort_unstable();
    let window = kept
        .iter()
        .map(|&v| {
            let rank = magnitudes.binary_search(&v.abs()).expect("kept magnitude") as i32 + 1;
            rank * v.signum()
        })
        .collect();
    SignedPermutation::from_window_unchecked(window)
}

/// `r(S) = d(π∖S) - d(Γ^B(π)∖S)`.
pub fn r_statistic(p: &SignedPermutation, removed: &[i32]) -> Result<u32, GraphError> {
    let remaining = build_graph(p, GraphKind::Beta)
        .remove(removed)?
        .total_weight();
    let flattened = order::total_degree(&flatten(p, removed));
    Ok(flattened - remaining)
}

/// `r(S)` as the number of canonical nonempty rectangles satisfying the
/// origin condition whose corners survive and whose interior values all lie
/// in `S ∪ -S`.
pub fn r_statistic_by_rectangles(
    p: &SignedPermutation,
    removed: &[i32],
) -> Result<u32, GraphError> {
    for &v in removed {
        if !p.window().contains(&v) {
            return Err(GraphError::VertexNotInGraph(v));
        }
    }
    let in_s = |v: i32| removed.contains(&v) || removed.contains(&-v);
    let plot = Plot::new(p);
    let count = Rectangle::all(p.rank())
        .filter(|r| {
            let (s, t) = (plot.index_of_position(r.i), plot.index_of_position(r.j));
            if in_s(plot.full[s]) || in_s(plot.full[t]) || !plot.origin_condition(s, t) {
                return false;
            }
            let mut inside = plot.interior(s, t).peekable();
            inside.peek().is_some() && inside.all(in_s)
        })
        .count();
    Ok(count as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl FromStr for GraphFormat {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            other => Err(GraphError::UnknownFormat(other.to_string())),
        }
    }
}

/// JSON form of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub kind: GraphKind,
    pub vertices: Vec<i32>,
    /// `[a, b, w]` with `a < b`.
    pub edges: Vec<(i32, i32, u8)>,
    /// `[a, 1]` per looped vertex.
    pub loops: Vec<(i32, u8)>,
}

impl From<&WeightedDegreeGraph> for GraphJson {
    fn from(g: &WeightedDegreeGraph) -> Self {
        Self {
            n: g.n,
            kind: g.kind,
            vertices: g.vertices.clone(),
            edges: g.edges(),
            loops: g.loops().into_iter().map(|v| (v, 1)).collect(),
        }
    }
}

pub fn export_graph(g: &WeightedDegreeGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Json => serde_json::to_string(&GraphJson::from(g)).expect("graph serializes"),
        GraphFormat::Dot => {
            let mut out = format!("graph {} {{\n", g.kind);
            for v in &g.vertices {
                out.push_str(&format!("    \"{v}\";\n"));
            }
            for (a, b, w) in g.edges() {
                out.push_str(&format!("    \"{a}\" -- \"{b}\" [weight={w}];\n"));
            }
            for v in g.loops() {
                out.push_str(&format!("    \"{v}\" -- \"{v}\" [weight=1];\n"));
            }
            out.push_str("}\n");
            out
        }
    }
}

//! Hypergraph data model, incidence predicates, structural transforms
//! and text IO.
//!
//! A hypergraph is a set of vertex labels together with a sequence of
//! non-empty hyperedges whose union covers the labels. Vertex labels
//! are arbitrary non-negative integers preserved through IO; a dense
//! index map backs the bitset representations used by the search code.

use std::collections::BTreeSet;
use std::fmt;

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// Sorted, duplicate-free sequence of vertex labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    pub fn new(mut labels: Vec<u32>) -> Self {
        labels.sort_unstable();
        labels.dedup();
        VertexSet(labels)
    }

    /// Wraps a vector already in ascending, duplicate-free order.
    pub(crate) fn from_sorted(labels: Vec<u32>) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        VertexSet(labels)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: u32) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        VertexSet::new(out)
    }

    /// The set with one label removed.
    pub fn without(&self, label: u32) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&x| x != label).collect())
    }

    pub fn with(&self, label: u32) -> VertexSet {
        let mut v = self.0.clone();
        v.push(label);
        VertexSet::new(v)
    }
}

impl From<&[u32]> for VertexSet {
    fn from(labels: &[u32]) -> Self {
        VertexSet::new(labels.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for VertexSet {
    fn from(labels: [u32; N]) -> Self {
        VertexSet::new(labels.to_vec())
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

/// Canonical collection of vertex sets, ordered lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MtSet(BTreeSet<VertexSet>);

impl MtSet {
    pub fn new() -> Self {
        MtSet(BTreeSet::new())
    }

    pub fn insert(&mut self, t: VertexSet) -> bool {
        self.0.insert(t)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: &VertexSet) -> bool {
        self.0.contains(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexSet> {
        self.0.iter()
    }

    /// True when no member is a proper subset of another.
    pub fn is_antichain(&self) -> bool {
        for a in &self.0 {
            for b in &self.0 {
                if a != b && a.is_subset(b) {
                    return false;
                }
            }
        }
        true
    }
}

impl FromIterator<VertexSet> for MtSet {
    fn from_iter<I: IntoIterator<Item = VertexSet>>(iter: I) -> Self {
        MtSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a MtSet {
    type Item = &'a VertexSet;
    type IntoIter = std::collections::btree_set::Iter<'a, VertexSet>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Basic shape statistics of a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphProfile {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub antirank: usize,
    pub simple: bool,
}

/// A hypergraph: a vertex universe and a sequence of non-empty edges.
///
/// Invariants: every edge is non-empty, stored deduplicated in ascending
/// label order, and the vertex set equals the union of the edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    labels: Vec<u32>,
    edges: Vec<Vec<u32>>,
}

impl Hypergraph {
    /// Builds a hypergraph from raw edges. Labels within an edge are
    /// deduplicated and sorted; the vertex set is derived as the union.
    pub fn new(edges: Vec<Vec<u32>>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::invalid("hypergraph must have at least one edge"));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for (i, e) in edges.into_iter().enumerate() {
            let mut e = e;
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(Error::invalid(format!("edge {} is empty", i + 1)));
            }
            norm.push(e);
        }
        let mut labels: Vec<u32> = norm.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        Ok(Hypergraph {
            labels,
            edges: norm,
        })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        &self.edges[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = &[u32]> {
        self.edges.iter().map(|e| e.as_slice())
    }

    pub fn contains_vertex(&self, label: u32) -> bool {
        self.labels.binary_search(&label).is_ok()
    }

    /// Dense position of a label in the sorted universe.
    pub(crate) fn dense_index(&self, label: u32) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// One bitset per edge over dense vertex indices.
    pub(crate) fn edge_bits(&self) -> Vec<BitSet> {
        let n = self.labels.len();
        self.edges
            .iter()
            .map(|e| {
                let mut b = BitSet::new(n);
                for &x in e {
                    b.insert(self.dense_index(x).expect("edge label in universe"));
                }
                b
            })
            .collect()
    }

    /// One bitset per dense vertex listing the edges containing it
    /// (the transpose of the incidence matrix).
    pub(crate) fn vertex_edge_bits(&self) -> Vec<BitSet> {
        let m = self.edges.len();
        let mut out = vec![BitSet::new(m); self.labels.len()];
        for (i, e) in self.edges.iter().enumerate() {
            for &x in e {
                out[self.dense_index(x).expect("edge label in universe")].insert(i);
            }
        }
        out
    }

    /// True when no edge contains another (and there are no duplicates).
    pub fn is_simple(&self) -> bool {
        for (i, a) in self.edges.iter().enumerate() {
            for (j, b) in self.edges.iter().enumerate() {
                if i != j && subset_slice(a, b) {
                    return false;
                }
            }
        }
        true
    }
}

fn subset_slice(a: &[u32], b: &[u32]) -> bool {
    a.len() <= b.len() && a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Parses the `.dat` text format: one edge per line of whitespace-separated
/// decimal labels; lines starting with `#` and blank lines are ignored.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut edge = Vec::new();
        for tok in trimmed.split_whitespace() {
            let label: u32 = tok.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                message: format!("invalid vertex label {tok:?}"),
            })?;
            edge.push(label);
        }
        edges.push(edge);
    }
    if edges.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no edges in input".into(),
        });
    }
    Hypergraph::new(edges)
}

/// Canonical text form: edges in stored order, labels ascending,
/// single-space separated, one per line with a trailing newline.
pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    for e in h.edges() {
        let mut first = true;
        for x in e {
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
        }
        out.push('\n');
    }
    out
}

fn check_members(h: &Hypergraph, x: &VertexSet) -> Result<()> {
    for v in x.iter() {
        if !h.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    Ok(())
}

/// Number of edges containing at least one vertex of `x`.
pub fn support(h: &Hypergraph, x: &VertexSet) -> Result<usize> {
    check_members(h, x)?;
    Ok(h.edges()
        .filter(|e| x.iter().any(|v| e.binary_search(&v).is_ok()))
        .count())
}

/// Exact set of edge indices containing the vertex `x`.
pub fn extent(h: &Hypergraph, x: u32) -> Result<Vec<usize>> {
    if !h.contains_vertex(x) {
        return Err(Error::UnknownVertex(x));
    }
    Ok(h.edges()
        .enumerate()
        .filter(|(_, e)| e.binary_search(&x).is_ok())
        .map(|(i, _)| i)
        .collect())
}

/// True when `t` intersects every edge.
pub fn is_traverse(h: &Hypergraph, t: &VertexSet) -> Result<bool> {
    Ok(support(h, t)? == h.edge_count())
}

/// True when `t` is a traverse and no proper subset of it is: the
/// support of `t` equals the edge count and dropping any member
/// strictly lowers it.
pub fn is_minimal_traverse(h: &Hypergraph, t: &VertexSet) -> Result<bool> {
    if support(h, t)? != h.edge_count() {
        return Ok(false);
    }
    for x in t.iter() {
        if support(h, &t.without(x))? == h.edge_count() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Collapses duplicate edges and removes edges containing another edge.
/// The result is simple; vertices left in no surviving edge are dropped.
pub fn min_reduce(h: &Hypergraph) -> Hypergraph {
    let mut keep: Vec<Vec<u32>> = Vec::new();
    let mut seen: BTreeSet<&Vec<u32>> = BTreeSet::new();
    'outer: for (i, e) in h.edges.iter().enumerate() {
        if seen.contains(e) {
            continue;
        }
        for (j, f) in h.edges.iter().enumerate() {
            if i != j && f != e && subset_slice(f, e) {
                continue 'outer;
            }
        }
        seen.insert(e);
        keep.push(e.clone());
    }
    let reduced = Hypergraph::new(keep).expect("reduction keeps at least one minimal edge");
    debug_assert!(sperner_bound_holds(&reduced));
    reduced
}

// Simple hypergraphs of order n cannot have more than C(n, n/2) edges.
fn sperner_bound_holds(h: &Hypergraph) -> bool {
    let n = h.vertex_count() as u128;
    let k = n / 2;
    let mut bound: u128 = 1;
    for i in 0..k {
        bound = match bound.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return true, // bound astronomically large
        };
    }
    (h.edge_count() as u128) <= bound
}

/// The dual hypergraph: result vertices are the edge indices of `h`
/// (1-based), and the result has one edge per vertex of `h`, equal to
/// the set of edges containing it. The incidence matrix of the result
/// is the transpose of the original one.
pub fn dual(h: &Hypergraph) -> Hypergraph {
    let edges: Vec<Vec<u32>> = h
        .vertices()
        .iter()
        .map(|&x| {
            extent(h, x)
                .expect("universe vertex")
                .into_iter()
                .map(|i| (i + 1) as u32)
                .collect()
        })
        .collect();
    Hypergraph::new(edges).expect("every vertex lies in at least one edge")
}

/// Restriction of `h` to a subset of its edges; the vertex set becomes
/// the union of the selected edges.
pub fn partial_hypergraph(h: &Hypergraph, edge_indices: &[usize]) -> Result<Hypergraph> {
    if edge_indices.is_empty() {
        return Err(Error::invalid("edge index set is empty"));
    }
    let mut idx = edge_indices.to_vec();
    idx.sort_unstable();
    idx.dedup();
    for &i in &idx {
        if i >= h.edge_count() {
            return Err(Error::EdgeIndexOutOfRange(i));
        }
    }
    Hypergraph::new(idx.into_iter().map(|i| h.edges[i].clone()).collect())
}

pub fn profile(h: &Hypergraph) -> HypergraphProfile {
    HypergraphProfile {
        n: h.vertex_count(),
        m: h.edge_count(),
        rank: h.edges().map(|e| e.len()).max().unwrap_or(0),
        antirank: h.edges().map(|e| e.len()).min().unwrap_or(0),
        simple: h.is_simple(),
    }
}

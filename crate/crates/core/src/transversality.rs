//! Transversality number: a greedy upper bound and an exact search.
//!
//! The greedy procedure tries every start vertex, then repeatedly
//! extends with every maximum-support vertex of the residual edge set,
//! tracking the fewest removals needed to empty it. The exact value is
//! computed by branch-and-bound seeded with the greedy bound.

use crate::bits::BitSet;
use crate::error::Result;
use crate::hypergraph::{Hypergraph, VertexSet};

/// Greedy bound next to the exact transversality number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalityResult {
    pub greedy_k: usize,
    pub greedy_traverse: VertexSet,
    pub exact_tau: usize,
    /// Whether the greedy bound met the exact value.
    pub tight: bool,
}

struct Greedy<'a> {
    labels: &'a [u32],
    vertex_edges: Vec<BitSet>,
    best_k: usize,
    best_t: Vec<usize>,
}

impl Greedy<'_> {
    // Extends the current path with every maximum-support vertex of the
    // residual edge set, keeping the shortest completion seen.
    fn descend(&mut self, residual: &BitSet, path: &mut Vec<usize>) {
        if residual.is_empty() {
            if path.len() < self.best_k {
                self.best_k = path.len();
                self.best_t = path.clone();
            }
            return;
        }
        if path.len() + 1 >= self.best_k {
            return; // cannot improve on the best completion
        }
        let mut best_supp = 0;
        let mut ties = Vec::new();
        for (v, edges) in self.vertex_edges.iter().enumerate() {
            let s = edges.intersection_count(residual);
            if s > best_supp {
                best_supp = s;
                ties.clear();
                ties.push(v);
            } else if s == best_supp && s > 0 {
                ties.push(v);
            }
        }
        for v in ties {
            let mut next = residual.clone();
            next.difference_with(&self.vertex_edges[v]);
            path.push(v);
            self.descend(&next, path);
            path.pop();
        }
    }
}

/// Greedy upper bound on the transversality number, with a witness
/// traverse of that size.
pub fn greedy_transversality(h: &Hypergraph) -> (usize, VertexSet) {
    let m = h.edge_count();
    let mut g = Greedy {
        labels: h.vertices(),
        vertex_edges: h.vertex_edge_bits(),
        best_k: usize::MAX,
        best_t: Vec::new(),
    };
    for start in 0..h.vertex_count() {
        let mut residual = BitSet::full(m);
        residual.difference_with(&g.vertex_edges[start]);
        let mut path = vec![start];
        g.descend(&residual, &mut path);
    }
    let t: VertexSet = g.best_t.iter().map(|&d| g.labels[d]).collect();
    (g.best_k, t)
}

// Greedy packing of pairwise-disjoint residual edges; admissible lower
// bound on the vertices still needed.
fn disjoint_edge_bound(edge_bits: &[BitSet], residual: &BitSet) -> usize {
    let n = edge_bits.first().map_or(0, |b| b.capacity());
    let mut taken = BitSet::new(n);
    let mut count = 0;
    for e in residual.iter_ones() {
        if !edge_bits[e].intersects(&taken) {
            taken.union_with(&edge_bits[e]);
            count += 1;
        }
    }
    count
}

struct Exact<'a> {
    edge_bits: &'a [BitSet],
    vertex_edges: &'a [BitSet],
    best_len: usize,
    best: Vec<usize>,
}

impl Exact<'_> {
    fn branch(&mut self, residual: &BitSet, partial: &mut Vec<usize>) {
        if residual.is_empty() {
            if partial.len() < self.best_len {
                self.best_len = partial.len();
                self.best = partial.clone();
            }
            return;
        }
        let lb = disjoint_edge_bound(self.edge_bits, residual);
        if partial.len() + lb >= self.best_len {
            return;
        }
        // branch on the vertices of a smallest uncovered edge
        let e = residual
            .iter_ones()
            .min_by_key(|&f| (self.edge_bits[f].count(), f))
            .expect("residual non-empty");
        for v in self.edge_bits[e].ones() {
            let mut next = residual.clone();
            next.difference_with(&self.vertex_edges[v]);
            partial.push(v);
            self.branch(&next, partial);
            partial.pop();
        }
    }
}

/// Size of the smallest traverse.
pub fn exact_tau(h: &Hypergraph) -> usize {
    let edge_bits = h.edge_bits();
    let vertex_edges = h.vertex_edge_bits();
    let (greedy_k, greedy_t) = greedy_transversality(h);
    let mut search = Exact {
        edge_bits: &edge_bits,
        vertex_edges: &vertex_edges,
        best_len: greedy_k,
        best: greedy_t
            .iter()
            .map(|x| h.vertices().binary_search(&x).expect("witness vertex"))
            .collect(),
    };
    let full = BitSet::full(h.edge_count());
    search.branch(&full, &mut Vec::new());
    search.best_len
}

/// Exact transversality number together with the lexicographically
/// smallest traverse of that size.
pub fn exact_tau_witness(h: &Hypergraph) -> (usize, VertexSet) {
    let tau = exact_tau(h);
    let witness = lexmin_traverse(h, &h.edge_bits(), &h.vertex_edge_bits(), tau);
    (tau, witness)
}

// First size-tau traverse in lexicographic order over ascending vertex
// choices; any traverse of size tau is minimal.
fn lexmin_traverse(
    h: &Hypergraph,
    edge_bits: &[BitSet],
    vertex_edges: &[BitSet],
    tau: usize,
) -> VertexSet {
    fn dfs(
        edge_bits: &[BitSet],
        vertex_edges: &[BitSet],
        tau: usize,
        start: usize,
        residual: &BitSet,
        path: &mut Vec<usize>,
    ) -> bool {
        if residual.is_empty() {
            return true;
        }
        if path.len() + disjoint_edge_bound(edge_bits, residual) > tau {
            return false;
        }
        for v in start..vertex_edges.len() {
            if !vertex_edges[v].intersects(residual) {
                continue;
            }
            let mut next = residual.clone();
            next.difference_with(&vertex_edges[v]);
            path.push(v);
            if dfs(edge_bits, vertex_edges, tau, v + 1, &next, path) {
                return true;
            }
            path.pop();
        }
        false
    }

    let full = BitSet::full(h.edge_count());
    let mut path = Vec::new();
    let found = dfs(edge_bits, vertex_edges, tau, 0, &full, &mut path);
    debug_assert!(found, "a traverse of size tau always exists");
    path.iter().map(|&d| h.vertices()[d]).collect()
}

/// Runs both computations and reports whether the greedy bound was tight.
pub fn transversality_report(h: &Hypergraph) -> Result<TransversalityResult> {
    let (greedy_k, greedy_traverse) = greedy_transversality(h);
    let exact = exact_tau(h);
    Ok(TransversalityResult {
        greedy_k,
        greedy_traverse,
        exact_tau: exact,
        tight: greedy_k == exact,
    })
}

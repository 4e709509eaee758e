//! Complete enumeration backends for the set of minimal traverses.
//!
//! Three interchangeable algorithms are provided: the incremental
//! edge-by-edge product (`berge`), a level-wise search over essential
//! vertex sets (`mtminer`), and a depth-first search driven by
//! uncovered and critical edges (`mmcs`). All of them require a simple
//! input hypergraph and produce the same canonical result.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, MtSet, VertexSet};

/// Backend selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Berge,
    MtMiner,
    Mmcs,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Berge, Backend::MtMiner, Backend::Mmcs];
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Berge => "berge",
            Backend::MtMiner => "mtminer",
            Backend::Mmcs => "mmcs",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "berge" => Ok(Backend::Berge),
            "mtminer" => Ok(Backend::MtMiner),
            "mmcs" => Ok(Backend::Mmcs),
            other => Err(Error::invalid(format!("unknown backend {other:?}"))),
        }
    }
}

fn require_simple(h: &Hypergraph) -> Result<()> {
    if h.is_simple() {
        Ok(())
    } else {
        Err(Error::NotSimple)
    }
}

/// Enumerates all minimal traverses of a simple hypergraph.
pub fn enumerate(h: &Hypergraph, backend: Backend) -> Result<MtSet> {
    let mut out = MtSet::new();
    enumerate_with(h, backend, |t| {
        out.insert(t.clone());
    })?;
    Ok(out)
}

/// Streaming variant: traverses are handed to `sink` in discovery order.
pub fn enumerate_with(
    h: &Hypergraph,
    backend: Backend,
    mut sink: impl FnMut(&VertexSet),
) -> Result<()> {
    require_simple(h)?;
    match backend {
        Backend::Berge => berge_impl(h, &mut sink),
        Backend::MtMiner => mtminer_impl(h, &mut sink),
        Backend::Mmcs => mmcs_impl(h, &mut sink),
    }
    Ok(())
}

pub fn enumerate_berge(h: &Hypergraph) -> Result<MtSet> {
    enumerate(h, Backend::Berge)
}

pub fn enumerate_mtminer(h: &Hypergraph) -> Result<MtSet> {
    enumerate(h, Backend::MtMiner)
}

pub fn enumerate_mmcs(h: &Hypergraph) -> Result<MtSet> {
    enumerate(h, Backend::Mmcs)
}

/// Edges disjoint from `x`. Satisfies `|gh(x)| = m - support(x)`.
pub fn gh(h: &Hypergraph, x: &VertexSet) -> Result<Vec<usize>> {
    for v in x.iter() {
        if !h.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    Ok(h.edges()
        .enumerate()
        .filter(|(_, e)| !x.iter().any(|v| e.binary_search(&v).is_ok()))
        .map(|(i, _)| i)
        .collect())
}

/// Level-wise candidate generation: joins pairs of k-sets sharing a
/// (k-1)-prefix and keeps only candidates whose every k-subset is in
/// the level.
pub fn apriori_gen(level: &BTreeSet<VertexSet>) -> Result<Vec<VertexSet>> {
    let members: Vec<&VertexSet> = level.iter().collect();
    if members.is_empty() {
        return Ok(Vec::new());
    }
    let k = members[0].len();
    if k == 0 || members.iter().any(|s| s.len() != k) {
        return Err(Error::invalid("level members must share a size k >= 1"));
    }
    let mut out = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let a = members[i].as_slice();
            let b = members[j].as_slice();
            if a[..k - 1] != b[..k - 1] {
                continue;
            }
            let mut cand = a.to_vec();
            cand.push(b[k - 1]);
            let cand = VertexSet::from_sorted(cand);
            let all_subsets_present = cand.iter().all(|x| level.contains(&cand.without(x)));
            if all_subsets_present {
                out.push(cand);
            }
        }
    }
    Ok(out)
}

// --- Berge -----------------------------------------------------------

// After edge i the working set holds exactly the minimal traverses of
// the partial hypergraph on edges 1..=i.
fn berge_impl(h: &Hypergraph, sink: &mut impl FnMut(&VertexSet)) {
    let mut level: Vec<Vec<u32>> = h.edge(0).iter().map(|&x| vec![x]).collect();
    for i in 1..h.edge_count() {
        let mut candidates: BTreeSet<Vec<u32>> = BTreeSet::new();
        for t in &level {
            for &x in h.edge(i) {
                let mut u = t.clone();
                if u.binary_search(&x).is_err() {
                    u.push(x);
                    u.sort_unstable();
                }
                candidates.insert(u);
            }
        }
        level = minimal_sets(candidates);
    }
    for t in level {
        sink(&VertexSet::from_sorted(t));
    }
}

// Keeps the inclusion-minimal members of a deduplicated family.
fn minimal_sets(family: BTreeSet<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut by_size: Vec<Vec<u32>> = family.into_iter().collect();
    by_size.sort_by_key(|s| s.len());
    let mut kept: Vec<Vec<u32>> = Vec::new();
    'next: for cand in by_size {
        for k in &kept {
            if k.iter().all(|x| cand.binary_search(x).is_ok()) {
                continue 'next;
            }
        }
        kept.push(cand);
    }
    kept
}

// --- MtMiner ---------------------------------------------------------

// Level-wise search over essential vertex sets. A candidate is carried
// forward only while strictly essential (each direct subset misses
// strictly more edges); those missing no edge are minimal traverses.
fn mtminer_impl(h: &Hypergraph, sink: &mut impl FnMut(&VertexSet)) {
    let m = h.edge_count();
    let vertex_edges = h.vertex_edge_bits();
    let labels = h.vertices();

    // gh({x}) = complement of the edge set of x
    let mut gens: Vec<(Vec<u32>, BitSet)> = Vec::new();
    for (d, &x) in labels.iter().enumerate() {
        let mut miss = BitSet::full(m);
        miss.difference_with(&vertex_edges[d]);
        let missed = miss.count();
        // a vertex in no edge cannot occur in a well-formed hypergraph
        debug_assert!(missed < m);
        if missed == 0 {
            sink(&VertexSet::from_sorted(vec![x]));
        } else {
            gens.push((vec![x], miss));
        }
    }

    while !gens.is_empty() {
        let index: BTreeMap<&[u32], usize> = gens
            .iter()
            .enumerate()
            .map(|(i, (s, _))| (s.as_slice(), i))
            .collect();
        let k = gens[0].0.len();
        let mut next: Vec<(Vec<u32>, BitSet)> = Vec::new();
        for i in 0..gens.len() {
            'pair: for j in i + 1..gens.len() {
                let (a, gh_a) = &gens[i];
                let (b, gh_b) = &gens[j];
                if a[..k - 1] != b[..k - 1] {
                    continue;
                }
                // gens are sorted, so b's last element exceeds a's
                let mut z = a.clone();
                z.push(b[k - 1]);
                debug_assert!(z[k] > z[k - 1]);
                let gh_z = gh_a.intersection(gh_b);
                let missed = gh_z.count();
                // every k-subset must be a known generator missing
                // strictly more edges than the candidate
                let mut sub = Vec::with_capacity(k);
                for drop in 0..z.len() {
                    sub.clear();
                    sub.extend(z.iter().copied().take(drop));
                    sub.extend(z.iter().copied().skip(drop + 1));
                    match index.get(sub.as_slice()) {
                        Some(&gi) if missed < gens[gi].1.count() => {}
                        _ => continue 'pair,
                    }
                }
                if missed == 0 {
                    sink(&VertexSet::from_sorted(z));
                } else {
                    next.push((z, gh_z));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        next.dedup_by(|a, b| a.0 == b.0);
        gens = next;
    }
}

// --- MMCS ------------------------------------------------------------

/// Search state of the critical-edge method for a partial solution:
/// the uncovered edges, the remaining candidate vertices, and for each
/// chosen vertex the edges it alone covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CritState {
    pub uncov: Vec<usize>,
    pub cand: VertexSet,
    pub crit: BTreeMap<u32, Vec<usize>>,
}

impl CritState {
    /// Definition-level computation for a given partial solution, with
    /// `cand` taken as all vertices outside it.
    pub fn compute(h: &Hypergraph, partial: &VertexSet) -> Result<Self> {
        for v in partial.iter() {
            if !h.contains_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        let mut uncov = Vec::new();
        let mut crit: BTreeMap<u32, Vec<usize>> = partial.iter().map(|v| (v, Vec::new())).collect();
        for (i, e) in h.edges().enumerate() {
            let hits: Vec<u32> = partial
                .iter()
                .filter(|&v| e.binary_search(&v).is_ok())
                .collect();
            match hits.as_slice() {
                [] => uncov.push(i),
                [only] => crit.get_mut(only).expect("hit vertex tracked").push(i),
                _ => {}
            }
        }
        let cand = h
            .vertices()
            .iter()
            .copied()
            .filter(|&v| !partial.contains(v))
            .collect();
        Ok(CritState { uncov, cand, crit })
    }

    /// The minimality characterization: no uncovered edge and a
    /// non-empty critical edge set for every chosen vertex.
    pub fn is_minimal_traverse(&self) -> bool {
        self.uncov.is_empty() && self.crit.values().all(|c| !c.is_empty())
    }
}

struct MmcsSearch<'a> {
    labels: &'a [u32],
    edge_bits: Vec<BitSet>,
    vertex_edges: Vec<BitSet>,
    hits: Vec<u32>,
    owner: Vec<usize>,
    crit_count: Vec<u32>,
    uncov: BitSet,
    uncov_count: usize,
    cand: BitSet,
    partial: Vec<usize>,
}

impl<'a> MmcsSearch<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        let n = h.vertex_count();
        let m = h.edge_count();
        MmcsSearch {
            labels: h.vertices(),
            edge_bits: h.edge_bits(),
            vertex_edges: h.vertex_edge_bits(),
            hits: vec![0; m],
            owner: vec![usize::MAX; m],
            crit_count: vec![0; n],
            uncov: BitSet::full(m),
            uncov_count: m,
            cand: BitSet::full(n),
            partial: Vec::new(),
        }
    }

    fn add(&mut self, x: usize) {
        for f in self.vertex_edges[x].ones() {
            self.hits[f] += 1;
            match self.hits[f] {
                1 => {
                    self.owner[f] = x;
                    self.crit_count[x] += 1;
                    self.uncov.remove(f);
                    self.uncov_count -= 1;
                }
                2 => self.crit_count[self.owner[f]] -= 1,
                _ => {}
            }
        }
    }

    // Backtracking is LIFO, so on the 2 -> 1 transition the recorded
    // owner is the vertex that made the edge critical originally.
    fn remove(&mut self, x: usize) {
        for f in self.vertex_edges[x].ones() {
            self.hits[f] -= 1;
            match self.hits[f] {
                0 => {
                    self.crit_count[x] -= 1;
                    self.owner[f] = usize::MAX;
                    self.uncov.insert(f);
                    self.uncov_count += 1;
                }
                1 => self.crit_count[self.owner[f]] += 1,
                _ => {}
            }
        }
    }

    fn pick_edge(&self) -> usize {
        let mut best = usize::MAX;
        let mut best_card = usize::MAX;
        for f in self.uncov.iter_ones() {
            let card = self.edge_bits[f].intersection_count(&self.cand);
            if card < best_card {
                best_card = card;
                best = f;
            }
        }
        best
    }

    fn run(&mut self, sink: &mut impl FnMut(&VertexSet)) {
        if self.uncov_count == 0 {
            let mut t: Vec<u32> = self.partial.iter().map(|&d| self.labels[d]).collect();
            t.sort_unstable();
            sink(&VertexSet::from_sorted(t));
            return;
        }
        let e = self.pick_edge();
        let choices: Vec<usize> = self.edge_bits[e].intersection(&self.cand).ones();
        for &x in &choices {
            self.cand.remove(x);
        }
        let mut reinserted = vec![false; choices.len()];
        for (k, &x) in choices.iter().enumerate() {
            self.add(x);
            if self.partial.iter().all(|&v| self.crit_count[v] > 0) {
                self.partial.push(x);
                self.run(sink);
                self.partial.pop();
                self.cand.insert(x);
                reinserted[k] = true;
            }
            self.remove(x);
        }
        // vertices that failed the criticality check stay pruned for
        // later siblings but must be restored for the caller
        for (k, &x) in choices.iter().enumerate() {
            if !reinserted[k] {
                self.cand.insert(x);
            }
        }
    }
}

fn mmcs_impl(h: &Hypergraph, sink: &mut impl FnMut(&VertexSet)) {
    MmcsSearch::new(h).run(sink);
}

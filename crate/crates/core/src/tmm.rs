//! Multi-member minimal traverses: the smallest-cardinality traverses
//! that maximise a coverage criterion.
//!
//! Coverage of a traverse counts, with multiplicity, the co-members of
//! its vertices across all edges containing them. Two extraction modes
//! are provided: a level-wise sweep over essential vertex sets (`m2d`)
//! and a targeted scan of the size-tau level (`om2d`). Both operate on
//! the edge list as given, so duplicated or nested edges contribute to
//! supports and coverage exactly as stored.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, MtSet, VertexSet};
use crate::transversality::exact_tau;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TmmMode {
    M2d,
    Om2d,
}

impl fmt::Display for TmmMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TmmMode::M2d => "m2d",
            TmmMode::Om2d => "om2d",
        })
    }
}

impl FromStr for TmmMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m2d" => Ok(TmmMode::M2d),
            "om2d" => Ok(TmmMode::Om2d),
            other => Err(Error::invalid(format!("unknown tmm mode {other:?}"))),
        }
    }
}

/// Result of multi-member extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmmResult {
    /// Transversality number: the size of every reported traverse.
    pub tau: usize,
    /// All minimal traverses of size `tau`.
    pub smallest_mts: MtSet,
    /// Coverage value of each smallest traverse.
    pub coverage: BTreeMap<VertexSet, u64>,
    /// The argmax subset of `smallest_mts` under coverage.
    pub tmms: MtSet,
}

/// Multiplicity-counted number of co-members covered by `t`: for each
/// vertex of `t` and each edge containing it, the other members of the
/// edge are counted once per incidence.
pub fn recouvrement(h: &Hypergraph, t: &VertexSet) -> Result<u64> {
    let mut total: u64 = 0;
    for x in t.iter() {
        if !h.contains_vertex(x) {
            return Err(Error::UnknownVertex(x));
        }
        for e in h.edges() {
            if e.binary_search(&x).is_ok() {
                total += (e.len() - 1) as u64;
            }
        }
    }
    Ok(total)
}

/// Extracts the multi-member minimal traverses of `h`.
pub fn extract_tmm(h: &Hypergraph, mode: TmmMode) -> Result<TmmResult> {
    let (tau, smallest) = match mode {
        TmmMode::M2d => m2d_smallest(h),
        TmmMode::Om2d => om2d_smallest(h),
    };
    let mut coverage = BTreeMap::new();
    let mut best = 0u64;
    for t in smallest.iter() {
        let c = recouvrement(h, t)?;
        best = best.max(c);
        coverage.insert(t.clone(), c);
    }
    let tmms: MtSet = smallest
        .iter()
        .filter(|t| coverage[*t] == best)
        .cloned()
        .collect();
    Ok(TmmResult {
        tau,
        smallest_mts: smallest,
        coverage,
        tmms,
    })
}

// Level-wise sweep: level k holds the essential k-sets; the first level
// containing a full-support set is the transversality level and its
// full-support members are exactly the size-tau minimal traverses.
fn m2d_smallest(h: &Hypergraph) -> (usize, MtSet) {
    let m = h.edge_count();
    let labels = h.vertices();
    let vertex_edges = h.vertex_edge_bits();

    let singleton_mts: MtSet = labels
        .iter()
        .enumerate()
        .filter(|&(d, _)| vertex_edges[d].count() == m)
        .map(|(_, &x)| VertexSet::from([x]))
        .collect();
    if !singleton_mts.is_empty() {
        return (1, singleton_mts);
    }

    // (members, covered edges); every singleton is essential
    let mut level: Vec<(Vec<u32>, BitSet)> = labels
        .iter()
        .enumerate()
        .map(|(d, &x)| (vec![x], vertex_edges[d].clone()))
        .collect();
    let mut k = 1;
    loop {
        let index: BTreeMap<&[u32], usize> = level
            .iter()
            .enumerate()
            .map(|(i, (s, _))| (s.as_slice(), i))
            .collect();
        let mut next: Vec<(Vec<u32>, BitSet)> = Vec::new();
        let mut found = MtSet::new();
        for i in 0..level.len() {
            'pair: for j in i + 1..level.len() {
                let (a, cov_a) = &level[i];
                let (b, cov_b) = &level[j];
                if a[..k - 1] != b[..k - 1] {
                    continue;
                }
                let mut z = a.clone();
                z.push(b[k - 1]);
                let mut cov = cov_a.clone();
                cov.union_with(cov_b);
                let supp = cov.count();
                // strict essentiality against every direct subset
                let mut sub = Vec::with_capacity(k);
                for drop in 0..z.len() {
                    sub.clear();
                    sub.extend(z.iter().copied().take(drop));
                    sub.extend(z.iter().copied().skip(drop + 1));
                    match index.get(sub.as_slice()) {
                        Some(&si) if supp > level[si].1.count() => {}
                        _ => continue 'pair,
                    }
                }
                if supp == m {
                    found.insert(VertexSet::from_sorted(z));
                } else {
                    next.push((z, cov));
                }
            }
        }
        k += 1;
        if !found.is_empty() {
            return (k, found);
        }
        if next.is_empty() {
            unreachable!("level-wise sweep exhausted without reaching a traverse");
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        next.dedup_by(|a, b| a.0 == b.0);
        level = next;
    }
}

// Targeted scan: compute tau exactly, then walk the size-tau candidates
// depth-first, extending only while support strictly grows.
fn om2d_smallest(h: &Hypergraph) -> (usize, MtSet) {
    let tau = exact_tau(h);
    let m = h.edge_count();
    let labels = h.vertices();
    let vertex_edges = h.vertex_edge_bits();

    struct Scan<'a> {
        labels: &'a [u32],
        vertex_edges: &'a [BitSet],
        m: usize,
        tau: usize,
        out: MtSet,
    }

    impl Scan<'_> {
        fn dfs(&mut self, start: usize, path: &mut Vec<usize>, covered: &BitSet) {
            let supp = covered.count();
            if path.len() == self.tau {
                if supp == self.m && self.is_minimal(path, covered) {
                    self.out.insert(VertexSet::from_sorted(
                        path.iter().map(|&d| self.labels[d]).collect(),
                    ));
                }
                return;
            }
            // each further vertex covers at most its residual degree
            let slots = self.tau - path.len();
            let mut best_gain = 0;
            for v in start..self.vertex_edges.len() {
                let mut extra = self.vertex_edges[v].clone();
                extra.difference_with(covered);
                best_gain = best_gain.max(extra.count());
            }
            if supp + slots * best_gain < self.m {
                return;
            }
            for v in start..self.vertex_edges.len() {
                let mut next = covered.clone();
                next.union_with(&self.vertex_edges[v]);
                if next.count() > supp {
                    path.push(v);
                    self.dfs(v + 1, path, &next);
                    path.pop();
                }
            }
        }

        // full support plus strict essentiality of every direct subset
        fn is_minimal(&self, path: &[usize], _covered: &BitSet) -> bool {
            for drop in 0..path.len() {
                let mut rest = BitSet::new(self.m);
                for (i, &v) in path.iter().enumerate() {
                    if i != drop {
                        rest.union_with(&self.vertex_edges[v]);
                    }
                }
                if rest.count() == self.m {
                    return false;
                }
            }
            true
        }
    }

    let mut scan = Scan {
        labels,
        vertex_edges: &vertex_edges,
        m,
        tau,
        out: MtSet::new(),
    };
    scan.dfs(0, &mut Vec::new(), &BitSet::new(m));
    (tau, scan.out)
}

//! Shared helpers for the integration suites: independent brute-force
//! oracles that avoid the library's enumeration and cover machinery.

use ht_core::hypergraph::{Hypergraph, MtSet, VertexSet};

/// All minimal traverses by exhaustive subset search over the union of
/// the edges. Works directly on the edge lists.
pub fn brute_force_mts(edges: &[Vec<u32>]) -> MtSet {
    let mut vertices: Vec<u32> = edges.iter().flatten().copied().collect();
    vertices.sort_unstable();
    vertices.dedup();
    let n = vertices.len();
    assert!(n <= 25, "oracle is exponential; keep instances small");
    let bit = |x: u32| 1u64 << vertices.binary_search(&x).unwrap();
    let edge_masks: Vec<u64> = edges
        .iter()
        .map(|e| e.iter().map(|&x| bit(x)).fold(0, |a, b| a | b))
        .collect();
    let hits_all = |mask: u64| edge_masks.iter().all(|&e| e & mask != 0);
    let mut out = MtSet::new();
    for mask in 1u64..(1 << n) {
        if !hits_all(mask) {
            continue;
        }
        let minimal = (0..n).all(|i| mask & (1 << i) == 0 || !hits_all(mask & !(1 << i)));
        if minimal {
            let members: Vec<u32> = (0..n)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| vertices[i])
                .collect();
            out.insert(VertexSet::new(members));
        }
    }
    out
}

pub fn brute_force_mts_of(h: &Hypergraph) -> MtSet {
    let edges: Vec<Vec<u32>> = h.edges().map(|e| e.to_vec()).collect();
    brute_force_mts(&edges)
}

/// Smallest traverse size by the same exhaustive search.
#[allow(dead_code)]
pub fn brute_force_tau(h: &Hypergraph) -> usize {
    brute_force_mts_of(h)
        .iter()
        .map(|t| t.len())
        .min()
        .expect("non-empty hypergraph has a traverse")
}

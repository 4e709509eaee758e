//! Divide-and-conquer enumeration: split the instance into one partial
//! hypergraph per vertex of a smallest traverse, enumerate each part,
//! and combine the local results by cartesian union.
//!
//! Unions whose size equals the transversality number are minimal by
//! construction and skip the minimality test entirely; larger unions
//! are kept only when essential with full support.

use crate::enumerate::{enumerate, Backend};
use crate::error::{Error, Result};
use crate::hypergraph::{
    is_minimal_traverse, is_traverse, partial_hypergraph, support, Hypergraph, MtSet, VertexSet,
};
use crate::transversality::{exact_tau, exact_tau_witness};

/// Partition of the edges of a hypergraph along a smallest traverse.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Pivot traverse ordered by decreasing support, ties by ascending
    /// label; part `i` collects the remaining edges containing it.
    pub pivot: Vec<u32>,
    pub parts: Vec<Hypergraph>,
    pub part_edge_indices: Vec<Vec<usize>>,
}

/// Splits `h` along `pivot`, which must be a traverse of minimum size.
pub fn decompose(h: &Hypergraph, pivot: &VertexSet) -> Result<Decomposition> {
    if !is_traverse(h, pivot)? {
        return Err(Error::invalid("pivot is not a traverse"));
    }
    let tau = exact_tau(h);
    if pivot.len() != tau {
        return Err(Error::invalid(format!(
            "pivot has size {}, transversality number is {tau}",
            pivot.len()
        )));
    }
    let mut ordered: Vec<u32> = pivot.iter().collect();
    let mut supports = Vec::with_capacity(ordered.len());
    for &x in &ordered {
        supports.push(support(h, &VertexSet::from([x]))?);
    }
    let mut order: Vec<usize> = (0..ordered.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(supports[i]), ordered[i]));
    ordered = order.iter().map(|&i| ordered[i]).collect();

    let mut assigned = vec![false; h.edge_count()];
    let mut part_edge_indices = Vec::with_capacity(ordered.len());
    let mut parts = Vec::with_capacity(ordered.len());
    for &x in &ordered {
        let indices: Vec<usize> = h
            .edges()
            .enumerate()
            .filter(|&(i, e)| !assigned[i] && e.binary_search(&x).is_ok())
            .map(|(i, _)| i)
            .collect();
        for &i in &indices {
            assigned[i] = true;
        }
        // a minimal pivot keeps a critical edge for every vertex
        debug_assert!(!indices.is_empty());
        parts.push(partial_hypergraph(h, &indices)?);
        part_edge_indices.push(indices);
    }
    debug_assert!(assigned.iter().all(|&a| a));
    Ok(Decomposition {
        pivot: ordered,
        parts,
        part_edge_indices,
    })
}

/// Counters describing how combination handled the product stream.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CombineStats {
    /// Unions of size tau, accepted without a minimality test.
    pub accepted_without_test: u64,
    /// Larger unions that went through the essentiality test.
    pub tested: u64,
    /// Tested unions that failed it.
    pub rejected: u64,
}

/// Combines per-part traverse sets into the traverse set of `h`.
pub fn combine_local(h: &Hypergraph, local_mts: &[MtSet], tau: usize) -> Result<MtSet> {
    combine_local_with_stats(h, local_mts, tau).map(|(mts, _)| mts)
}

/// Variant reporting how many unions skipped the minimality test.
pub fn combine_local_with_stats(
    h: &Hypergraph,
    local_mts: &[MtSet],
    tau: usize,
) -> Result<(MtSet, CombineStats)> {
    if local_mts.len() != tau {
        return Err(Error::invalid(format!(
            "expected {tau} local traverse sets, got {}",
            local_mts.len()
        )));
    }
    let mut out = MtSet::new();
    let mut stats = CombineStats::default();
    let mut smallest: Vec<VertexSet> = Vec::new();
    combine_rec(
        h,
        local_mts,
        tau,
        0,
        &VertexSet::empty(),
        &mut out,
        &mut smallest,
        &mut stats,
    )?;
    Ok((out, stats))
}

#[allow(clippy::too_many_arguments)]
fn combine_rec(
    h: &Hypergraph,
    local_mts: &[MtSet],
    tau: usize,
    depth: usize,
    acc: &VertexSet,
    out: &mut MtSet,
    smallest: &mut Vec<VertexSet>,
    stats: &mut CombineStats,
) -> Result<()> {
    // a partial union strictly containing an accepted size-tau traverse
    // can only grow into non-minimal unions
    if acc.len() > tau
        && smallest
            .iter()
            .any(|s| s.is_subset(acc) && s.len() < acc.len())
    {
        return Ok(());
    }
    if depth == local_mts.len() {
        if acc.len() == tau {
            stats.accepted_without_test += 1;
            if out.insert(acc.clone()) {
                smallest.push(acc.clone());
            }
        } else {
            stats.tested += 1;
            if is_minimal_traverse(h, acc)? {
                out.insert(acc.clone());
            } else {
                stats.rejected += 1;
            }
        }
        return Ok(());
    }
    for t in local_mts[depth].iter() {
        let next = acc.union(t);
        combine_rec(h, local_mts, tau, depth + 1, &next, out, smallest, stats)?;
    }
    Ok(())
}

/// Full pipeline: smallest traverse by exact search, decomposition,
/// per-part enumeration with `backend`, and combination.
pub fn enumerate_local(h: &Hypergraph, backend: Backend) -> Result<MtSet> {
    enumerate_local_detailed(h, backend).map(|(mts, _, _)| mts)
}

/// Pipeline variant exposing the decomposition and combination counters.
pub fn enumerate_local_detailed(
    h: &Hypergraph,
    backend: Backend,
) -> Result<(MtSet, Decomposition, CombineStats)> {
    if !h.is_simple() {
        return Err(Error::NotSimple);
    }
    let (tau, witness) = exact_tau_witness(h);
    let decomposition = decompose(h, &witness)?;
    let mut local = Vec::with_capacity(tau);
    for part in &decomposition.parts {
        local.push(enumerate(part, backend)?);
    }
    let (mts, stats) = combine_local_with_stats(h, &local, tau)?;
    Ok((mts, decomposition, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::parse_hypergraph;

    fn four_edge_sample() -> Hypergraph {
        parse_hypergraph("1 2\n2 3 4\n3 4 5 6 7\n7 8 9\n").unwrap()
    }

    fn six_edge_sample() -> Hypergraph {
        parse_hypergraph("1 2\n2 3 7\n3 4 5\n4 6\n6 7 8\n7 9\n").unwrap()
    }

    #[test]
    fn decomposition_on_nine_vertex_example() {
        let h = six_edge_sample();
        let d = decompose(&h, &VertexSet::from([1, 4, 7])).unwrap();
        assert_eq!(d.pivot, vec![7, 4, 1]);
        assert_eq!(d.part_edge_indices[0], vec![1, 4, 5]);
        assert_eq!(d.part_edge_indices[1], vec![2, 3]);
        assert_eq!(d.part_edge_indices[2], vec![0]);
        let first: Vec<&[u32]> = d.parts[0].edges().collect();
        assert_eq!(first, vec![&[2, 3, 7][..], &[6, 7, 8][..], &[7, 9][..]]);
    }

    #[test]
    fn decomposition_tie_breaks_by_label() {
        let h = four_edge_sample();
        let d = decompose(&h, &VertexSet::from([2, 7])).unwrap();
        // supports tie at 2; ascending label puts 2 first
        assert_eq!(d.pivot, vec![2, 7]);
        assert_eq!(d.part_edge_indices[0], vec![0, 1]);
        assert_eq!(d.part_edge_indices[1], vec![2, 3]);
    }

    #[test]
    fn decompose_validates_pivot() {
        let h = four_edge_sample();
        assert!(decompose(&h, &VertexSet::from([1, 3])).is_err());
        assert!(decompose(&h, &VertexSet::from([1, 2, 7])).is_err());
    }

    #[test]
    fn single_part_when_tau_is_one() {
        let h = parse_hypergraph("1 2\n1 3\n").unwrap();
        let d = decompose(&h, &VertexSet::from([1])).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0], h);
        let mts = enumerate_local(&h, Backend::Mmcs).unwrap();
        assert_eq!(mts, enumerate(&h, Backend::Mmcs).unwrap());
    }

    #[test]
    fn combine_on_main_example() {
        let h = four_edge_sample();
        let d = decompose(&h, &VertexSet::from([2, 7])).unwrap();
        let local: Vec<MtSet> = d
            .parts
            .iter()
            .map(|p| enumerate(p, Backend::Berge).unwrap())
            .collect();
        assert_eq!(local[0].len(), 3);
        assert_eq!(local[1].len(), 9);
        let (mts, stats) = combine_local_with_stats(&h, &local, 2).unwrap();
        assert_eq!(mts, enumerate(&h, Backend::Mmcs).unwrap());
        assert_eq!(mts.len(), 15);
        assert_eq!(
            stats.accepted_without_test + stats.tested,
            27,
            "3 x 9 unions minus pruned prefixes"
        );
        // {2} u {7} is accepted without a test
        assert!(stats.accepted_without_test >= 1);
        // {1,3} u {4,8} and friends are rejected
        assert!(stats.rejected > 0);
    }

    #[test]
    fn pipeline_matches_direct_enumeration() {
        for text in [
            "1 2\n2 3 4\n3 4 5 6 7\n7 8 9\n",
            "1 2\n2 3 7\n3 4 5\n4 6\n6 7 8\n7 9\n",
        ] {
            let h = parse_hypergraph(text).unwrap();
            let direct = enumerate(&h, Backend::Mmcs).unwrap();
            let local = enumerate_local(&h, Backend::Mmcs).unwrap();
            assert_eq!(direct, local);
        }
    }

    #[test]
    fn disjoint_blocks_skip_every_test() {
        let edges: Vec<Vec<u32>> = (0..6u32)
            .map(|i| vec![3 * i + 1, 3 * i + 2, 3 * i + 3])
            .collect();
        let h = Hypergraph::new(edges).unwrap();
        let (mts, _, stats) = enumerate_local_detailed(&h, Backend::Mmcs).unwrap();
        assert_eq!(mts.len(), 729);
        assert_eq!(stats.accepted_without_test, 729);
        assert_eq!(stats.tested, 0);
    }

    #[test]
    fn result_is_pivot_independent() {
        let h = six_edge_sample();
        let expected = enumerate(&h, Backend::Mmcs).unwrap();
        for pivot in [[1, 4, 7], [2, 4, 7]] {
            let d = decompose(&h, &VertexSet::from(pivot)).unwrap();
            let local: Vec<MtSet> = d
                .parts
                .iter()
                .map(|p| enumerate(p, Backend::Mmcs).unwrap())
                .collect();
            let mts = combine_local(&h, &local, d.pivot.len()).unwrap();
            assert_eq!(mts, expected, "pivot {pivot:?}");
        }
    }

    #[test]
    fn rejects_non_simple() {
        let h = parse_hypergraph("1 2\n1 2 3\n").unwrap();
        assert!(matches!(
            enumerate_local(&h, Backend::Mmcs),
            Err(Error::NotSimple)
        ));
    }
}

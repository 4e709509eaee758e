//! Concise exact representation of the traverse set.
//!
//! Vertices sharing one extent (the exact set of edges containing them)
//! are interchangeable inside minimal traverses and never co-occur in
//! one. Grouping them and keeping a single representative yields the
//! irredundant hypergraph, whose minimal traverses expand back to the
//! full set by substituting group members for representatives.

use std::collections::HashMap;

use crate::enumerate::{enumerate, Backend};
use crate::error::{Error, Result};
use crate::hypergraph::{extent, Hypergraph, MtSet, VertexSet};

/// One group of vertices with identical extent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    /// Smallest member, by ascending label order.
    pub representative: u32,
    pub members: VertexSet,
    /// Edge indices shared by all members. Empty for groups loaded from
    /// text, where incidence information is not available.
    pub extent: Vec<usize>,
}

/// Partition of the vertex set into equal-extent groups, ordered by
/// representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedNodes {
    pub groups: Vec<Group>,
}

impl GeneralizedNodes {
    /// Builds a partition from bare (representative, members) rows.
    pub fn from_groups(rows: Vec<(u32, VertexSet)>) -> Result<Self> {
        let mut groups: Vec<Group> = rows
            .into_iter()
            .map(|(rep, members)| {
                if !members.contains(rep) {
                    return Err(Error::invalid(format!(
                        "representative {rep} is not among its members"
                    )));
                }
                Ok(Group {
                    representative: rep,
                    members,
                    extent: Vec::new(),
                })
            })
            .collect::<Result<_>>()?;
        groups.sort_by_key(|g| g.representative);
        Ok(GeneralizedNodes { groups })
    }

    pub fn representatives(&self) -> VertexSet {
        self.groups.iter().map(|g| g.representative).collect()
    }

    /// The group whose representative is `rep`, if any.
    pub fn group_by_representative(&self, rep: u32) -> Option<&Group> {
        self.groups
            .binary_search_by_key(&rep, |g| g.representative)
            .ok()
            .map(|i| &self.groups[i])
    }
}

/// Groups the vertices of `h` by exact extent equality; the smallest
/// member of each group is its representative.
pub fn search_substitution(h: &Hypergraph) -> GeneralizedNodes {
    let vertex_edges = h.vertex_edge_bits();
    let mut by_extent: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut groups: Vec<(u32, Vec<u32>, Vec<usize>)> = Vec::new();
    for (d, &x) in h.vertices().iter().enumerate() {
        let ext = vertex_edges[d].ones();
        match by_extent.get(&ext) {
            Some(&g) => groups[g].1.push(x),
            None => {
                by_extent.insert(ext.clone(), groups.len());
                groups.push((x, vec![x], ext));
            }
        }
    }
    GeneralizedNodes {
        groups: groups
            .into_iter()
            .map(|(rep, members, ext)| Group {
                representative: rep,
                members: VertexSet::from_sorted(members),
                extent: ext,
            })
            .collect(),
    }
}

/// Restricts every edge of `h` to the representatives of `gn`. Each
/// restricted edge is non-empty and corresponds to exactly one edge of
/// the original hypergraph.
pub fn build_irredundant(h: &Hypergraph, gn: &GeneralizedNodes) -> Result<Hypergraph> {
    let member_count: usize = gn.groups.iter().map(|g| g.members.len()).sum();
    if member_count != h.vertex_count() {
        return Err(Error::invalid("groups do not partition the vertex set"));
    }
    for g in &gn.groups {
        let rep_extent = extent(h, g.representative)?;
        if g.extent != rep_extent {
            return Err(Error::invalid(format!(
                "stored extent of group {} does not match the hypergraph",
                g.representative
            )));
        }
        for x in g.members.iter() {
            if extent(h, x)? != rep_extent {
                return Err(Error::invalid(format!(
                    "vertex {x} does not share the extent of its representative"
                )));
            }
        }
    }
    let reps = gn.representatives();
    let edges: Vec<Vec<u32>> = h
        .edges()
        .map(|e| e.iter().copied().filter(|&x| reps.contains(x)).collect())
        .collect();
    debug_assert!(edges.iter().all(|e: &Vec<u32>| !e.is_empty()));
    Hypergraph::new(edges)
}

/// Output of the irredundant extraction pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct ImtResult {
    pub generalized: GeneralizedNodes,
    pub irredundant_h: Hypergraph,
    pub irredundant_mts: MtSet,
    /// Number of traverses the irredundant set expands to.
    pub expanded_count: u64,
    /// Compaction rate: fraction of the full set recoverable by
    /// substitution.
    pub compaction: f64,
}

/// Substitution search, irredundant construction and backend
/// enumeration in one step.
pub fn imt_extract(h: &Hypergraph, backend: Backend) -> Result<ImtResult> {
    if !h.is_simple() {
        return Err(Error::NotSimple);
    }
    let gn = search_substitution(h);
    let irredundant_h = build_irredundant(h, &gn)?;
    let irredundant_mts = enumerate(&irredundant_h, backend)?;
    let expanded_count = expansion_count(&irredundant_mts, &gn);
    let compaction = compaction_rate(expanded_count, irredundant_mts.len() as u64)?;
    Ok(ImtResult {
        generalized: gn,
        irredundant_h,
        irredundant_mts,
        expanded_count,
        compaction,
    })
}

/// Number of traverses `expand_mts` would produce, without expanding:
/// each irredundant traverse contributes the product of its groups'
/// sizes.
pub fn expansion_count(irredundant_mts: &MtSet, gn: &GeneralizedNodes) -> u64 {
    irredundant_mts
        .iter()
        .map(|t| {
            t.iter()
                .map(|rep| {
                    gn.group_by_representative(rep)
                        .map_or(1, |g| g.members.len() as u64)
                })
                .fold(1u64, u64::saturating_mul)
        })
        .fold(0u64, u64::saturating_add)
}

/// Replaces every representative by each member of its group, in all
/// combinations.
pub fn expand_mts(irredundant_mts: &MtSet, gn: &GeneralizedNodes) -> Result<MtSet> {
    let mut out = MtSet::new();
    for t in irredundant_mts.iter() {
        let mut choices: Vec<&VertexSet> = Vec::with_capacity(t.len());
        for rep in t.iter() {
            let group = gn
                .group_by_representative(rep)
                .ok_or(Error::UnknownVertex(rep))?;
            choices.push(&group.members);
        }
        let mut acc: Vec<Vec<u32>> = vec![Vec::new()];
        for members in choices {
            let mut next = Vec::with_capacity(acc.len() * members.len());
            for prefix in &acc {
                for x in members.iter() {
                    let mut row = prefix.clone();
                    row.push(x);
                    next.push(row);
                }
            }
            acc = next;
        }
        for row in acc {
            out.insert(VertexSet::new(row));
        }
    }
    Ok(out)
}

/// Compaction rate `(full - irredundant) / full`.
pub fn compaction_rate(full_count: u64, irredundant_count: u64) -> Result<f64> {
    if full_count == 0 {
        return Err(Error::invalid("full traverse count is zero"));
    }
    if irredundant_count == 0 || irredundant_count > full_count {
        return Err(Error::invalid(
            "irredundant count must lie in 1..=full count",
        ));
    }
    Ok((full_count - irredundant_count) as f64 / full_count as f64)
}

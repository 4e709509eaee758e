//! Functional-dependency inference over relations.
//!
//! Agree sets of tuple pairs yield, per attribute, the maximal sets not
//! determining it; the complements form a small hypergraph whose
//! minimal traverses are exactly the minimal premises. Running the
//! irredundant pipeline on those hypergraphs instead gives a concise
//! cover, expandable back to the full one, plus conditional
//! dependencies between attributes sharing an extent.

use std::collections::{BTreeMap, BTreeSet};

use crate::enumerate::Backend;
use crate::error::{Error, Result};
use crate::hypergraph::{min_reduce, Hypergraph, MtSet, VertexSet};
use crate::irredundant::{expand_mts, imt_extract, GeneralizedNodes};

/// Named attributes and rows of opaque values compared for exact
/// equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    attributes: Vec<String>,
    tuples: Vec<Vec<String>>,
}

impl Relation {
    pub fn new(attributes: Vec<String>, tuples: Vec<Vec<String>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for a in &attributes {
            if !seen.insert(a) {
                return Err(Error::invalid(format!("duplicate attribute name {a:?}")));
            }
        }
        for (i, row) in tuples.iter().enumerate() {
            if row.len() != attributes.len() {
                return Err(Error::invalid(format!(
                    "row {} has {} values, expected {}",
                    i + 1,
                    row.len(),
                    attributes.len()
                )));
            }
        }
        Ok(Relation { attributes, tuples })
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn attribute_count(&self) -> u32 {
        self.attributes.len() as u32
    }

    pub fn tuples(&self) -> &[Vec<String>] {
        &self.tuples
    }

    pub fn attribute_name(&self, index: u32) -> &str {
        &self.attributes[index as usize]
    }

    fn value(&self, tuple: usize, attribute: u32) -> &str {
        &self.tuples[tuple][attribute as usize]
    }

    fn check_attribute(&self, a: u32) -> Result<()> {
        if (a as usize) < self.attributes.len() {
            Ok(())
        } else {
            Err(Error::UnknownAttribute(a))
        }
    }
}

/// Parses a CSV stream whose first row is a header of unique names.
/// Values are kept as exact strings; duplicate rows are retained.
pub fn parse_relation(csv_text: &str) -> Result<Relation> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(csv_text.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::invalid(format!("csv header: {e}")))?
        .iter()
        .map(|s| s.to_string())
        .collect();
    if headers.is_empty() || headers.iter().all(|h| h.is_empty()) {
        return Err(Error::invalid("empty csv input"));
    }
    let mut tuples = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or_default();
            Error::Parse {
                line,
                message: format!("csv record: {e}"),
            }
        })?;
        tuples.push(record.iter().map(|s| s.to_string()).collect());
    }
    Relation::new(headers, tuples)
}

/// Agree sets of all distinct tuple pairs, each mapped to the pairs
/// that produced it. The empty agree set is recorded when it occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreeSetTable {
    pub entries: BTreeMap<VertexSet, BTreeSet<(usize, usize)>>,
    n_attributes: u32,
}

impl AgreeSetTable {
    pub fn sets(&self) -> impl Iterator<Item = &VertexSet> {
        self.entries.keys()
    }
}

pub fn agree_sets(r: &Relation) -> Result<AgreeSetTable> {
    if r.tuples.len() < 2 {
        return Err(Error::invalid("agree sets need at least two tuples"));
    }
    let mut entries: BTreeMap<VertexSet, BTreeSet<(usize, usize)>> = BTreeMap::new();
    for i in 0..r.tuples.len() {
        for j in i + 1..r.tuples.len() {
            let agree: VertexSet = (0..r.attribute_count())
                .filter(|&a| r.value(i, a) == r.value(j, a))
                .collect();
            entries.entry(agree).or_default().insert((i, j));
        }
    }
    Ok(AgreeSetTable {
        entries,
        n_attributes: r.attribute_count(),
    })
}

/// Inclusion-maximal agree sets not containing attribute `a`.
pub fn max_sets(ag: &AgreeSetTable, a: u32) -> Result<Vec<VertexSet>> {
    if a >= ag.n_attributes {
        return Err(Error::UnknownAttribute(a));
    }
    let without_a: Vec<&VertexSet> = ag.sets().filter(|s| !s.contains(a)).collect();
    Ok(without_a
        .iter()
        .filter(|s| !without_a.iter().any(|t| t != *s && s.is_subset(t)))
        .map(|s| (*s).clone())
        .collect())
}

/// Complements of the max sets with `a` removed. Empty complements are
/// retained; the caller decides whether the attribute is skipped.
pub fn cmax_sets(maxs: &[VertexSet], a: u32, n_attributes: u32) -> Vec<VertexSet> {
    maxs.iter()
        .map(|x| {
            (0..n_attributes)
                .filter(|&b| b != a && !x.contains(b))
                .collect()
        })
        .collect()
}

/// Builds the per-attribute hypergraph from non-empty complement sets,
/// reduced to simple form. Returns `None` when any complement is empty,
/// in which case no premise can determine the attribute.
pub fn attribute_hypergraph(cmax: &[VertexSet]) -> Option<Hypergraph> {
    if cmax.iter().any(|c| c.is_empty()) {
        return None;
    }
    let edges: Vec<Vec<u32>> = cmax.iter().map(|c| c.iter().collect()).collect();
    Hypergraph::new(edges).ok().map(|h| min_reduce(&h))
}

/// A functional dependency `premise -> conclusion` over attribute
/// positions; the premise may be empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fd {
    pub premise: VertexSet,
    pub conclusion: u32,
}

impl Fd {
    pub fn render(&self, attributes: &[String]) -> String {
        let premise = self
            .premise
            .iter()
            .map(|a| attributes[a as usize].clone())
            .collect::<Vec<_>>()
            .join(",");
        format!("{premise} -> {}", attributes[self.conclusion as usize])
    }
}

/// A set of minimal functional dependencies, optionally carrying the
/// per-attribute vertex groups used by concise covers.
#[derive(Clone, Debug, PartialEq)]
pub struct FdCover {
    pub fds: BTreeSet<Fd>,
    pub per_attribute_gn: Option<BTreeMap<u32, GeneralizedNodes>>,
    pub diagnostics: Vec<String>,
}

impl FdCover {
    pub fn rendered_lines(&self, attributes: &[String]) -> Vec<String> {
        let mut lines: Vec<String> = self.fds.iter().map(|fd| fd.render(attributes)).collect();
        lines.sort();
        lines
    }
}

/// True when every pair of tuples agreeing on `premise` also agrees on
/// `conclusion`.
pub fn fd_satisfied(r: &Relation, premise: &VertexSet, conclusion: u32) -> bool {
    fd_satisfied_on(r, premise, conclusion, None)
}

fn fd_satisfied_on(
    r: &Relation,
    premise: &VertexSet,
    conclusion: u32,
    tuple_indices: Option<&[usize]>,
) -> bool {
    let all: Vec<usize> = (0..r.tuples.len()).collect();
    let idx = tuple_indices.unwrap_or(&all);
    for (pi, &i) in idx.iter().enumerate() {
        for &j in idx.iter().skip(pi + 1) {
            let agree_premise = premise.iter().all(|a| r.value(i, a) == r.value(j, a));
            if agree_premise && r.value(i, conclusion) != r.value(j, conclusion) {
                return false;
            }
        }
    }
    true
}

enum AttributeCase {
    Hypergraph(Hypergraph),
    Constant,
    Undetermined,
    Diagnostic(String),
}

fn attribute_case(r: &Relation, ag: &AgreeSetTable, a: u32) -> Result<AttributeCase> {
    let maxs = max_sets(ag, a)?;
    if maxs.is_empty() {
        // every agree set contains `a`, which forces it constant
        return if fd_satisfied(r, &VertexSet::empty(), a) {
            Ok(AttributeCase::Constant)
        } else {
            Ok(AttributeCase::Diagnostic(format!(
                "attribute {} has no max sets yet is not constant",
                r.attribute_name(a)
            )))
        };
    }
    let cmax = cmax_sets(&maxs, a, r.attribute_count());
    match attribute_hypergraph(&cmax) {
        Some(h) => Ok(AttributeCase::Hypergraph(h)),
        None => Ok(AttributeCase::Undetermined),
    }
}

/// Minimal cover: for each determinable attribute, the minimal
/// traverses of its complement hypergraph become the premises.
pub fn minimal_cover(r: &Relation, backend: Backend) -> Result<FdCover> {
    let ag = agree_sets(r)?;
    let mut fds = BTreeSet::new();
    let mut diagnostics = Vec::new();
    for a in 0..r.attribute_count() {
        match attribute_case(r, &ag, a)? {
            AttributeCase::Hypergraph(h) => {
                for t in crate::enumerate::enumerate(&h, backend)?.iter() {
                    fds.insert(Fd {
                        premise: t.clone(),
                        conclusion: a,
                    });
                }
            }
            AttributeCase::Constant => {
                fds.insert(Fd {
                    premise: VertexSet::empty(),
                    conclusion: a,
                });
            }
            AttributeCase::Undetermined => {}
            AttributeCase::Diagnostic(d) => diagnostics.push(d),
        }
    }
    Ok(FdCover {
        fds,
        per_attribute_gn: None,
        diagnostics,
    })
}

/// Concise cover: premises come from the irredundant traverses of each
/// attribute hypergraph; the per-attribute groups are kept for
/// expansion and conditional dependencies.
pub fn concise_cover(r: &Relation, backend: Backend) -> Result<FdCover> {
    let ag = agree_sets(r)?;
    let mut fds = BTreeSet::new();
    let mut gn_map = BTreeMap::new();
    let mut diagnostics = Vec::new();
    for a in 0..r.attribute_count() {
        match attribute_case(r, &ag, a)? {
            AttributeCase::Hypergraph(h) => {
                let imt = imt_extract(&h, backend)?;
                for t in imt.irredundant_mts.iter() {
                    fds.insert(Fd {
                        premise: t.clone(),
                        conclusion: a,
                    });
                }
                gn_map.insert(a, imt.generalized);
            }
            AttributeCase::Constant => {
                fds.insert(Fd {
                    premise: VertexSet::empty(),
                    conclusion: a,
                });
            }
            AttributeCase::Undetermined => {}
            AttributeCase::Diagnostic(d) => diagnostics.push(d),
        }
    }
    Ok(FdCover {
        fds,
        per_attribute_gn: Some(gn_map),
        diagnostics,
    })
}

/// Expands a concise cover back to the full minimal cover by
/// substituting group members for representatives in every premise.
pub fn expand_cover(concise: &FdCover) -> Result<FdCover> {
    let gn_map = concise
        .per_attribute_gn
        .as_ref()
        .ok_or_else(|| Error::invalid("cover carries no generalized-node map"))?;
    let mut fds = BTreeSet::new();
    for fd in &concise.fds {
        if fd.premise.is_empty() {
            fds.insert(fd.clone());
            continue;
        }
        let gn = gn_map
            .get(&fd.conclusion)
            .ok_or_else(|| Error::invalid("missing groups for a concise premise"))?;
        let single: MtSet = [fd.premise.clone()].into_iter().collect();
        for premise in expand_mts(&single, gn)?.iter() {
            fds.insert(Fd {
                premise: premise.clone(),
                conclusion: fd.conclusion,
            });
        }
    }
    Ok(FdCover {
        fds,
        per_attribute_gn: None,
        diagnostics: concise.diagnostics.clone(),
    })
}

/// A conditional dependency between two attributes sharing an extent in
/// one attribute hypergraph, together with the tuples of the
/// sub-relation it was checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalFd {
    pub fd: Fd,
    /// Tuple indices whose pairs generated the attribute's max sets.
    pub support_tuples: Vec<usize>,
    /// Whether the dependency holds on that sub-relation.
    pub holds: bool,
}

/// For each non-singleton group of attribute `a`'s hypergraph, emits
/// `member -> representative` with the sub-relation formed by all
/// tuple pairs that generated the max sets of `a`, and records whether
/// the dependency holds there.
pub fn conditional_fds(
    r: &Relation,
    a: u32,
    gn: &GeneralizedNodes,
    ag: &AgreeSetTable,
) -> Result<Vec<ConditionalFd>> {
    r.check_attribute(a)?;
    let maxs = max_sets(ag, a)?;
    let mut support: BTreeSet<usize> = BTreeSet::new();
    for m in &maxs {
        if let Some(pairs) = ag.entries.get(m) {
            for &(i, j) in pairs {
                support.insert(i);
                support.insert(j);
            }
        }
    }
    let support: Vec<usize> = support.into_iter().collect();
    let mut out = Vec::new();
    for g in &gn.groups {
        for member in g.members.iter() {
            if member == g.representative {
                continue;
            }
            let fd = Fd {
                premise: VertexSet::from([member]),
                conclusion: g.representative,
            };
            let holds = fd_satisfied_on(r, &fd.premise, fd.conclusion, Some(&support));
            out.push(ConditionalFd {
                fd,
                support_tuples: support.clone(),
                holds,
            });
        }
    }
    Ok(out)
}

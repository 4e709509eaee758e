//! Enumeration of minimal transversals (minimal hitting sets) of hypergraphs.
//!
//! The crate provides:
//!
//! - a hypergraph data model with text IO and the usual structural
//!   transforms (reduction to simple form, dual, partial hypergraph),
//! - three interchangeable complete enumeration backends (`berge`,
//!   `mtminer`, `mmcs`),
//! - greedy and exact computation of the transversality number,
//! - extraction of multi-member minimal traverses (smallest traverses
//!   maximising a coverage criterion),
//! - a concise exact representation of the traverse set through
//!   generalized nodes and the irredundant hypergraph, with expansion
//!   back to the full set,
//! - a divide-and-conquer pipeline that splits the instance along a
//!   smallest traverse and combines local results,
//! - functional-dependency inference over relations (agree sets,
//!   minimal and concise covers, conditional dependencies),
//! - instance generators and a small benchmark harness.
//!
//! All types are immutable after construction and all operations are
//! pure functions of their inputs.

mod bits;

pub mod enumerate;
pub mod error;
pub mod fd;
pub mod genbench;
pub mod hypergraph;
pub mod irredundant;
pub mod localgen;
pub mod tmm;
pub mod transversality;

pub use enumerate::{enumerate, Backend};
pub use error::{Error, Result};
pub use hypergraph::{
    dual, is_minimal_traverse, is_traverse, min_reduce, parse_hypergraph, partial_hypergraph,
    profile, serialize_hypergraph, support, Hypergraph, HypergraphProfile, MtSet, VertexSet,
};

//! Constructive verification that the h-vector of a triconed graph's graphic
//! matroid is a pure O-sequence.
//!
//! A graph is *triconed* when some path `0 - 1 - 2` dominates it: every other
//! vertex is adjacent to one of the three path vertices, and no parallel
//! edges touch them. For such graphs this crate maps every spanning tree to a
//! monomial in two steps (trees to marked forests of the reduced graph, then
//! marked forests to edge-weighted forests), assembles the image, and checks
//! against brute-force oracles that the image is a pure order ideal whose
//! degree sequence equals the h-vector.
//!
//! Entry points:
//! - [`graph::parse_graph`] and the structural queries in [`graph`],
//! - [`activity::h_vector`] for the exchange-definition h-vector,
//! - [`labeling::build_labeling`] for the triconed ordering machinery,
//! - [`marked::phi1`] / [`weighted::phi2`] for the two bijections,
//! - [`multicomplex::verify_stanley`] for the end-to-end certificate.
//!
//! The `examples/` directory walks through each capability; the `tricone`
//! binary exposes the same pipeline as subcommands.

pub mod activity;
pub mod cli;
pub mod corpus;
pub mod dot;
pub mod graph;
pub mod labeling;
pub mod marked;
pub mod multicomplex;
pub mod weighted;

use thiserror::Error as ThisError;

pub use activity::{h_vector, lex_min_basis, passive_set, EdgeOrder, HVector};
pub use graph::{
    coloops, is_spanning_tree, loops, matrix_tree_count, parallel_classes, parse_graph,
    reduce_to_core, spanning_trees, EdgeSet, Graph, ReductionLog, ReductionStep, UnionFind,
    DEFAULT_TREE_CAP,
};
pub use labeling::{build_labeling, cone_edge_of, find_special_triples, TriconeLabeling};
pub use marked::{
    augment_step, blueprint_of, is_trirooted, mark_activity, phi1, phi1_inv, Blueprint,
    MarkReport, MarkedForest,
};
pub use multicomplex::{
    image_of, is_divisor_closed, is_pure, maximal_monomials, o_sequence, verify_stanley,
    MonomialSet, OSequence, VerificationReport,
};
pub use weighted::{
    divide, excess_weight, find_sandwich_edge, is_3weighted, phi2, phi2_inv, weighted_blueprint,
    Monomial, WeightedForest,
};

/// Crate-wide error type.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("the graph has no vertices")]
    EmptyGraph,

    #[error("the graph is disconnected")]
    Disconnected,

    #[error("spanning-tree enumeration exceeded the cap of {cap}")]
    EnumerationLimit { cap: u64 },

    #[error("edge set is not a spanning tree")]
    NotASpanningTree,

    #[error("invalid special triple: {clause}")]
    InvalidTriple { clause: String },

    #[error("vertex {vertex} has no cone edge")]
    NoConeEdge { vertex: String },

    #[error("marked forest is not trirooted: {0}")]
    NotTrirooted(String),

    #[error("weighted forest is not 3-weighted: {0}")]
    NotThreeWeighted(String),

    #[error("no sandwich-compatible edge on the path")]
    NoSandwichEdge,

    #[error("edge {edge} is not in the monomial's support")]
    NotInSupport { edge: usize },

    #[error("the forest is already maximal")]
    AlreadyMaximal,

    #[error("enumeration domain too large: {0}")]
    DomainTooLarge(String),

    #[error("{0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

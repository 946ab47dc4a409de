//! Maximum Δ-edge-colorable subgraphs of loopless multigraphs.
//!
//! The crate provides:
//!
//! - [`multigraph`]: the graph representation with stable edge identities,
//!   cuts, girth and underlying-simple-graph queries;
//! - [`coloring`]: partial proper edge colorings, Kempe chains, and the odd
//!   cycles attached to uncolored edges;
//! - [`exact`]: exhaustive oracles for chromatic index, maximum
//!   Δ-edge-colorable subgraphs, and minimum excess color classes;
//! - [`structure`]: the constructive recoloring procedures (disjoint cycle
//!   assignment, cycle-set extension, matching normalization) and the bound
//!   checkers that verify them;
//! - [`generators`]: the extremal families and named instances;
//! - [`corpus`]: exhaustive small-graph corpora up to isomorphism;
//! - [`brute`]: slow independent cross-check oracles;
//! - [`dot`], [`report`]: output plumbing.

#![forbid(unsafe_code)]

pub mod brute;
pub mod coloring;
pub mod corpus;
pub mod dot;
pub mod exact;
pub mod generators;
pub mod multigraph;
pub mod report;
pub mod structure;

pub use coloring::{Color, ColoringError, CycleSearch, Improvement, KempeChain, PartialColoring, UncoloredCycle};
pub use exact::{
    chromatic_index, is_t_edge_colorable, max_delta_subgraph, r_prime, ChromaticCertificate,
    ExactError, MaxSubgraphCertificate, SearchBudget,
};
pub use multigraph::{EdgeCut, EdgeId, Girth, GraphError, Multigraph, VertexId};
pub use report::{Outcome, VerificationReport};
pub use structure::{
    assign_disjoint_cycles, check_class_one, check_corollary_bounds, check_cut_condition,
    check_cycle_intersection_lemma, check_ratio_bound, explore_conjecture, extend_cycles,
    extend_two_factor, normalize_to_matching, CutCheckMode, CycleAssignment, StructureError,
};

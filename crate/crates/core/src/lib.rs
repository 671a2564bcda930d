//! Minimal-memory realization of pearl-necklace encoders for quantum
//! convolutional codes built from H, P, CNOT and CPHASE gate strings.
//!
//! A necklace is parsed ([`parse_necklace`]), turned into a weighted
//! non-commutativity DAG ([`build_graph`]), and the longest paths through
//! that DAG give the target frame of every gate in the repeated unitary
//! ([`assign_frames`]). The longest `START → END` weight is the number of
//! memory frames. The [`oracle`] module checks results independently.
//!
//! ```
//! use necklace_core::{compile, parse_necklace, render_realization};
//!
//! let necklace = parse_necklace("frame 3\nCPHASE 2 3 1\nCNOT 1 2 1").unwrap();
//! let realization = compile(&necklace).realization;
//! assert_eq!(realization.memory, 2);
//! assert_eq!(
//!     render_realization(&realization),
//!     "CPHASE(2,3)(1,0)\nCNOT(1,2)(2,1)\nmemory: 2\n"
//! );
//! ```

pub mod bench;
pub mod commutativity;
pub mod gate_model;
pub mod graph;
pub mod oracle;
pub mod random;
pub mod scheduler;

pub use commutativity::{
    noncommuting, predecessor_sets, relations, source_target, target_source, target_target,
    PredecessorSets, RelationKind,
};
pub use gate_model::{
    classify_indices, parse_necklace, Degree, GateKind, GateString, IndexSets, ModelError,
    ParseError, PearlNecklace,
};
pub use graph::{
    build_graph, export_dot, export_dot_highlighted, Edge, EdgeKind, GraphError, NoncommGraph,
    Vertex, Weight,
};
pub use scheduler::{
    assign_frames, compile, longest_paths, render_realization, Compilation, ConstraintViolation,
    ConvRealization, LongestPathResult, PlacedGate,
};

/// Graph over integer degrees, as built from a necklace.
pub type Graph = NoncommGraph<Degree>;
/// Longest-path result over integer degrees.
pub type Paths = LongestPathResult<Degree>;

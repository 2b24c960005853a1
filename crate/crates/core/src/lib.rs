//! Polyhedral embeddings of cubic graphs, their extended graphs, and the
//! reconstruction of facial systems from extended graphs.

pub mod embedding;
pub mod enumeration;
pub mod error;
pub mod extended;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod named;
pub mod reconstruct;
pub mod verify;

pub use embedding::{
    canonical_system, check_system, euler_genus, is_polyhedral, systems_equivalent, trace_faces, EmbeddingScheme,
    FacialSystem, FacialWalk, PolyhedralityReport, PolyhedralityViolation, Sign,
};
pub use enumeration::{
    enumerate_polyhedral, enumerate_polyhedral_with, enumerate_schemes, CensusOptions, EmbeddingCensus,
};
pub use error::{Error, Graph6ErrorKind, Result};
pub use extended::{build_extended, extended_equal, ExtendedGraph, ScaffoldEdge};
pub use graph::{
    is_three_connected, validate_cubic, CubicGraph, Path3, SimpleGraph, ValidationReport, Vertex, Violation,
};
pub use graph6::{emit_graph6, parse_graph6, read_corpus, CorpusEntry};
pub use iso::{automorphisms, is_isomorphic, VertexPermutation};
pub use reconstruct::{
    reconstruct, reconstruct_with, ReconstructError, ReconstructOptions, ReconstructionOutcome, Rule, Special,
};
pub use verify::{verify_corpus, verify_graph, GraphRecord, VerificationReport, VerifyOptions};

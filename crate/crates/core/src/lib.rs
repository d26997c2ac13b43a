//! Combinatorial and numerical tools for the fundamental groups of spaces of
//! monic real polynomials whose real-root multiplicity patterns avoid a closed
//! set of compositions.

pub mod composition;
pub mod error;
pub mod graph;
pub mod presentation;
pub mod presets;
pub mod roots;
pub mod simplify;
pub mod snf;
pub mod tracer;
pub mod word;

pub use composition::{closure, enumerate_omega, precedes, Composition, ReducedNormFilter, ThetaPoset};
pub use error::{Error, ErrorClass, Result};
pub use graph::{build_dual_graph, expected_rank, graph_rank, StrataGraph};
pub use presentation::{
    classify_freeness, critical_presentation, free_product_split, generators, pi1_compactified,
    presentation, stabilize, FreenessCase, Gamma, Presentation, Relator, Symbol,
};
pub use roots::root_pattern;
pub use simplify::{certify_free, replay, simplify, Move, SimplifiedPresentation};
pub use snf::{abelianize, smith_normal_form, AbelianInvariants, IntegerMatrix};
pub use tracer::{export_zero_locus, synthesize, trace, CoefficientPath, CrossingEvent, TraceOptions};
pub use word::{gamma, Letter, Sign, Word};

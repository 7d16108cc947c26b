//! Unique prime factor decomposition of connected directed hypergraphs with
//! respect to the Cartesian product.
//!
//! The entry point is [`pfd_hypergraph`]. It factors the 2-section with
//! [`pfd_graph`], uses the graph coordinates as a pre-coordinatization,
//! detects which 2-section factors must merge by checking increments of
//! every arc, and returns prime factors together with a coordinatization
//! of the input that realizes their product.
//!
//! ```
//! use hyperfactor::{fixtures, pfd_hypergraph};
//!
//! let factorization = pfd_hypergraph(&fixtures::fig2()).unwrap();
//! assert_eq!(factorization.len(), 2);
//! ```
//!
//! [`oracle`] holds brute-force ground truth and seeded generators.

pub mod coords;
pub mod fixtures;
pub mod graph;
pub mod graph_pfd;
pub mod hyper_pfd;
pub mod hypergraph;
pub mod iso;
pub mod oracle;
pub mod order;
pub mod union_find;

pub use coords::{CoordError, Coordinatization};
pub use graph::{graph_product, two_section, UndirectedGraph};
pub use graph_pfd::{coordinates_from_coloring, pfd_graph, EdgeColoring, GraphFactorization, GraphPfdError};
pub use hyper_pfd::{
    build_aux_graph, combine, pfd_hypergraph, preprocessing, AuxiliaryGraph, HypergraphFactorization, MissingIncrement,
    PfdError, Preprocessed,
};
pub use hypergraph::{
    cartesian_product, product_of, validate, DirectedHypergraph, Hyperarc, HypergraphBuilder, ValidationError,
    VertexId, Violation,
};
pub use iso::{isomorphic, isomorphic_with_budget, BudgetExceeded};
pub use order::{arc_in_set, canonical_order, CanonicalOrder, LexArc};

//! Exhaustive classification of graphs that have exactly `r` cycles of every
//! admissible length, among graphs with a small number of edges beyond a
//! spanning (or near-spanning) cycle.
//!
//! The pipeline is: [`generate`] enumerates schemas up to dihedral symmetry,
//! [`solver`] finds the arc lengths that realise a target spectrum,
//! [`canon`] removes isomorphic duplicates, and [`catalog`] ties a sweep
//! together. [`graph`] holds the concrete graphs and the brute-force cycle
//! oracle every result is audited against.

mod cycles;

pub mod canon;
pub mod catalog;
pub mod generate;
pub mod graph;
pub mod io;
pub mod reproduce;
pub mod schema;
pub mod solver;
pub mod target;

pub use canon::{are_isomorphic, canonical_form, dedup, CanonicalForm};
pub use catalog::{search, CatalogEntry, MultiplicityRange, SearchConfig};
pub use generate::{enumerate_schemas, schema_canonical_key};
pub use graph::{CycleSpectrum, Graph, GraphError};
pub use schema::{parse_schemas, serialize_schema, Assignment, Schema, SymbolicCycle};
pub use solver::{forced_order, solve_schema, SearchTarget, SolveOptions};
pub use target::{target_spectrum, Family};

//! Construction, verification and search for large graphs of given maximum
//! degree and diameter.
//!
//! The crate covers the standing record table for degrees 3..16 and diameters
//! 2..10: Moore-bound bookkeeping, Cayley graphs over semidirect products of
//! cyclic groups, the Foster-graph edge-pairing construction, ingestion of
//! externally published adjacency lists, and seeded stochastic search for new
//! candidates.

pub mod cayley;
pub mod constructions;
pub mod graph;
pub mod groups;
pub mod records;
pub mod search;

pub use graph::{CompactGraph, GraphStats};
pub use groups::{Group, SemidirectGroup, SemidirectSpec};

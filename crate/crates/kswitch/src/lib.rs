//! Uniform random sampling of constraint-respecting graphs via generalized
//! k-edge switching.
//!
//! The classic pairwise edge swap preserves degree sequences but can leave
//! whole regions of a constrained graph set unreachable. This crate runs the
//! switch-and-hold walk with switches of arbitrary order k: pick k edges,
//! permute their targets with a uniform random permutation, keep the result
//! only if it is still a simple graph satisfying the constraint, and hold
//! (stay put, consuming the trial) otherwise. Holding keeps every graph's
//! Markov out-degree equal, so the stationary distribution on each connected
//! component of the chain is uniform; raising k merges components until, at
//! k = M, every constrained graph is reachable.
//!
//! Modules:
//! - [`graph`]: dual edge-array + adjacency-list storage with O(1) random
//!   edge selection and O(δ) neighborhood scans.
//! - [`switch`]: the k-switch trial loop ([`switch::run_walk`]).
//! - [`constraint`]: built-in constraint families with full and incremental
//!   checks (projection degrees, colored triangles, degree-pair histogram,
//!   triangle count, component sizes).
//! - [`observable`]: motif counters, colored-triangle classification, trace
//!   recording and plateau detection.
//! - [`oracle`]: exhaustive enumeration and explicit Markov graphs for small
//!   instances; certifies connectivity, regularity, symmetry and sampling
//!   uniformity.
//! - [`experiment`]: the k-sweep experiment driver behind the CLI.
//! - [`gen`]: canonical toy instances and seeded random starters.

pub mod constraint;
pub mod experiment;
pub mod gen;
pub mod graph;
pub mod observable;
pub mod oracle;
pub mod switch;

pub use constraint::{Constraint, EdgeDelta};
pub use graph::{Edge, Graph, GraphError, NodeColor, NodeId};
pub use observable::{Observable, ObservableTrace};
pub use switch::{run_walk, RejectReason, SwitchProposal, TrialOutcome, WalkConfig, WalkReport};

//! Solvers and equilibrium constructions for strategic multi-layer network
//! formation with distance-based utilities.
//!
//! A *reference* layer fixes which node pairs earn benefit; a designed layer is
//! scored by summing a nonincreasing benefit of the hop distance between the
//! endpoints of every reference edge, minus a per-edge build cost. The crate
//! provides:
//!
//! - an immutable undirected-graph kernel on adjacency bitsets ([`graph`]),
//! - benefit schedules and the single-layer / conditional utilities ([`schedule`]),
//! - exact best-response search with certified closed forms, component and
//!   leaf-peeling decompositions, and a greedy baseline ([`solver`]),
//! - the tree-spanner reduction that drives the decision-problem oracle
//!   ([`reduction`]),
//! - the multi-player substitutes game: hub-and-spoke equilibrium
//!   constructions, verification, and sequential dynamics ([`game`]),
//! - JSON file formats and report plumbing for the batch CLI ([`io`]).
//!
//! All arithmetic is exact rational; every public operation is a pure function
//! over immutable values and is safe to call concurrently.

pub mod error;
pub mod game;
pub mod graph;
pub mod io;
pub mod rational;
pub mod reduction;
pub mod schedule;
pub mod solver;

pub use error::{Error, ErrorKind};
pub use graph::{Distance, DistanceTable, Graph, NodeSet, PeelingRecord};
pub use rational::Rational;
pub use schedule::{BenefitSchedule, CostClass};
pub use solver::{BrResult, BrnInstance, Certificate, SolverChoice, SolverConfig};

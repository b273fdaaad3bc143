//! Minimum edge-colored clustering on hypergraphs.
//!
//! Each hyperedge carries a color; a clustering assigns one color per node and
//! pays the weight of every edge containing a node of another color. The crate
//! provides the LP relaxation and its interval rounding, linear-time colorings
//! built on vertex cover, reductions to vertex cover and node multiway cut,
//! exact branch-and-bound oracles for small inputs, and exact checks of the
//! dual certificates behind the rounding analysis.

pub mod certs;
pub mod combinatorial;
pub mod error;
pub mod generate;
pub mod hypergraph;
pub mod io;
pub mod lp;
pub mod oracle;
pub mod reductions;
pub mod rounding;

pub use error::{EccError, Result};
pub use hypergraph::{
    accuracy, build_incidence, objective_cost, ColorSortedIncidence, CostReport, Edge,
    EdgeColoredHypergraph, NodeColoring,
};

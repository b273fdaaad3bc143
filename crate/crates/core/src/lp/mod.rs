//! Linear programs: model, reference simplex, the two clustering relaxations
//! and text export.

pub mod ecc;
pub mod export;
pub mod model;
pub mod simplex;

pub use ecc::{
    build_ecc_lp, build_nodemc_lp, ecc_edge_var, ecc_node_var, ecc_solution_from_primal,
    extract_ecc_solution, nodemc_lp_from_reduction, solve_ecc_lp, EccLpSolution,
};
pub use export::{export_lp_text, import_primal};
pub use model::{Constraint, LinearProgram, LpResult, LpStatus, Relation, Sense};
pub use simplex::{solve, solve_with, PivotRule, SolverOptions};

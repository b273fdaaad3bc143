//! The canonical MinECC relaxation and the node-weighted multiway cut
//! relaxation of the reduced graph.

use serde::Serialize;

use super::model::{LinearProgram, LpResult, Relation, Sense};
use super::simplex::{solve_with, SolverOptions};
use crate::error::{EccError, Result};
use crate::hypergraph::EdgeColoredHypergraph;
use crate::reductions::{ecc_to_node_mc, NodeMcReduction};

/// Values this close to 0 or 1 are snapped onto the bound.
pub const SNAP_TOL: f64 = 1e-7;

/// Variable `x_v^i` has index `v * k + (i - 1)`; `x_e` for edge `j` has
/// index `n * k + j`.
pub fn ecc_node_var(k: u32, v: usize, color: u32) -> usize {
    v * k as usize + (color as usize - 1)
}

pub fn ecc_edge_var(h: &EdgeColoredHypergraph, j: usize) -> usize {
    h.num_nodes() * h.num_colors() as usize + j
}

/// min sum w_e x_e subject to sum_i x_v^i = k - 1 and x_v^{l(e)} <= x_e.
pub fn build_ecc_lp(h: &EdgeColoredHypergraph) -> LinearProgram {
    let k = h.num_colors();
    let mut lp = LinearProgram::new(Sense::Minimize);
    for v in 0..h.num_nodes() {
        for i in 1..=k {
            lp.add_variable(format!("xn_{v}_{i}"), 0.0, 1.0, 0.0);
        }
    }
    for (j, e) in h.edges().iter().enumerate() {
        lp.add_variable(format!("xe_{j}"), 0.0, 1.0, e.weight());
    }
    for v in 0..h.num_nodes() {
        let coeffs = (1..=k).map(|i| (ecc_node_var(k, v, i), 1.0)).collect();
        lp.add_constraint(format!("node_{v}"), coeffs, Relation::Eq, (k - 1) as f64);
    }
    for (j, e) in h.edges().iter().enumerate() {
        let xe = ecc_edge_var(h, j);
        for &v in e.members() {
            lp.add_constraint(
                format!("edge_{j}_{v}"),
                vec![(ecc_node_var(k, v, e.color()), 1.0), (xe, -1.0)],
                Relation::Le,
                0.0,
            );
        }
    }
    lp
}

/// Fractional solution of the MinECC relaxation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EccLpSolution {
    num_colors: u32,
    /// Row-major `|V| x k` matrix of `x_v^i`.
    x_node: Vec<f64>,
    x_edge: Vec<f64>,
    pub value: f64,
}

impl EccLpSolution {
    /// Wraps raw values without checking them.
    pub fn from_parts(
        h: &EdgeColoredHypergraph,
        x_node: Vec<f64>,
        x_edge: Vec<f64>,
    ) -> Result<Self> {
        let k = h.num_colors() as usize;
        if x_node.len() != h.num_nodes() * k || x_edge.len() != h.num_edges() {
            return Err(EccError::DimensionMismatch(format!(
                "expected {} node and {} edge values, got {} and {}",
                h.num_nodes() * k,
                h.num_edges(),
                x_node.len(),
                x_edge.len()
            )));
        }
        let value = h
            .edges()
            .iter()
            .zip(&x_edge)
            .map(|(e, x)| e.weight() * x)
            .sum();
        Ok(EccLpSolution {
            num_colors: h.num_colors(),
            x_node,
            x_edge,
            value,
        })
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn num_nodes(&self) -> usize {
        self.x_node.len() / self.num_colors as usize
    }

    /// `x_v^i`, colors 1-based.
    pub fn node(&self, v: usize, color: u32) -> f64 {
        self.x_node[v * self.num_colors as usize + color as usize - 1]
    }

    /// Distances of `v` to colors `1..=k`.
    pub fn node_row(&self, v: usize) -> &[f64] {
        let k = self.num_colors as usize;
        &self.x_node[v * k..(v + 1) * k]
    }

    pub fn edge(&self, j: usize) -> f64 {
        self.x_edge[j]
    }

    pub fn edge_values(&self) -> &[f64] {
        &self.x_edge
    }

    pub fn set_edge(&mut self, j: usize, value: f64) {
        self.x_edge[j] = value;
    }

    /// Checks the relaxation's constraints within `tol`.
    pub fn check_feasible(&self, h: &EdgeColoredHypergraph, tol: f64) -> Result<()> {
        if self.num_colors != h.num_colors()
            || self.num_nodes() != h.num_nodes()
            || self.x_edge.len() != h.num_edges()
        {
            return Err(EccError::DimensionMismatch(
                "solution does not match the instance".into(),
            ));
        }
        let k = self.num_colors as f64;
        let in_box = |x: f64| (-tol..=1.0 + tol).contains(&x);
        for v in 0..self.num_nodes() {
            let row = self.node_row(v);
            if let Some(x) = row.iter().find(|&&x| !in_box(x)) {
                return Err(EccError::InfeasibleSolution(format!(
                    "x at node {v} is {x}, outside [0, 1]"
                )));
            }
            let s: f64 = row.iter().sum();
            if (s - (k - 1.0)).abs() > tol {
                return Err(EccError::InfeasibleSolution(format!(
                    "distances at node {v} sum to {s}, expected {}",
                    k - 1.0
                )));
            }
        }
        for (j, e) in h.edges().iter().enumerate() {
            let xe = self.x_edge[j];
            if !in_box(xe) {
                return Err(EccError::InfeasibleSolution(format!(
                    "x_e at edge {j} is {xe}, outside [0, 1]"
                )));
            }
            for &v in e.members() {
                if self.node(v, e.color()) > xe + tol {
                    return Err(EccError::InfeasibleSolution(format!(
                        "edge {j}: x_e = {xe} below node {v} distance {}",
                        self.node(v, e.color())
                    )));
                }
            }
        }
        Ok(())
    }
}

fn snap(x: f64) -> f64 {
    if x.abs() <= SNAP_TOL {
        0.0
    } else if (x - 1.0).abs() <= SNAP_TOL {
        1.0
    } else {
        x
    }
}

/// Builds a solution from a primal vector ordered like [`build_ecc_lp`]:
/// values are snapped and each `x_e` is tightened to `max_{v in e} x_v^c`.
pub fn ecc_solution_from_primal(
    h: &EdgeColoredHypergraph,
    primal: &[f64],
) -> Result<EccLpSolution> {
    let nk = h.num_nodes() * h.num_colors() as usize;
    if primal.len() != nk + h.num_edges() {
        return Err(EccError::DimensionMismatch(format!(
            "primal has {} values, the LP has {}",
            primal.len(),
            nk + h.num_edges()
        )));
    }
    let x_node: Vec<f64> = primal[..nk].iter().map(|&x| snap(x)).collect();
    let k = h.num_colors();
    let x_edge = h
        .edges()
        .iter()
        .map(|e| {
            e.members()
                .iter()
                .map(|&v| x_node[ecc_node_var(k, v, e.color())])
                .fold(0.0, f64::max)
        })
        .collect();
    let sol = EccLpSolution::from_parts(h, x_node, x_edge)?;
    sol.check_feasible(h, 1e-6)?;
    Ok(sol)
}

pub fn extract_ecc_solution(h: &EdgeColoredHypergraph, result: &LpResult) -> Result<EccLpSolution> {
    if !result.is_optimal() {
        return Err(EccError::NotOptimal(result.status.to_string()));
    }
    ecc_solution_from_primal(h, &result.primal)
}

/// Builds and solves the MinECC relaxation with the reference simplex.
pub fn solve_ecc_lp(h: &EdgeColoredHypergraph) -> Result<EccLpSolution> {
    let lp = build_ecc_lp(h);
    let r = solve_with(&lp, &SolverOptions::default());
    extract_ecc_solution(h, &r)
}

/// Relaxation of node-weighted multiway cut over the reduced graph of `h`.
pub fn build_nodemc_lp(h: &EdgeColoredHypergraph) -> LinearProgram {
    nodemc_lp_from_reduction(&ecc_to_node_mc(h))
}

/// `y_u^i` for every graph node and color, in `[0, 1]`; `d_u` for each
/// deletable node. For every graph edge `(u, v)` and color `i` both
/// `y_v^i <= y_u^i + d_v` and `y_u^i <= y_v^i + d_u`. Terminal distances are
/// fixed through their bounds. Undeletable nodes carry no `d` variable.
pub fn nodemc_lp_from_reduction(r: &NodeMcReduction) -> LinearProgram {
    let g = &r.graph;
    let k = r.num_colors;
    let ku = k as usize;
    let mut lp = LinearProgram::new(Sense::Minimize);
    let mut terminal_color = vec![0u32; g.num_nodes()];
    for &(t, c) in g.terminals() {
        terminal_color[t] = c;
    }
    for u in 0..g.num_nodes() {
        for i in 1..=k {
            let (lo, hi) = match terminal_color[u] {
                0 => (0.0, 1.0),
                c if c == i => (0.0, 0.0),
                _ => (1.0, 1.0),
            };
            lp.add_variable(format!("y_{u}_{i}"), lo, hi, 0.0);
        }
    }
    let offset = r.num_colors as usize + r.num_original;
    let mut d_var = vec![None; g.num_nodes()];
    for u in 0..g.num_nodes() {
        if !g.is_undeletable(u) {
            let label = if u >= offset { u - offset } else { u };
            d_var[u] = Some(lp.add_variable(format!("d_{label}"), 0.0, f64::INFINITY, g.weight(u)));
        }
    }
    let y = |u: usize, i: u32| u * ku + i as usize - 1;
    for &(a, b) in g.edges() {
        for (from, to) in [(a, b), (b, a)] {
            for i in 1..=k {
                let mut coeffs = vec![(y(to, i), 1.0), (y(from, i), -1.0)];
                if let Some(d) = d_var[to] {
                    coeffs.push((d, -1.0));
                }
                lp.add_constraint(format!("path_{from}_{to}_{i}"), coeffs, Relation::Le, 0.0);
            }
        }
    }
    lp
}

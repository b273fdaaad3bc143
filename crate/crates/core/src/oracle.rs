//! Exact branch-and-bound solvers for small instances.
//!
//! Both search trees count every visited state against a budget. When the
//! budget runs out the call fails with [`EccError::CapExceeded`] instead of
//! returning a value that was never proven optimal.

use serde::Serialize;

use crate::combinatorial::{hybrid, majority_vote};
use crate::error::{EccError, Result};
use crate::hypergraph::{build_incidence, objective_cost, EdgeColoredHypergraph, NodeColoring};
use crate::reductions::WeightedGraph;

pub const DEFAULT_ORACLE_CAP: u64 = 10_000_000;

/// Search budget from `ECC_ORACLE_CAP`, or the default.
pub fn oracle_cap_from_env() -> u64 {
    std::env::var("ECC_ORACLE_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Witness {
    Coloring(NodeColoring),
    Cover(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub value: f64,
    pub witness: Witness,
    /// Search states visited.
    pub explored: u64,
    pub cap: u64,
}

impl OracleResult {
    pub fn coloring(&self) -> Option<&NodeColoring> {
        match &self.witness {
            Witness::Coloring(y) => Some(y),
            Witness::Cover(_) => None,
        }
    }

    pub fn cover(&self) -> Option<&[usize]> {
        match &self.witness {
            Witness::Cover(c) => Some(c),
            Witness::Coloring(_) => None,
        }
    }
}

struct EccSearch<'a> {
    h: &'a EdgeColoredHypergraph,
    order: Vec<usize>,
    candidates: Vec<Vec<u32>>,
    incident: Vec<Vec<usize>>,
    broken: Vec<bool>,
    assign: Vec<u32>,
    best: f64,
    best_assign: Vec<u32>,
    explored: u64,
    cap: u64,
}

impl EccSearch<'_> {
    fn go(&mut self, depth: usize, cost: f64) -> Result<()> {
        self.explored += 1;
        if self.explored > self.cap {
            return Err(EccError::CapExceeded { cap: self.cap });
        }
        if cost >= self.best {
            return Ok(());
        }
        if depth == self.order.len() {
            self.best = cost;
            self.best_assign.clone_from(&self.assign);
            return Ok(());
        }
        let v = self.order[depth];
        for ci in 0..self.candidates[v].len() {
            let c = self.candidates[v][ci];
            self.assign[v] = c;
            let mut newly = Vec::new();
            let mut added = 0.0;
            for &j in &self.incident[v] {
                let e = self.h.edge(j);
                if e.color() != c && !self.broken[j] {
                    self.broken[j] = true;
                    newly.push(j);
                    added += e.weight();
                }
            }
            let r = self.go(depth + 1, cost + added);
            for j in newly {
                self.broken[j] = false;
            }
            r?;
        }
        Ok(())
    }
}

/// Exact minimum of the clustering objective.
///
/// Only colors of incident edges are tried at each node (any other color
/// breaks every incident edge), isolated nodes are fixed to color 1, and the
/// better of MajorityVote and Hybrid seeds the incumbent.
pub fn bruteforce_ecc(h: &EdgeColoredHypergraph, cap: u64) -> Result<OracleResult> {
    let inc = build_incidence(h);
    let n = h.num_nodes();
    let mut candidates = vec![Vec::new(); n];
    let mut incident = vec![Vec::new(); n];
    for v in 0..n {
        let list = inc.edges_of(v);
        incident[v] = list.to_vec();
        let mut cs: Vec<u32> = list.iter().map(|&j| h.edge(j).color()).collect();
        cs.dedup();
        candidates[v] = cs;
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| inc.degree(v) > 0).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(inc.degree(v)));

    let mut seed = majority_vote(h);
    let mut seed_cost = objective_cost(h, &seed)?.total_cost;
    let hy = hybrid(h).coloring;
    let hy_cost = objective_cost(h, &hy)?.total_cost;
    if hy_cost < seed_cost {
        seed = hy;
        seed_cost = hy_cost;
    }
    let mut seed = seed.into_inner();
    for v in 0..n {
        if inc.degree(v) == 0 {
            seed[v] = 1;
        }
    }

    let mut s = EccSearch {
        h,
        order,
        candidates,
        incident,
        broken: vec![false; h.num_edges()],
        assign: vec![1; n],
        best: seed_cost,
        best_assign: seed,
        explored: 0,
        cap,
    };
    s.go(0, 0.0)?;
    let y = NodeColoring::new(s.best_assign, h.num_colors())?;
    Ok(OracleResult {
        value: s.best,
        witness: Witness::Coloring(y),
        explored: s.explored,
        cap,
    })
}

struct VcSearch<'a> {
    g: &'a WeightedGraph,
    order: Vec<usize>,
    adj: Vec<Vec<usize>>,
    /// 0 undecided, 1 in cover, 2 excluded
    state: Vec<u8>,
    best: f64,
    best_state: Vec<u8>,
    explored: u64,
    cap: u64,
}

impl VcSearch<'_> {
    fn go(&mut self, depth: usize, cost: f64) -> Result<()> {
        self.explored += 1;
        if self.explored > self.cap {
            return Err(EccError::CapExceeded { cap: self.cap });
        }
        if cost >= self.best {
            return Ok(());
        }
        if depth == self.order.len() {
            self.best = cost;
            self.best_state.clone_from(&self.state);
            return Ok(());
        }
        let u = self.order[depth];
        if self.state[u] != 0 {
            return self.go(depth + 1, cost);
        }
        // exclude u: every neighbor joins the cover
        if self.adj[u].iter().all(|&w| self.state[w] != 2) {
            self.state[u] = 2;
            let mut forced = Vec::new();
            let mut added = 0.0;
            for &w in &self.adj[u] {
                if self.state[w] == 0 {
                    self.state[w] = 1;
                    forced.push(w);
                    added += self.g.weight(w);
                }
            }
            let r = self.go(depth + 1, cost + added);
            for w in forced {
                self.state[w] = 0;
            }
            self.state[u] = 0;
            r?;
        }
        if !self.g.is_undeletable(u) {
            self.state[u] = 1;
            let r = self.go(depth + 1, cost + self.g.weight(u));
            self.state[u] = 0;
            r?;
        }
        Ok(())
    }
}

/// Exact minimum weight vertex cover. Undeletable nodes never join the
/// cover; degree-0 nodes are skipped.
pub fn bruteforce_vc(g: &WeightedGraph, cap: u64) -> Result<OracleResult> {
    let n = g.num_nodes();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        if g.is_undeletable(u) && g.is_undeletable(v) {
            return Err(EccError::InvalidArgument(format!(
                "edge ({u}, {v}) joins two undeletable nodes; no finite cover exists"
            )));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| !adj[v].is_empty()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].len()));

    // all deletable non-isolated nodes form a cover
    let mut seed = vec![0u8; n];
    let mut seed_cost = 0.0;
    for &v in &order {
        if g.is_undeletable(v) {
            seed[v] = 2;
        } else {
            seed[v] = 1;
            seed_cost += g.weight(v);
        }
    }
    let mut s = VcSearch {
        g,
        order,
        adj,
        state: vec![0; n],
        best: seed_cost,
        best_state: seed,
        explored: 0,
        cap,
    };
    s.go(0, 0.0)?;
    let cover: Vec<usize> = (0..n).filter(|&v| s.best_state[v] == 1).collect();
    Ok(OracleResult {
        value: s.best,
        witness: Witness::Cover(cover),
        explored: s.explored,
        cap,
    })
}

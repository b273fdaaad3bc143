//! Linear-time combinatorial algorithms: MajorityVote, PittColoring,
//! MatchColoring and Hybrid, with their lower bounds.
//!
//! The two cover algorithms never build the conflict graph. For each node
//! they walk its color-sorted incident edge list with a front and a back
//! cursor; the edges under the cursors form a bad pair exactly when their
//! colors differ.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{EccError, Result};
use crate::hypergraph::{
    build_incidence, find_surviving_bad_pair, objective_cost, ColorSortedIncidence,
    EdgeColoredHypergraph, NodeColoring,
};

/// Set of deleted edge indices with its total weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeletionSet {
    mask: Vec<bool>,
    count: usize,
    weight: f64,
}

impl DeletionSet {
    pub fn new(num_edges: usize) -> Self {
        DeletionSet {
            mask: vec![false; num_edges],
            count: 0,
            weight: 0.0,
        }
    }

    /// Every edge of `h` deleted.
    pub fn all(h: &EdgeColoredHypergraph) -> Self {
        let mut d = DeletionSet::new(h.num_edges());
        for (j, e) in h.edges().iter().enumerate() {
            d.insert(j, e.weight());
        }
        d
    }

    /// Marks edge `j`; a repeated insert changes nothing.
    pub fn insert(&mut self, j: usize, weight: f64) {
        if !self.mask[j] {
            self.mask[j] = true;
            self.count += 1;
            self.weight += weight;
        }
    }

    pub fn contains(&self, j: usize) -> bool {
        self.mask[j]
    }

    /// Number of edges the set ranges over.
    pub fn len(&self) -> usize {
        self.mask.len()
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Number of deleted edges.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn as_mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&j| self.mask[j]).collect()
    }
}

/// Order in which the cover algorithms visit nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VisitOrder {
    Ascending,
    /// Uniform permutation drawn from the seed.
    Shuffled(u64),
}

fn visit_order(n: usize, order: VisitOrder) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    if let VisitOrder::Shuffled(seed) = order {
        // distinct stream from the sampling rng
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        v.shuffle(&mut rng);
    }
    v
}

/// Weight-summed majority color per node; ties go to the lowest color and
/// isolated nodes get color 1.
pub fn majority_vote(h: &EdgeColoredHypergraph) -> NodeColoring {
    majority_vote_with(h, &build_incidence(h))
}

pub fn majority_vote_with(h: &EdgeColoredHypergraph, inc: &ColorSortedIncidence) -> NodeColoring {
    let mut y = vec![1u32; h.num_nodes()];
    for (v, slot) in y.iter_mut().enumerate() {
        let list = inc.edges_of(v);
        let cols = inc.colors_of(v);
        let mut best_color = 1;
        let mut best = f64::NEG_INFINITY;
        let mut i = 0;
        while i < list.len() {
            let c = cols[i];
            let mut w = 0.0;
            while i < list.len() && cols[i] == c {
                w += h.edge(list[i]).weight();
                i += 1;
            }
            // runs arrive in increasing color order, so strict > keeps the lowest on ties
            if w > best {
                best = w;
                best_color = c;
            }
        }
        *slot = best_color;
    }
    NodeColoring::from_vec_unchecked(y)
}

/// `(sum_e w_e * |{v in e : y[v] != l(e)}|) / r`, a lower bound on the
/// optimum when `y` is the majority vote coloring.
pub fn mv_lower_bound(h: &EdgeColoredHypergraph, y_mv: &NodeColoring) -> f64 {
    if h.rank() == 0 {
        return 0.0;
    }
    let total: f64 = h
        .edges()
        .iter()
        .map(|e| {
            let miss = e
                .members()
                .iter()
                .filter(|&&v| y_mv.color(v) != e.color())
                .count();
            e.weight() * miss as f64
        })
        .sum();
    total / h.rank() as f64
}

/// Colors members of surviving edges with their edge color and everything
/// else with color 1. Also returns which nodes were covered.
fn color_survivors(h: &EdgeColoredHypergraph, d: &DeletionSet) -> (Vec<u32>, Vec<bool>) {
    let mut y = vec![1u32; h.num_nodes()];
    let mut covered = vec![false; h.num_nodes()];
    for (j, e) in h.edges().iter().enumerate() {
        if d.contains(j) {
            continue;
        }
        for &v in e.members() {
            y[v] = e.color();
            covered[v] = true;
        }
    }
    (y, covered)
}

/// Coloring that satisfies every edge left after deleting `d`.
pub fn coloring_from_deletions(h: &EdgeColoredHypergraph, d: &DeletionSet) -> Result<NodeColoring> {
    if d.len() != h.num_edges() {
        return Err(EccError::DimensionMismatch(format!(
            "deletion set over {} edges, instance has {}",
            d.len(),
            h.num_edges()
        )));
    }
    if let Some((e, f)) = find_surviving_bad_pair(h, d.as_mask()) {
        return Err(EccError::BadPairRemains(e, f));
    }
    Ok(NodeColoring::from_vec_unchecked(color_survivors(h, d).0))
}

/// Outcome of a cover-based run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverOutcome {
    pub deletions: DeletionSet,
    pub coloring: NodeColoring,
    /// Cursor moves plus deletions, for the linear-time check.
    pub ops: u64,
}

/// Pitt's randomized vertex cover run implicitly on the bad pairs of `h`,
/// visiting nodes in ascending order.
pub fn pitt_coloring(h: &EdgeColoredHypergraph, seed: u64) -> (DeletionSet, NodeColoring) {
    let out = pitt_coloring_ordered(h, seed, VisitOrder::Ascending);
    (out.deletions, out.coloring)
}

pub fn pitt_coloring_ordered(
    h: &EdgeColoredHypergraph,
    seed: u64,
    order: VisitOrder,
) -> CoverOutcome {
    let inc = build_incidence(h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = DeletionSet::new(h.num_edges());
    let mut ops = 0u64;
    for v in visit_order(h.num_nodes(), order) {
        let list = inc.edges_of(v);
        let cols = inc.colors_of(v);
        if list.len() < 2 {
            continue;
        }
        let (mut f, mut b) = (0usize, list.len() - 1);
        while b > f && d.contains(list[b]) {
            b -= 1;
            ops += 1;
        }
        while b > f && d.contains(list[f]) {
            f += 1;
            ops += 1;
        }
        while cols[f] != cols[b] {
            let (ef, eb) = (list[f], list[b]);
            let (wf, wb) = (h.edge(ef).weight(), h.edge(eb).weight());
            ops += 1;
            if wf + wb <= 0.0 {
                d.insert(ef, wf);
                d.insert(eb, wb);
            } else if rng.gen::<f64>() < wf / (wf + wb) {
                d.insert(eb, wb);
            } else {
                d.insert(ef, wf);
            }
            while b > f && d.contains(list[b]) {
                b -= 1;
                ops += 1;
            }
            while b > f && d.contains(list[f]) {
                f += 1;
                ops += 1;
            }
        }
    }
    let coloring = NodeColoring::from_vec_unchecked(color_survivors(h, &d).0);
    CoverOutcome {
        deletions: d,
        coloring,
        ops,
    }
}

/// Outcome of MatchColoring.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchOutcome {
    pub deletions: DeletionSet,
    pub coloring: NodeColoring,
    /// Number of disjoint bad pairs found.
    pub pairs: usize,
    /// Sum over matched pairs of the lighter weight; the pair count for
    /// unit weights.
    pub matching_bound: f64,
    /// Whether the factor-2 guarantee applies (uniform weights).
    pub guarantee_applies: bool,
    pub ops: u64,
}

/// Deletes both edges of a maximal set of edge-disjoint bad pairs.
pub fn match_coloring(h: &EdgeColoredHypergraph) -> MatchOutcome {
    match_coloring_ordered(h, VisitOrder::Ascending)
}

pub fn match_coloring_ordered(h: &EdgeColoredHypergraph, order: VisitOrder) -> MatchOutcome {
    let inc = build_incidence(h);
    let mut d = DeletionSet::new(h.num_edges());
    let mut pairs = 0usize;
    let mut bound = 0.0;
    let mut ops = 0u64;
    for v in visit_order(h.num_nodes(), order) {
        let list = inc.edges_of(v);
        let cols = inc.colors_of(v);
        if list.len() < 2 {
            continue;
        }
        let (mut f, mut b) = (0usize, list.len() - 1);
        loop {
            while b > f && d.contains(list[b]) {
                b -= 1;
                ops += 1;
            }
            while b > f && d.contains(list[f]) {
                f += 1;
                ops += 1;
            }
            if cols[f] == cols[b] {
                break;
            }
            let (ef, eb) = (list[f], list[b]);
            let (wf, wb) = (h.edge(ef).weight(), h.edge(eb).weight());
            d.insert(ef, wf);
            d.insert(eb, wb);
            pairs += 1;
            bound += wf.min(wb);
            ops += 1;
        }
    }
    let coloring = NodeColoring::from_vec_unchecked(color_survivors(h, &d).0);
    MatchOutcome {
        deletions: d,
        coloring,
        pairs,
        matching_bound: bound,
        guarantee_applies: h.has_uniform_weights(),
        ops,
    }
}

/// Outcome of Hybrid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HybridOutcome {
    pub coloring: NodeColoring,
    pub matching: MatchOutcome,
    /// True when recoloring isolated nodes by majority vote cost more than
    /// the plain MatchColoring answer, which was returned instead.
    pub fell_back: bool,
}

/// MatchColoring, then the majority vote color for every node that no
/// surviving edge covers.
pub fn hybrid(h: &EdgeColoredHypergraph) -> HybridOutcome {
    hybrid_ordered(h, VisitOrder::Ascending)
}

pub fn hybrid_ordered(h: &EdgeColoredHypergraph, order: VisitOrder) -> HybridOutcome {
    let matching = match_coloring_ordered(h, order);
    let mv = majority_vote(h);
    let (mut y, covered) = color_survivors(h, &matching.deletions);
    for v in 0..h.num_nodes() {
        if !covered[v] {
            y[v] = mv.color(v);
        }
    }
    let y = NodeColoring::from_vec_unchecked(y);
    let cost = objective_cost(h, &y)
        .map(|r| r.total_cost)
        .unwrap_or(f64::INFINITY);
    let match_cost = objective_cost(h, &matching.coloring)
        .map(|r| r.total_cost)
        .unwrap_or(f64::INFINITY);
    if cost > match_cost {
        return HybridOutcome {
            coloring: matching.coloring.clone(),
            matching,
            fell_back: true,
        };
    }
    HybridOutcome {
        coloring: y,
        matching,
        fell_back: false,
    }
}

/// Instance-specific lower bounds on the optimum.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct LowerBoundBundle {
    pub lp_bound: Option<f64>,
    pub matching_bound: Option<f64>,
    pub mv_bound: Option<f64>,
}

impl LowerBoundBundle {
    /// Largest available bound.
    pub fn best(&self) -> Option<f64> {
        [self.lp_bound, self.matching_bound, self.mv_bound]
            .into_iter()
            .flatten()
            .fold(None, |acc, b| Some(acc.map_or(b, |a: f64| a.max(b))))
    }
}

/// `cost / best bound`; 1 for zero cost and infinity when no positive bound
/// is available.
pub fn a_posteriori_ratio(cost: f64, bounds: &LowerBoundBundle) -> f64 {
    if cost <= 0.0 {
        return 1.0;
    }
    match bounds.best() {
        Some(b) if b > 0.0 => cost / b,
        _ => f64::INFINITY,
    }
}

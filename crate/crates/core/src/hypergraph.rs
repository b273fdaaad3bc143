//! Edge-colored hypergraphs, node colorings and the clustering objective.
//!
//! Nodes are indexed from 0, colors from 1. An edge is a *mistake* under a
//! coloring when at least one of its members is colored differently from the
//! edge; the objective is the total weight of mistake edges.

use serde::{Deserialize, Serialize};

use crate::error::{EccError, Result};

/// A weighted, colored hyperedge. Members are kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    members: Vec<usize>,
    color: u32,
    weight: f64,
}

impl Edge {
    pub fn new(mut members: Vec<usize>, color: u32, weight: f64) -> Self {
        members.sort_unstable();
        members.dedup();
        Edge {
            members,
            color,
            weight,
        }
    }

    pub fn unit(members: Vec<usize>, color: u32) -> Self {
        Edge::new(members, color, 1.0)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn color(&self) -> u32 {
        self.color
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// One broken invariant found by [`EdgeColoredHypergraph::validate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    EmptyEdge { edge: usize },
    MemberOutOfRange { edge: usize, member: usize },
    ColorOutOfRange { edge: usize, color: u32 },
    NegativeWeight { edge: usize, weight: f64 },
    NoColors,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::EmptyEdge { edge } => write!(f, "edge {edge} is empty"),
            Violation::MemberOutOfRange { edge, member } => {
                write!(f, "edge {edge} has out-of-range member {member}")
            }
            Violation::ColorOutOfRange { edge, color } => {
                write!(f, "edge {edge} has out-of-range color {color}")
            }
            Violation::NegativeWeight { edge, weight } => {
                write!(f, "edge {edge} has negative weight {weight}")
            }
            Violation::NoColors => write!(f, "number of colors must be at least 1"),
        }
    }
}

/// An instance `(V, E, C, l)` with edge weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeColoredHypergraph {
    num_nodes: usize,
    num_colors: u32,
    edges: Vec<Edge>,
    rank: usize,
}

impl EdgeColoredHypergraph {
    /// Builds and validates an instance.
    pub fn new(num_nodes: usize, num_colors: u32, edges: Vec<Edge>) -> Result<Self> {
        let h = Self::new_unchecked(num_nodes, num_colors, edges);
        let violations = h.validate();
        if let Some(v) = violations.first() {
            return Err(EccError::InvalidHypergraph(v.to_string()));
        }
        Ok(h)
    }

    /// Builds an instance without checking invariants; use [`Self::validate`]
    /// to inspect it.
    pub fn new_unchecked(num_nodes: usize, num_colors: u32, edges: Vec<Edge>) -> Self {
        let rank = edges.iter().map(Edge::len).max().unwrap_or(0);
        EdgeColoredHypergraph {
            num_nodes,
            num_colors,
            edges,
            rank,
        }
    }

    /// Lists every violated invariant. Never fails.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.num_colors == 0 {
            out.push(Violation::NoColors);
        }
        for (j, e) in self.edges.iter().enumerate() {
            if e.is_empty() {
                out.push(Violation::EmptyEdge { edge: j });
            }
            for &v in e.members() {
                if v >= self.num_nodes {
                    out.push(Violation::MemberOutOfRange { edge: j, member: v });
                }
            }
            if e.color == 0 || e.color > self.num_colors {
                out.push(Violation::ColorOutOfRange {
                    edge: j,
                    color: e.color,
                });
            }
            if !(e.weight >= 0.0) {
                out.push(Violation::NegativeWeight {
                    edge: j,
                    weight: e.weight,
                });
            }
        }
        out
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    /// Maximum edge size.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, j: usize) -> &Edge {
        &self.edges[j]
    }

    /// Total incidence count, the size of the instance.
    pub fn total_incidence(&self) -> usize {
        self.edges.iter().map(Edge::len).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(Edge::weight).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_nodes];
        for e in &self.edges {
            for &v in e.members() {
                deg[v] += 1;
            }
        }
        deg
    }

    /// True when every edge has the same weight.
    pub fn has_uniform_weights(&self) -> bool {
        match self.edges.first() {
            None => true,
            Some(first) => self.edges.iter().all(|e| e.weight == first.weight),
        }
    }

    /// Copy of the instance with edges reordered by `order[new] = old`.
    pub fn permute_edges(&self, order: &[usize]) -> Self {
        let edges = order.iter().map(|&j| self.edges[j].clone()).collect();
        Self::new_unchecked(self.num_nodes, self.num_colors, edges)
    }
}

/// Assignment of a color in `[1, k]` to every node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodeColoring(Vec<u32>);

impl NodeColoring {
    pub fn new(colors: Vec<u32>, num_colors: u32) -> Result<Self> {
        if let Some((index, &color)) = colors
            .iter()
            .enumerate()
            .find(|(_, &c)| c == 0 || c > num_colors)
        {
            return Err(EccError::ColorOutOfRange {
                index,
                color,
                num_colors,
            });
        }
        Ok(NodeColoring(colors))
    }

    /// Every node gets `color`.
    pub fn uniform(num_nodes: usize, color: u32) -> Self {
        NodeColoring(vec![color; num_nodes])
    }

    pub(crate) fn from_vec_unchecked(colors: Vec<u32>) -> Self {
        NodeColoring(colors)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn color(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    /// Checks length and color range against `h`.
    pub fn check_for(&self, h: &EdgeColoredHypergraph) -> Result<()> {
        if self.0.len() != h.num_nodes() {
            return Err(EccError::LengthMismatch {
                expected: h.num_nodes(),
                found: self.0.len(),
            });
        }
        NodeColoring::new(self.0.clone(), h.num_colors()).map(|_| ())
    }
}

/// Evaluation of a coloring against an instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostReport {
    pub total_cost: f64,
    pub mistake_edges: Vec<usize>,
    /// Unweighted fraction of edges that are not mistakes.
    pub edge_satisfaction: f64,
    pub accuracy: Option<f64>,
}

/// True when `y` makes a mistake at `e`.
pub fn is_mistake(e: &Edge, y: &NodeColoring) -> bool {
    e.members().iter().any(|&v| y.color(v) != e.color())
}

/// Total weight of mistake edges, with the mistake set.
pub fn objective_cost(h: &EdgeColoredHypergraph, y: &NodeColoring) -> Result<CostReport> {
    y.check_for(h)?;
    let mut total_cost = 0.0;
    let mut mistake_edges = Vec::new();
    for (j, e) in h.edges().iter().enumerate() {
        if is_mistake(e, y) {
            total_cost += e.weight();
            mistake_edges.push(j);
        }
    }
    let edge_satisfaction = if h.num_edges() == 0 {
        1.0
    } else {
        1.0 - mistake_edges.len() as f64 / h.num_edges() as f64
    };
    Ok(CostReport {
        total_cost,
        mistake_edges,
        edge_satisfaction,
        accuracy: None,
    })
}

/// Fraction of nodes whose color agrees with `truth`.
pub fn accuracy(y: &NodeColoring, truth: &NodeColoring) -> Result<f64> {
    if y.len() != truth.len() {
        return Err(EccError::LengthMismatch {
            expected: truth.len(),
            found: y.len(),
        });
    }
    if y.is_empty() {
        return Ok(1.0);
    }
    let agree = y
        .as_slice()
        .iter()
        .zip(truth.as_slice())
        .filter(|(a, b)| a == b)
        .count();
    Ok(agree as f64 / y.len() as f64)
}

/// Per-node incident edge lists `L_E(v)`, ordered by edge color and then by
/// edge index, stored in compressed rows. Each entry's color is stored
/// alongside it.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorSortedIncidence {
    offsets: Vec<usize>,
    entries: Vec<usize>,
    colors: Vec<u32>,
}

impl ColorSortedIncidence {
    pub fn build(h: &EdgeColoredHypergraph) -> Self {
        let k = h.num_colors() as usize;
        // counting sort of edge indices by color (stable in index)
        let mut start = vec![0usize; k + 2];
        for e in h.edges() {
            start[e.color() as usize + 1] += 1;
        }
        for c in 1..start.len() {
            start[c] += start[c - 1];
        }
        let mut by_color = vec![0usize; h.num_edges()];
        for (j, e) in h.edges().iter().enumerate() {
            let c = e.color() as usize;
            by_color[start[c]] = j;
            start[c] += 1;
        }

        let n = h.num_nodes();
        let mut offsets = vec![0usize; n + 1];
        for e in h.edges() {
            for &v in e.members() {
                offsets[v + 1] += 1;
            }
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut cursor = offsets[..n].to_vec();
        let mut entries = vec![0usize; offsets[n]];
        let mut colors = vec![0u32; offsets[n]];
        for &j in &by_color {
            let e = h.edge(j);
            for &v in e.members() {
                entries[cursor[v]] = j;
                colors[cursor[v]] = e.color();
                cursor[v] += 1;
            }
        }
        ColorSortedIncidence {
            offsets,
            entries,
            colors,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edges_of(&self, v: usize) -> &[usize] {
        &self.entries[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Colors of the entries of [`Self::edges_of`].
    pub fn colors_of(&self, v: usize) -> &[u32] {
        &self.colors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Total stored entries, equal to the incidence count of the instance.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Builds the color-sorted incidence lists in `O(sum |e| + |E| + k)`.
pub fn build_incidence(h: &EdgeColoredHypergraph) -> ColorSortedIncidence {
    ColorSortedIncidence::build(h)
}

/// Finds one bad edge pair among edges not marked in `deleted`, scanning each
/// node's incident edges once.
pub fn find_surviving_bad_pair(
    h: &EdgeColoredHypergraph,
    deleted: &[bool],
) -> Option<(usize, usize)> {
    // first surviving edge seen at each node
    let mut seen: Vec<Option<usize>> = vec![None; h.num_nodes()];
    for (j, e) in h.edges().iter().enumerate() {
        if deleted[j] {
            continue;
        }
        for &v in e.members() {
            match seen[v] {
                None => seen[v] = Some(j),
                Some(i) if h.edge(i).color() != e.color() => return Some((i, j)),
                Some(_) => {}
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_edge() -> EdgeColoredHypergraph {
        EdgeColoredHypergraph::new(2, 1, vec![Edge::unit(vec![0, 1], 1)]).unwrap()
    }

    #[test]
    fn validate_reports_each_violation() {
        assert!(one_edge().validate().is_empty());

        let h = EdgeColoredHypergraph::new_unchecked(2, 1, vec![Edge::unit(vec![0, 2], 1)]);
        assert_eq!(
            h.validate(),
            vec![Violation::MemberOutOfRange { edge: 0, member: 2 }]
        );

        let h = EdgeColoredHypergraph::new_unchecked(2, 1, vec![Edge::unit(vec![0, 1], 0)]);
        assert_eq!(
            h.validate(),
            vec![Violation::ColorOutOfRange { edge: 0, color: 0 }]
        );

        let h = EdgeColoredHypergraph::new_unchecked(2, 1, vec![Edge::new(vec![], 1, -1.0)]);
        assert_eq!(h.validate().len(), 2);
        assert!(EdgeColoredHypergraph::new(2, 1, vec![Edge::unit(vec![], 1)]).is_err());
    }

    #[test]
    fn duplicate_members_are_merged() {
        let e = Edge::unit(vec![3, 1, 3, 1], 2);
        assert_eq!(e.members(), &[1, 3]);
    }

    #[test]
    fn cost_of_satisfying_coloring_is_zero() {
        let h = EdgeColoredHypergraph::new(2, 2, vec![Edge::unit(vec![0, 1], 2)]).unwrap();
        let y = NodeColoring::new(vec![2, 2], 2).unwrap();
        let report = objective_cost(&h, &y).unwrap();
        assert_eq!(report.total_cost, 0.0);
        assert_eq!(report.edge_satisfaction, 1.0);
        assert!(report.mistake_edges.is_empty());
    }

    #[test]
    fn cost_rejects_wrong_length() {
        let y = NodeColoring::new(vec![1, 1, 1], 1).unwrap();
        assert!(matches!(
            objective_cost(&one_edge(), &y),
            Err(EccError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn accuracy_cases() {
        let truth = NodeColoring::new(vec![1, 1, 1], 2).unwrap();
        assert_eq!(accuracy(&truth, &truth).unwrap(), 1.0);
        let all_wrong = NodeColoring::new(vec![2, 2, 2], 2).unwrap();
        assert_eq!(accuracy(&all_wrong, &truth).unwrap(), 0.0);
        let y = NodeColoring::new(vec![1, 2, 1], 2).unwrap();
        assert!((accuracy(&y, &truth).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let short = NodeColoring::new(vec![1], 2).unwrap();
        assert!(accuracy(&short, &truth).is_err());
    }

    #[test]
    fn incidence_is_color_sorted() {
        // node 0 sits in edge 2 (color 3) and edge 5 (color 1)
        let mut edges = Vec::new();
        for (j, c) in [2u32, 2, 3, 2, 2, 1].into_iter().enumerate() {
            let members = if j == 2 || j == 5 {
                vec![0, 1]
            } else {
                vec![1, 2]
            };
            edges.push(Edge::unit(members, c));
        }
        let h = EdgeColoredHypergraph::new(4, 3, edges).unwrap();
        let inc = build_incidence(&h);
        assert_eq!(inc.edges_of(0), &[5, 2]);
        assert!(inc.edges_of(3).is_empty());
        assert_eq!(inc.len(), h.total_incidence());
        for v in 0..h.num_nodes() {
            let colors: Vec<u32> = inc.edges_of(v).iter().map(|&j| h.edge(j).color()).collect();
            assert!(colors.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(inc.colors_of(v), &colors[..]);
        }
    }

    #[test]
    fn bad_pair_scan() {
        let h = EdgeColoredHypergraph::new(
            3,
            2,
            vec![Edge::unit(vec![0, 1], 1), Edge::unit(vec![1, 2], 2)],
        )
        .unwrap();
        assert_eq!(find_surviving_bad_pair(&h, &[false, false]), Some((0, 1)));
        assert_eq!(find_surviving_bad_pair(&h, &[true, false]), None);
    }
}

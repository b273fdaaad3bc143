//! Constructions between MinECC, vertex cover, node-weighted multiway cut and
//! hypergraph multiway cut.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::combinatorial::DeletionSet;
use crate::error::{EccError, Result};
use crate::hypergraph::{build_incidence, Edge, EdgeColoredHypergraph};

/// Undirected node-weighted graph, optionally with colored terminals.
/// Undeletable nodes stand in for infinite weight.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    weights: Vec<f64>,
    undeletable: Vec<bool>,
    edges: Vec<(usize, usize)>,
    terminals: Vec<(usize, u32)>,
}

impl WeightedGraph {
    pub fn new(weights: Vec<f64>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = weights.len();
        let g = WeightedGraph {
            undeletable: vec![false; n],
            weights,
            edges,
            terminals: Vec::new(),
        };
        g.check()?;
        Ok(g)
    }

    pub fn unit(num_nodes: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(vec![1.0; num_nodes], edges)
    }

    fn check(&self) -> Result<()> {
        let n = self.num_nodes();
        for &(u, v) in &self.edges {
            if u >= n || v >= n {
                return Err(EccError::InvalidArgument(format!(
                    "graph edge ({u}, {v}) has an endpoint outside [0, {n})"
                )));
            }
            if u == v {
                return Err(EccError::InvalidArgument(format!("self-loop at node {u}")));
            }
        }
        for (i, &w) in self.weights.iter().enumerate() {
            if !(w >= 0.0) {
                return Err(EccError::InvalidArgument(format!(
                    "node {i} has negative weight {w}"
                )));
            }
        }
        let mut seen = HashSet::new();
        for &(t, _) in &self.terminals {
            if t >= n || !seen.insert(t) {
                return Err(EccError::InvalidArgument(format!(
                    "terminal {t} is out of range or repeated"
                )));
            }
        }
        Ok(())
    }

    pub fn num_nodes(&self) -> usize {
        self.weights.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_undeletable(&self, v: usize) -> bool {
        self.undeletable[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn terminals(&self) -> &[(usize, u32)] {
        &self.terminals
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_nodes()];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Total weight of a node set.
    pub fn set_weight(&self, nodes: &[usize]) -> f64 {
        nodes.iter().map(|&v| self.weights[v]).sum()
    }

    /// First graph edge with neither endpoint in `cover`, if any.
    pub fn uncovered_edge(&self, cover: &[bool]) -> Option<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .find(|&(u, v)| !cover[u] && !cover[v])
    }

    /// Text form: `vc <n> <m>`, then `w <i> <weight|inf>`, `e <u> <v>` and
    /// `t <i> <color>` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vc {} {}", self.num_nodes(), self.num_edges());
        for v in 0..self.num_nodes() {
            if self.undeletable[v] {
                let _ = writeln!(out, "w {v} inf");
            } else {
                let _ = writeln!(out, "w {v} {}", self.weights[v]);
            }
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {u} {v}");
        }
        for &(t, c) in &self.terminals {
            let _ = writeln!(out, "t {t} {c}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let perr = |line: usize, message: String| EccError::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines
            .next()
            .ok_or_else(|| perr(1, "missing header".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "vc" {
            return Err(perr(hl, "expected 'vc <n> <m>'".into()));
        }
        let n: usize = toks[1]
            .parse()
            .map_err(|_| perr(hl, format!("bad node count '{}'", toks[1])))?;
        let m: usize = toks[2]
            .parse()
            .map_err(|_| perr(hl, format!("bad edge count '{}'", toks[2])))?;
        let mut weights = vec![1.0; n];
        let mut undeletable = vec![false; n];
        let mut edges = Vec::with_capacity(m);
        let mut terminals = Vec::new();
        let mut last = hl;
        for (ln, line) in lines {
            last = ln;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(perr(
                    ln,
                    format!("expected three tokens, found {}", toks.len()),
                ));
            }
            let idx = |s: &str| -> Result<usize> {
                let v: usize = s
                    .parse()
                    .map_err(|_| perr(ln, format!("bad index '{s}'")))?;
                if v >= n {
                    return Err(perr(ln, format!("node {v} outside [0, {n})")));
                }
                Ok(v)
            };
            match toks[0] {
                "w" => {
                    let v = idx(toks[1])?;
                    if toks[2] == "inf" {
                        undeletable[v] = true;
                        weights[v] = f64::INFINITY;
                    } else {
                        weights[v] = toks[2]
                            .parse()
                            .map_err(|_| perr(ln, format!("bad weight '{}'", toks[2])))?;
                    }
                }
                "e" => edges.push((idx(toks[1])?, idx(toks[2])?)),
                "t" => {
                    let v = idx(toks[1])?;
                    let c: u32 = toks[2]
                        .parse()
                        .map_err(|_| perr(ln, format!("bad color '{}'", toks[2])))?;
                    terminals.push((v, c));
                }
                other => return Err(perr(ln, format!("unknown record '{other}'"))),
            }
        }
        if edges.len() != m {
            return Err(perr(
                last,
                format!("header declares {m} edges, found {}", edges.len()),
            ));
        }
        let g = WeightedGraph {
            weights,
            undeletable,
            edges,
            terminals,
        };
        g.check().map_err(|e| perr(last, e.to_string()))?;
        Ok(g)
    }
}

/// Vertex cover instance built from a hypergraph: graph node `j` is
/// hyperedge `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct VcReduction {
    pub graph: WeightedGraph,
}

/// All bad edge pairs `(e, f)`, `e < f`, by a pairwise scan at each node.
pub fn bad_edge_pairs(h: &EdgeColoredHypergraph) -> Vec<(usize, usize)> {
    let inc = build_incidence(h);
    let mut pairs = HashSet::new();
    for v in 0..h.num_nodes() {
        let list = inc.edges_of(v);
        for (a, &e) in list.iter().enumerate() {
            for &f in &list[a + 1..] {
                if h.edge(e).color() != h.edge(f).color() {
                    pairs.insert((e.min(f), e.max(f)));
                }
            }
        }
    }
    let mut out: Vec<_> = pairs.into_iter().collect();
    out.sort_unstable();
    out
}

pub fn ecc_to_vertex_cover(h: &EdgeColoredHypergraph) -> VcReduction {
    let weights = h.edges().iter().map(Edge::weight).collect();
    let graph = WeightedGraph::new(weights, bad_edge_pairs(h)).expect("pairs are in range");
    VcReduction { graph }
}

/// Hypergraph built from a graph: node `v_{uv}` per graph edge, one
/// hyperedge per non-isolated graph node with its own color.
#[derive(Debug, Clone, PartialEq)]
pub struct EccFromVc {
    pub hypergraph: EdgeColoredHypergraph,
    /// Graph node behind each hyperedge.
    pub node_of_edge: Vec<usize>,
}

pub fn vertex_cover_to_ecc(g: &WeightedGraph) -> Result<EccFromVc> {
    if let Some(v) = (0..g.num_nodes()).find(|&v| g.is_undeletable(v)) {
        return Err(EccError::InvalidArgument(format!(
            "node {v} is undeletable; vertex cover weights must be finite"
        )));
    }
    let mut members = vec![Vec::new(); g.num_nodes()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        members[u].push(i);
        members[v].push(i);
    }
    let mut edges = Vec::new();
    let mut node_of_edge = Vec::new();
    for (u, m) in members.into_iter().enumerate() {
        if m.is_empty() {
            continue;
        }
        edges.push(Edge::new(m, u as u32 + 1, g.weight(u)));
        node_of_edge.push(u);
    }
    let k = g.num_nodes().max(1) as u32;
    let hypergraph = EdgeColoredHypergraph::new(g.num_edges(), k, edges)?;
    Ok(EccFromVc {
        hypergraph,
        node_of_edge,
    })
}

/// Node-weighted multiway cut instance. Node layout: terminals `t_1..t_k`
/// first, then the original nodes, then one node per hyperedge.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeMcReduction {
    pub graph: WeightedGraph,
    pub num_colors: u32,
    pub num_original: usize,
    pub num_edge_nodes: usize,
}

impl NodeMcReduction {
    pub fn terminal(&self, color: u32) -> usize {
        color as usize - 1
    }

    pub fn original(&self, v: usize) -> usize {
        self.num_colors as usize + v
    }

    pub fn edge_node(&self, j: usize) -> usize {
        self.num_colors as usize + self.num_original + j
    }
}

pub fn ecc_to_node_mc(h: &EdgeColoredHypergraph) -> NodeMcReduction {
    let k = h.num_colors() as usize;
    let n = h.num_nodes();
    let m = h.num_edges();
    let total = k + n + m;
    let mut weights = vec![f64::INFINITY; total];
    let mut undeletable = vec![true; total];
    let mut edges = Vec::with_capacity(h.total_incidence() + m);
    for (j, e) in h.edges().iter().enumerate() {
        let ve = k + n + j;
        weights[ve] = e.weight();
        undeletable[ve] = false;
        for &v in e.members() {
            edges.push((k + v, ve));
        }
        edges.push((e.color() as usize - 1, ve));
    }
    let terminals = (0..k).map(|i| (i, i as u32 + 1)).collect();
    NodeMcReduction {
        graph: WeightedGraph {
            weights,
            undeletable,
            edges,
            terminals,
        },
        num_colors: h.num_colors(),
        num_original: n,
        num_edge_nodes: m,
    }
}

/// Hypergraph multiway cut instance: terminals `t_i` get index
/// `num_nodes + i - 1` and each edge gains the terminal of its color.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperMcInstance {
    pub num_nodes: usize,
    pub edges: Vec<Vec<usize>>,
    pub weights: Vec<f64>,
    pub terminals: Vec<usize>,
}

impl HyperMcInstance {
    pub fn rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }
}

pub fn ecc_to_hyper_mc(h: &EdgeColoredHypergraph) -> HyperMcInstance {
    let n = h.num_nodes();
    let k = h.num_colors() as usize;
    let edges = h
        .edges()
        .iter()
        .map(|e| {
            let mut m = e.members().to_vec();
            m.push(n + e.color() as usize - 1);
            m
        })
        .collect();
    HyperMcInstance {
        num_nodes: n + k,
        edges,
        weights: h.edges().iter().map(Edge::weight).collect(),
        terminals: (n..n + k).collect(),
    }
}

/// Deletion set matching a vertex cover of the reduced graph.
pub fn cover_to_deletions(map: &VcReduction, cover: &[usize]) -> Result<DeletionSet> {
    let n = map.graph.num_nodes();
    let mut mark = vec![false; n];
    for &v in cover {
        if v >= n {
            return Err(EccError::InvalidArgument(format!(
                "cover node {v} outside [0, {n})"
            )));
        }
        mark[v] = true;
    }
    if let Some((u, v)) = map.graph.uncovered_edge(&mark) {
        return Err(EccError::NotACover(u, v));
    }
    let mut d = DeletionSet::new(n);
    for (j, &m) in mark.iter().enumerate() {
        if m {
            d.insert(j, map.graph.weight(j));
        }
    }
    Ok(d)
}

/// Vertex cover matching a deletion set.
pub fn deletions_to_cover(map: &VcReduction, d: &DeletionSet) -> Result<Vec<usize>> {
    if d.len() != map.graph.num_nodes() {
        return Err(EccError::DimensionMismatch(format!(
            "deletion set over {} edges, reduction has {}",
            d.len(),
            map.graph.num_nodes()
        )));
    }
    if let Some((e, f)) = map.graph.uncovered_edge(d.as_mask()) {
        return Err(EccError::BadPairRemains(e, f));
    }
    Ok(d.indices())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_integrality_gap, gen_star};

    #[test]
    fn gap3_reduces_to_triangle() {
        let h = gen_integrality_gap(3).unwrap();
        let r = ecc_to_vertex_cover(&h);
        assert_eq!(r.graph.num_nodes(), 3);
        assert_eq!(r.graph.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn conflict_free_reduces_to_edgeless() {
        let h = EdgeColoredHypergraph::new(
            4,
            2,
            vec![Edge::unit(vec![0, 1], 1), Edge::unit(vec![2, 3], 2)],
        )
        .unwrap();
        assert_eq!(ecc_to_vertex_cover(&h).graph.num_edges(), 0);
    }

    #[test]
    fn triangle_gives_gap_instance() {
        let g = WeightedGraph::unit(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        let r = vertex_cover_to_ecc(&g).unwrap();
        assert_eq!(r.hypergraph, gen_integrality_gap(3).unwrap());
    }

    #[test]
    fn single_graph_edge() {
        let g = WeightedGraph::unit(2, vec![(0, 1)]).unwrap();
        let r = vertex_cover_to_ecc(&g).unwrap();
        let h = &r.hypergraph;
        assert_eq!((h.num_nodes(), h.num_edges()), (1, 2));
        assert!(h.edges().iter().all(|e| e.members() == [0]));
    }

    #[test]
    fn isolated_graph_nodes_are_dropped() {
        let g = WeightedGraph::unit(4, vec![(0, 1), (1, 2)]).unwrap();
        let r = vertex_cover_to_ecc(&g).unwrap();
        assert_eq!(r.node_of_edge, vec![0, 1, 2]);
        assert_eq!(r.hypergraph.rank(), g.max_degree());
    }

    #[test]
    fn star_node_mc_layout() {
        let h = gen_star();
        let r = ecc_to_node_mc(&h);
        let g = &r.graph;
        assert_eq!(g.terminals().len(), 3);
        assert_eq!(g.num_nodes(), 3 + 4 + 3);
        let undeletable = (0..g.num_nodes()).filter(|&v| g.is_undeletable(v)).count();
        assert_eq!(undeletable, 7);
        let originals = (0..4).filter(|&v| g.is_undeletable(r.original(v))).count();
        assert_eq!(originals, 4);
        assert_eq!(g.num_edges(), h.total_incidence() + h.num_edges());
    }

    #[test]
    fn hyper_mc_adds_terminal() {
        let h = EdgeColoredHypergraph::new(2, 2, vec![Edge::unit(vec![0, 1], 2)]).unwrap();
        let r = ecc_to_hyper_mc(&h);
        assert_eq!(r.edges, vec![vec![0, 1, 3]]);
        let g = ecc_to_hyper_mc(&gen_integrality_gap(3).unwrap());
        assert!(g.edges.iter().all(|e| e.len() == 3));
        assert_eq!(g.edges.len(), 3);
    }

    #[test]
    fn cover_deletion_round_trip() {
        let h = gen_integrality_gap(3).unwrap();
        let map = ecc_to_vertex_cover(&h);
        let d = cover_to_deletions(&map, &[0, 1]).unwrap();
        assert_eq!(d.indices(), vec![0, 1]);
        assert_eq!(deletions_to_cover(&map, &d).unwrap(), vec![0, 1]);
        assert!(matches!(
            cover_to_deletions(&map, &[0]),
            Err(EccError::NotACover(1, 2))
        ));
    }

    #[test]
    fn graph_text_round_trip() {
        let r = ecc_to_node_mc(&gen_star());
        let back = WeightedGraph::from_text(&r.graph.to_text()).unwrap();
        assert_eq!(back, r.graph);
        assert!(WeightedGraph::from_text("vc 2 1\ne 0 0\n").is_err());
        assert!(WeightedGraph::from_text("vc 2 2\ne 0 1\n").is_err());
    }
}

use ecc_core::combinatorial::{coloring_from_deletions, match_coloring, pitt_coloring};
use ecc_core::generate::{gen_integrality_gap, gen_random, gen_uniform};
use ecc_core::oracle::{bruteforce_ecc, bruteforce_vc, DEFAULT_ORACLE_CAP};
use ecc_core::reductions::{
    bad_edge_pairs, cover_to_deletions, deletions_to_cover, ecc_to_hyper_mc, ecc_to_node_mc,
    ecc_to_vertex_cover, vertex_cover_to_ecc, WeightedGraph,
};
use ecc_core::{objective_cost, EdgeColoredHypergraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: u64 = DEFAULT_ORACLE_CAP;

fn random_graph(seed: u64) -> WeightedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..9);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.4) {
                edges.push((u, v));
            }
        }
    }
    if edges.is_empty() {
        edges.push((0, 1));
    }
    let weights = (0..n).map(|_| rng.gen_range(1..4) as f64).collect();
    WeightedGraph::new(weights, edges).unwrap()
}

/// Brute-force isomorphism up to relabeling nodes and colors.
fn isomorphic(a: &EdgeColoredHypergraph, b: &EdgeColoredHypergraph) -> bool {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    if a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges() {
        return false;
    }
    let canon = |h: &EdgeColoredHypergraph, nodes: &[usize], colors: &[usize]| {
        let mut es: Vec<(Vec<usize>, usize)> = h
            .edges()
            .iter()
            .map(|e| {
                let mut m: Vec<usize> = e.members().iter().map(|&v| nodes[v]).collect();
                m.sort_unstable();
                (m, colors[e.color() as usize - 1])
            })
            .collect();
        es.sort();
        es
    };
    let ident_n: Vec<usize> = (0..b.num_nodes()).collect();
    let ident_c: Vec<usize> = (0..b.num_colors() as usize).collect();
    let target = canon(b, &ident_n, &ident_c);
    let kc = a.num_colors() as usize;
    perms(a.num_nodes())
        .iter()
        .any(|np| perms(kc).iter().any(|cp| canon(a, np, cp) == target))
}

#[test]
fn ecc_to_vertex_cover_preserves_optimum() {
    for s in 0..50u64 {
        let h = if s % 2 == 0 {
            gen_uniform(6 + (s % 6) as usize, 8 + (s % 9) as usize, 3, 3, 300 + s).unwrap()
        } else {
            gen_random(8, 12, 3, 4, 0.5, 300 + s).unwrap().hypergraph
        };
        let red = ecc_to_vertex_cover(&h);
        assert_eq!(red.graph.num_edges(), bad_edge_pairs(&h).len());
        let vc = bruteforce_vc(&red.graph, CAP).unwrap();
        let ecc = bruteforce_ecc(&h, CAP).unwrap();
        assert!(
            (vc.value - ecc.value).abs() < 1e-9,
            "seed {s}: vc {} ecc {}",
            vc.value,
            ecc.value
        );

        // an optimal cover maps to an optimal coloring
        let d = cover_to_deletions(&red, vc.cover().unwrap()).unwrap();
        let y = coloring_from_deletions(&h, &d).unwrap();
        assert!((objective_cost(&h, &y).unwrap().total_cost - ecc.value).abs() < 1e-9);
    }
}

#[test]
fn vertex_cover_to_ecc_preserves_optimum() {
    for s in 0..50u64 {
        let g = random_graph(s);
        let red = vertex_cover_to_ecc(&g).unwrap();
        assert_eq!(red.hypergraph.rank(), g.max_degree());
        let vc = bruteforce_vc(&g, CAP).unwrap();
        let ecc = bruteforce_ecc(&red.hypergraph, CAP).unwrap();
        assert!(
            (vc.value - ecc.value).abs() < 1e-9,
            "seed {s}: vc {} ecc {}",
            vc.value,
            ecc.value
        );
    }
}

#[test]
fn triangle_is_the_three_color_gap_instance() {
    let tri = WeightedGraph::unit(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    let h = vertex_cover_to_ecc(&tri).unwrap().hypergraph;
    assert!(isomorphic(&h, &gen_integrality_gap(3).unwrap()));
    let path = WeightedGraph::unit(3, vec![(0, 1), (1, 2)]).unwrap();
    assert!(!isomorphic(
        &vertex_cover_to_ecc(&path).unwrap().hypergraph,
        &gen_integrality_gap(3).unwrap()
    ));
}

#[test]
fn heuristic_deletions_map_to_covers() {
    for s in 0..30u64 {
        let h = gen_uniform(8, 14, 3, 3, 600 + s).unwrap();
        let red = ecc_to_vertex_cover(&h);
        for d in [match_coloring(&h).deletions, pitt_coloring(&h, s).0] {
            let cover = deletions_to_cover(&red, &d).unwrap();
            let mut mask = vec![false; red.graph.num_nodes()];
            for &v in &cover {
                mask[v] = true;
            }
            assert_eq!(red.graph.uncovered_edge(&mask), None);
        }
    }
}

#[test]
fn multiway_cut_constructions() {
    let h = gen_uniform(7, 10, 3, 3, 5).unwrap();
    let nmc = ecc_to_node_mc(&h);
    let g = &nmc.graph;
    assert_eq!(g.num_nodes(), 3 + 7 + 10);
    assert_eq!(g.num_edges(), h.total_incidence() + h.num_edges());
    for v in 0..g.num_nodes() {
        assert_eq!(g.is_undeletable(v), v < nmc.edge_node(0));
    }
    let hmc = ecc_to_hyper_mc(&h);
    assert_eq!(hmc.num_nodes, 7 + 3);
    assert_eq!(hmc.rank(), h.rank() + 1);
    for (j, e) in h.edges().iter().enumerate() {
        assert!(hmc.edges[j].contains(&(7 + e.color() as usize - 1)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn reductions_agree_on_random_graphs(seed in any::<u64>()) {
        let g = random_graph(seed);
        let h = vertex_cover_to_ecc(&g).unwrap().hypergraph;
        let back = ecc_to_vertex_cover(&h);
        let a = bruteforce_vc(&g, CAP).unwrap().value;
        let b = bruteforce_vc(&back.graph, CAP).unwrap().value;
        prop_assert!((a - b).abs() < 1e-9);
    }
}

use ecc_core::generate::{gen_integrality_gap, gen_random, gen_star, gen_uniform};
use ecc_core::io::{
    parse_benchmark, parse_canonical, parse_coloring, write_canonical, write_coloring,
};
use ecc_core::{EccError, Edge, EdgeColoredHypergraph, NodeColoring};
use proptest::prelude::*;

#[test]
fn generated_instances_round_trip() {
    let mut all = vec![gen_star(), gen_uniform(9, 20, 4, 3, 1).unwrap()];
    for k in 3..=6 {
        all.push(gen_integrality_gap(k).unwrap());
    }
    for h in all {
        assert_eq!(parse_canonical(&write_canonical(&h)).unwrap(), h);
    }
}

#[test]
fn random_generation_is_pure() {
    let a = gen_random(30, 50, 4, 5, 0.2, 123).unwrap();
    let b = gen_random(30, 50, 4, 5, 0.2, 123).unwrap();
    assert_eq!(a.hypergraph, b.hypergraph);
    assert_eq!(a.truth, b.truth);
}

#[test]
fn benchmark_files() {
    let edges = "1,2,3\n2,4\n\n4,5\n";
    let labels = "1\n2\n2\n";
    let inst = parse_benchmark(edges, labels, Some("1\n1\n2\n2\n3\n")).unwrap();
    let h = &inst.hypergraph;
    assert_eq!((h.num_nodes(), h.num_edges(), h.num_colors()), (5, 3, 3));
    assert_eq!(h.edge(0).members(), &[0, 1, 2]);
    assert_eq!(h.edge(2).color(), 2);
    assert_eq!(inst.truth.unwrap().as_slice(), &[1, 1, 2, 2, 3]);
    assert!(parse_benchmark(edges, "1\n2\n", None).is_err());
}

#[test]
fn malformed_canonical_input() {
    let short = "ecc 3 2 2\n1 1 0 1\n";
    match parse_canonical(short) {
        Err(EccError::Parse { message, .. }) => assert!(message.contains("1 missing"), "{message}"),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        parse_canonical("ecc 3 1 2\n3 1 0 1\n"),
        Err(EccError::Parse { line: 2, .. })
    ));
    assert!(parse_canonical("ecc 3 1 2\n1 1 0 7\n").is_err());
    assert!(parse_canonical("ecc 3 1 2\n1 -1 0 1\n").is_err());
    assert!(parse_canonical("graph 3 1 2\n").is_err());
}

#[test]
fn coloring_files() {
    let y = NodeColoring::new(vec![2, 1, 3], 3).unwrap();
    assert_eq!(parse_coloring(&write_coloring(&y), 3).unwrap(), y);
    assert!(parse_coloring("1\n4\n", 3).is_err());
}

fn arb_instance() -> impl Strategy<Value = EdgeColoredHypergraph> {
    (1usize..12, 1u32..6).prop_flat_map(|(n, k)| {
        let edge = (
            proptest::collection::vec(0..n, 1..6),
            1..=k,
            prop_oneof![Just(1.0), 0.0f64..1e6],
        );
        proptest::collection::vec(edge, 0..20).prop_map(move |raw| {
            let edges = raw
                .into_iter()
                .map(|(m, c, w)| Edge::new(m, c, w))
                .collect();
            EdgeColoredHypergraph::new(n, k, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn canonical_round_trip(h in arb_instance()) {
        prop_assert_eq!(parse_canonical(&write_canonical(&h)).unwrap(), h);
    }

    #[test]
    fn duplicate_members_collapse(mut m in proptest::collection::vec(0usize..6, 1..8)) {
        let e = Edge::unit(m.clone(), 1);
        m.sort_unstable();
        m.dedup();
        prop_assert_eq!(e.members(), &m[..]);
    }
}

mod common;

use common::random_connected;
use occwalk::graph::Edge;
use occwalk::{Error, FlattenMode, Graph, MultilayerNetwork, SpectralDecomposition};
use proptest::prelude::*;

fn connected() -> impl Strategy<Value = Graph> {
    (2usize..30, 0.0f64..0.5, any::<u64>()).prop_map(|(n, p, s)| random_connected(n, p, s))
}

/// Arbitrary simple weighted graph, possibly disconnected.
fn weighted() -> impl Strategy<Value = Graph> {
    prop::collection::vec((0u8..12, 0u8..12, 0.1f64..5.0), 1..40).prop_map(|raw| {
        let mut g = Graph::new();
        for (a, b, w) in raw {
            let _ = g.add_edge(&format!("n{a}"), &format!("n{b}"), w);
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjacency_is_symmetric_with_zero_diagonal(g in weighted()) {
        let a = g.adjacency_matrix();
        prop_assert_eq!(&a, &a.transpose());
        for i in 0..g.node_count() {
            prop_assert_eq!(a[(i, i)], 0.0);
        }
        let deg = g.degree_vector();
        for i in 0..g.node_count() {
            prop_assert!((a.row(i).sum() - deg[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn laplacian_annihilates_ones_and_is_psd(g in weighted()) {
        let l = g.laplacian();
        for i in 0..g.node_count() {
            prop_assert!(l.row(i).sum().abs() < 1e-12);
        }
        let spec = SpectralDecomposition::new(&l).unwrap();
        prop_assert!(spec.eigenvalues().iter().all(|&x| x > -1e-9));
    }

    #[test]
    fn transition_columns_sum_to_one(g in connected()) {
        let m = g.transition_matrix().unwrap();
        for j in 0..g.node_count() {
            prop_assert!((m.column(j).sum() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn normalized_laplacian_spectrum_in_unit_interval_times_two(g in connected()) {
        let spec = SpectralDecomposition::new(&g.normalized_laplacian().unwrap()).unwrap();
        let ev = spec.eigenvalues();
        prop_assert!(ev.iter().all(|&x| (-1e-9..=2.0 + 1e-9).contains(&x)));
        // one zero eigenvalue per connected component
        prop_assert!(ev[0].abs() < 1e-9);
        if g.node_count() > 1 {
            prop_assert!(ev[1] > 1e-9);
        }
    }

    #[test]
    fn components_partition_the_nodes(g in weighted()) {
        let comps = g.component_indices();
        let mut seen: Vec<usize> = comps.iter().flatten().copied().collect();
        seen.sort();
        prop_assert_eq!(seen, (0..g.node_count()).collect::<Vec<_>>());
        for c in &comps {
            prop_assert!(g.subgraph(c).is_connected());
        }
        prop_assert_eq!(g.is_connected(), comps.len() == 1);
    }

    #[test]
    fn flatten_invariants(layers in prop::collection::vec(weighted(), 1..4)) {
        let mut ml = MultilayerNetwork::new();
        for (i, g) in layers.iter().enumerate() {
            ml.add_layer(format!("L{i}"), g.clone()).unwrap();
        }
        let binary = ml.flatten(FlattenMode::Binary);
        let sum = ml.flatten(FlattenMode::Sum);
        prop_assert_eq!(binary.node_count(), ml.actors().len());
        prop_assert_eq!(binary.edge_count(), sum.edge_count());
        prop_assert!(binary.edge_count() <= ml.intralayer_edge_count());
        prop_assert!(binary.edges().iter().all(|e| e.weight == 1.0));
        let total: f64 = layers.iter().flat_map(|g| g.edges().iter().map(|e| e.weight)).sum();
        let flat_total: f64 = sum.edges().iter().map(|e| e.weight).sum();
        prop_assert!((total - flat_total).abs() < 1e-9 * total.max(1.0));
    }
}

#[test]
fn rejects_malformed_edges() {
    let mut g = Graph::new();
    g.add_edge("a", "b", 1.0).unwrap();
    assert_eq!(g.add_edge("b", "a", 1.0), Err(Error::DuplicateEdge("b".into(), "a".into())));
    assert_eq!(g.add_edge("c", "c", 1.0), Err(Error::SelfLoop("c".into())));
    assert!(matches!(g.add_edge("a", "c", 0.0), Err(Error::NonPositiveWeight { .. })));
    assert!(matches!(g.add_edge("a", "c", f64::NAN), Err(Error::NonPositiveWeight { .. })));
    assert_eq!(g.add_edge("", "c", 1.0), Err(Error::EmptyLabel));
    assert_eq!(g.edge_count(), 1);
}

#[test]
fn node_order_is_first_appearance() {
    let g = Graph::from_pairs(&[("z", "a"), ("m", "z"), ("a", "q")]).unwrap();
    assert_eq!(g.labels().collect::<Vec<_>>(), ["z", "a", "m", "q"]);
    assert_eq!(
        g.edges()[1],
        Edge {
            u: 2,
            v: 0,
            weight: 1.0
        }
    );
}

#[test]
fn isolated_nodes_block_normalized_operators() {
    let mut g = Graph::from_pairs(&[("a", "b")]).unwrap();
    g.add_node("lonely").unwrap();
    assert_eq!(g.isolated_nodes(), ["lonely"]);
    assert_eq!(g.normalized_laplacian(), Err(Error::IsolatedNode("lonely".into())));
    assert_eq!(g.transition_matrix(), Err(Error::IsolatedNode("lonely".into())));
    assert_eq!(g.without_isolated().node_count(), 2);
}

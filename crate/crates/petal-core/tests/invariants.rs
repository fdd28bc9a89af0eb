//! Property-based invariants checked against independent oracles: a BFS
//! re-derivation of the stratification, stochasticity/symmetry of assembled
//! matrices, and agreement of the two SLEM routes on random specs.

use proptest::prelude::*;

use petal_core::{
    assemble_matrix, build_graph, metropolis_hastings_weights, optimal_weights, slem_full,
    slem_quotient, spectral::quotient_matrices, CoreKind, Graph, LeafKind, PetalSpec,
};

fn leaf_strategy() -> impl Strategy<Value = LeafKind> {
    prop_oneof![
        (2usize..=4, 1usize..=3).prop_map(|(m, k)| LeafKind::PathBundle { m, k }),
        (1usize..=2, 2usize..=3).prop_map(|(m, k)| LeafKind::SymmetricG { m, k }),
        // expand and its reverse contract to the same width by construction
        prop::collection::vec(1usize..=3, 1..=2).prop_map(|expand| {
            let contract = expand.iter().rev().copied().collect();
            LeafKind::AsymmetricG { expand, contract }
        }),
        ((2usize..=3, 1usize..=2), (2usize..=3, 1usize..=2)).prop_map(|(a, b)| {
            LeafKind::Composite {
                segments: vec![
                    LeafKind::PathBundle { m: a.0, k: a.1 },
                    LeafKind::PathBundle { m: b.0, k: b.1 },
                ],
            }
        }),
    ]
}

fn spec_strategy() -> impl Strategy<Value = PetalSpec> {
    (
        prop_oneof![Just(CoreKind::SingleHub), Just(CoreKind::CompleteCore)],
        2usize..=4,
        leaf_strategy(),
    )
        .prop_map(|(core, n, leaf)| PetalSpec::new(core, n, leaf).unwrap())
}

/// Independent distance oracle: plain BFS over the edge list from the core
/// node set, ignoring everything build_graph recorded structurally.
fn bfs_distances(g: &Graph) -> Vec<usize> {
    let cores = match g.core {
        CoreKind::SingleHub => 1,
        CoreKind::CompleteCore => g.n_leaves,
    };
    let mut adj = vec![Vec::new(); g.node_count];
    for &(u, v) in &g.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut dist = vec![usize::MAX; g.node_count];
    let mut queue: std::collections::VecDeque<usize> = (0..cores).collect();
    for q in &queue {
        dist[*q] = 0;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strata_match_bfs_oracle(spec in spec_strategy()) {
        let g = build_graph(&spec).unwrap();
        let dist = bfs_distances(&g);
        // connected, and the recorded stratification is exactly BFS depth
        prop_assert!(dist.iter().all(|&d| d != usize::MAX));
        prop_assert_eq!(&dist, &g.core_distance);
        prop_assert_eq!(&dist, &g.stratum_of.clone());

        // stratum sizes: the widths blown up by the leaf count
        let widths = spec.profile().widths();
        let cores = match spec.core { CoreKind::SingleHub => 1, CoreKind::CompleteCore => spec.n };
        for (level, &w) in widths.iter().enumerate() {
            let size = dist.iter().filter(|&&d| d == level).count();
            let expected = if level == 0 { cores } else { spec.n * w };
            prop_assert_eq!(size, expected);
        }
        prop_assert_eq!(g.node_count, cores + spec.n * spec.profile().leaf_node_count());
    }

    #[test]
    fn build_is_deterministic(spec in spec_strategy()) {
        let g1 = build_graph(&spec).unwrap();
        let g2 = build_graph(&spec).unwrap();
        prop_assert_eq!(g1.edges, g2.edges);
        prop_assert_eq!(g1.edge_class, g2.edge_class);
        prop_assert_eq!(g1.stratum_of, g2.stratum_of);
    }

    #[test]
    fn assembled_matrices_are_stochastic_and_symmetric(spec in spec_strategy()) {
        let g = build_graph(&spec).unwrap();
        for assignment in [optimal_weights(&spec).unwrap(), metropolis_hastings_weights(&g).unwrap()] {
            let w = assemble_matrix(&g, &assignment).unwrap();
            let dense = w.to_dense();
            prop_assert!(dense.max_asymmetry() <= 1e-14);
            for i in 0..w.dim {
                let row: f64 = (0..w.dim).map(|j| dense[(i, j)]).sum();
                prop_assert!((row - 1.0).abs() <= 1e-12, "row {} sums to {}", i, row);
            }
        }
    }

    #[test]
    fn mh_weights_positive_and_class_constant(spec in spec_strategy()) {
        let g = build_graph(&spec).unwrap();
        // class-constancy is enforced inside the constructor; it erring
        // on any generated petal graph would falsify the orbit argument
        let mh = metropolis_hastings_weights(&g).unwrap();
        for w in &mh.to_f64_vec() {
            prop_assert!(*w > 0.0 && *w <= 0.5);
        }
    }

    #[test]
    fn quotient_agrees_with_full_matrix(spec in spec_strategy()) {
        let g = build_graph(&spec).unwrap();
        let weights = optimal_weights(&spec).unwrap();
        let full = slem_full(&assemble_matrix(&g, &weights).unwrap()).unwrap().slem;
        let quotient = slem_quotient(&quotient_matrices(&spec, &weights).unwrap()).unwrap().slem;
        prop_assert!((full - quotient).abs() <= 1e-9, "full {} vs quotient {}", full, quotient);
    }

    #[test]
    fn slem_strictly_inside_unit_interval(spec in spec_strategy()) {
        let weights = optimal_weights(&spec).unwrap();
        let s = slem_quotient(&quotient_matrices(&spec, &weights).unwrap()).unwrap().slem;
        prop_assert!(s > 0.0 && s < 1.0, "slem {}", s);
    }
}

#[test]
fn edge_count_matches_handshake_oracle() {
    // degree sum = 2|E| on a handful of concrete specs, including the two
    // figure instances
    let cases = [
        PetalSpec::path_bundle(CoreKind::SingleHub, 3, 4, 3).unwrap(),
        PetalSpec::path_bundle(CoreKind::CompleteCore, 3, 4, 3).unwrap(),
        PetalSpec::new(CoreKind::SingleHub, 2, LeafKind::SymmetricG { m: 2, k: 2 }).unwrap(),
    ];
    for spec in cases {
        let g = build_graph(&spec).unwrap();
        let deg_sum: usize = g.degrees().iter().sum();
        assert_eq!(deg_sum, 2 * g.edges.len());
        let cores = match spec.core {
            CoreKind::SingleHub => 0,
            CoreKind::CompleteCore => spec.n * (spec.n - 1) / 2,
        };
        assert_eq!(
            g.edges.len(),
            cores + spec.n * spec.profile().leaf_edge_count()
        );
    }
}

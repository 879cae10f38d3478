//! Invariants from the module contracts, as property tests over random
//! graphs and exhaustive checks over small orders.

mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;

use algconn_core::canon::{canonical_form, CanonicalCode};
use algconn_core::connectivity::theta_lengths;
use algconn_core::enumeration::{enumerate_graphs, enumerate_graphs_with, EnumOptions, Predicate};
use algconn_core::families::{enumerate_theta, equality_family, realize, FamilySpec};
use algconn_core::suites::{random_family_spec, rng};
use algconn_core::{
    graph6, hamiltonian_cycle, inner_disjoint_paths, is_biconnected, is_theta, laplacian, laplacian_spectrum,
    local_connectivity, Graph,
};

use common::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn graph_and_vector(max_n: usize) -> impl Strategy<Value = (Graph, Vec<f64>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(-100.0f64..100.0, n))
    })
}

proptest! {
    #[test]
    fn laplacian_quadratic_form_is_edge_sum((g, x) in graph_and_vector(16)) {
        let by_edges: f64 = g.edges().iter().map(|&(u, v)| (x[u] - x[v]).powi(2)).sum();
        let by_matrix = laplacian(&g).quadratic_form(&x);
        prop_assert!((by_matrix - by_edges).abs() <= 1e-12 * by_edges.max(1.0));
        prop_assert!((g.quadratic_form(&x) - by_edges).abs() <= 1e-12 * by_edges.max(1.0));
    }

    #[test]
    fn laplacian_rows_sum_to_zero(g in graph_strategy(20)) {
        let l = laplacian(&g);
        prop_assert!(l.row_sums().iter().all(|&s| s == 0));
        for u in 0..g.order() {
            prop_assert_eq!(l.get(u, u), g.degree(u) as i64);
        }
    }

    #[test]
    fn spectrum_sums_to_twice_edge_count(g in graph_strategy(24)) {
        let spec = laplacian_spectrum(&g).unwrap();
        let sum: f64 = spec.eigenvalues.iter().sum();
        prop_assert!((sum - 2.0 * g.size() as f64).abs() <= 1e-9);
        prop_assert!(spec.eigenvalues.iter().all(|&l| l >= -1e-9));
        prop_assert!(spec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph_strategy(12), seed in any::<u64>()) {
        let code = canonical_form(&g).unwrap();
        let mut r = rng(seed);
        let mut perm: Vec<usize> = (0..g.order()).collect();
        for _ in 0..100 {
            perm.shuffle(&mut r);
            prop_assert_eq!(canonical_form(&g.relabel(&perm)).unwrap(), code);
        }
        prop_assert_eq!(canonical_form(&code.to_graph()).unwrap(), code);
    }

    #[test]
    fn graph6_round_trips(g in graph_strategy(40)) {
        let text = graph6::encode(&g).unwrap();
        prop_assert_eq!(graph6::decode(&text).unwrap(), g);
    }

    #[test]
    fn local_connectivity_bounded_by_degrees(g in graph_strategy(10)) {
        let n = g.order();
        for u in 0..n {
            for v in u + 1..n {
                let k = local_connectivity(&g, u, v).unwrap();
                prop_assert!(k <= g.degree(u).min(g.degree(v)));
                let paths = inner_disjoint_paths(&g, u, v, k).unwrap();
                prop_assert_eq!(paths.paths.len(), k);
            }
        }
    }

    #[test]
    fn family_members_are_hamiltonian_and_biconnected(seed in any::<u64>()) {
        let spec = random_family_spec(&mut rng(seed), 12).unwrap();
        let g = realize(&spec).unwrap();
        prop_assert!(is_biconnected(&g));
        let cycle = hamiltonian_cycle(&g).unwrap().expect("family member has a spanning cycle");
        prop_assert_eq!(cycle.len(), spec.n);
        prop_assert_eq!(g.size(), spec.n + spec.indices.len());
    }
}

#[test]
fn biconnected_iff_every_pair_has_two_paths() {
    for n in 1..=7 {
        for e in enumerate_graphs(n, Predicate::All).unwrap() {
            let g = &e.graph;
            let min_local = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .map(|(u, v)| local_connectivity(g, u, v).unwrap())
                .min();
            let two_paths = n >= 3 && min_local.is_some_and(|k| k >= 2);
            assert_eq!(is_biconnected(g), two_paths, "{}", e.code);
        }
    }
}

#[test]
fn theta_recognition_matches_definition() {
    for n in 1..=8 {
        for e in enumerate_graphs(n, Predicate::All).unwrap() {
            assert_eq!(is_theta(&e.graph), theta_by_definition(&e.graph), "{}", e.code);
        }
    }
}

#[test]
fn path_systems_are_inner_disjoint() {
    for n in 3..=7 {
        for e in enumerate_graphs(n, Predicate::Biconnected).unwrap() {
            let g = &e.graph;
            for u in 0..n {
                for v in u + 1..n {
                    let sys = inner_disjoint_paths(g, u, v, 2).unwrap();
                    let mut interior = HashSet::new();
                    for p in &sys.paths {
                        assert_eq!((p[0], *p.last().unwrap()), (u, v));
                        assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
                        for &w in &p[1..p.len() - 1] {
                            assert!(interior.insert(w), "{} shares {w}", e.code);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn enumeration_is_independent_of_labelling_order() {
    for n in [6, 7] {
        let plain: Vec<CanonicalCode> = enumerate_graphs(n, Predicate::All)
            .unwrap()
            .into_iter()
            .map(|e| e.code)
            .collect();
        let unique: HashSet<_> = plain.iter().collect();
        assert_eq!(unique.len(), plain.len(), "duplicate codes at n={n}");
        for seed in [1, 2, 3] {
            let opts = EnumOptions {
                shuffle_seed: Some(seed),
            };
            let shuffled: Vec<CanonicalCode> = enumerate_graphs_with(n, Predicate::All, &opts)
                .unwrap()
                .into_iter()
                .map(|e| e.code)
                .collect();
            assert_eq!(shuffled, plain, "n={n} seed={seed}");
        }
    }
}

#[test]
fn enumerated_graphs_satisfy_predicate_and_are_canonical() {
    for e in enumerate_graphs(7, Predicate::Biconnected).unwrap() {
        assert!(biconnected(&rows_of(&e.graph)));
        assert_eq!(canonical_form(&e.graph).unwrap(), e.code);
    }
    for e in enumerate_graphs(6, Predicate::Connected).unwrap() {
        assert!(connected(&rows_of(&e.graph)));
    }
}

#[test]
fn graph6_round_trips_on_every_small_class() {
    for n in 1..=8 {
        for e in enumerate_graphs(n, Predicate::All).unwrap() {
            let text = graph6::encode(&e.graph).unwrap();
            assert_eq!(graph6::decode(&text).unwrap(), e.graph);
            assert_eq!(CanonicalCode::from_graph6(&e.code.to_graph6()).unwrap(), e.code);
        }
    }
}

#[test]
fn theta_enumeration_is_complete() {
    for n in 4..=20 {
        let specs = enumerate_theta(n).unwrap();
        let triples: Vec<[usize; 3]> = specs
            .iter()
            .map(|s| [s.indices[0], s.indices[1], s.indices[2]])
            .collect();
        assert_eq!(triples, theta_triples(n), "n={n}");
        for spec in &specs {
            let g = realize(spec).unwrap();
            assert_eq!(g.order(), n);
            assert!(theta_by_definition(&g), "{spec}");
            assert_eq!(
                theta_lengths(&g),
                Some([spec.indices[0], spec.indices[1], spec.indices[2]])
            );
        }
    }
}

#[test]
fn equality_family_members_are_pairwise_non_isomorphic() {
    for n in 4..=12 {
        let family = equality_family(n).unwrap();
        let codes: HashSet<_> = family.iter().map(|m| m.code).collect();
        assert_eq!(codes.len(), family.len());
        assert_eq!(family[0].spec, FamilySpec::cycle(n).unwrap());
        for m in &family {
            assert_eq!(canonical_form(&m.graph).unwrap(), m.code);
        }
    }
}

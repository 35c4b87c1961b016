mod common;

use pancyclic::{Family, Graph};
use proptest::prelude::*;

use common::subset_spectrum;

fn graph_strategy(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order, 0.1f64..0.9).prop_flat_map(|(n, density)| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(density), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for j in 1..n {
                for i in 0..j {
                    if it.next().unwrap() {
                        edges.push((i, j));
                    }
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn permuted(g: Graph) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    let n = g.order();
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(move |perm| (g.clone(), perm))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn spectrum_matches_subset_count(g in graph_strategy(10)) {
        let expected: Vec<(usize, u64)> = subset_spectrum(&g).into_iter().collect();
        prop_assert_eq!(g.cycle_spectrum().to_vec(), expected);
    }

    #[test]
    fn bipartite_iff_no_odd_cycle(g in graph_strategy(10)) {
        prop_assert_eq!(g.is_bipartite(), !g.cycle_spectrum().has_odd_length());
        if let Some(colors) = g.two_coloring() {
            for &(u, v) in g.edges() {
                prop_assert_ne!(colors[u], colors[v]);
            }
        }
    }

    #[test]
    fn spectrum_is_relabel_invariant((g, perm) in graph_strategy(10).prop_flat_map(permuted)) {
        prop_assert_eq!(g.cycle_spectrum(), g.relabel(&perm).cycle_spectrum());
    }

    #[test]
    fn pancyclic_target_implies_hamiltonian(g in graph_strategy(9), r in 1u32..3) {
        if g.check_target(Family::Pancyclic, r) == Ok(true) {
            prop_assert_eq!(g.cycle_spectrum().count(g.order()), u64::from(r));
        }
    }
}

#[test]
fn spectrum_lengths_within_order() {
    let g = Graph::complete(7);
    let spectrum = g.cycle_spectrum();
    assert!(spectrum.iter().all(|(len, _)| (3..=7).contains(&len)));
    // K7 has sum over L of C(7,L)(L-1)!/2 cycles.
    assert_eq!(spectrum.total(), 35 + 105 + 252 + 420 + 360);
}

#[test]
fn check_target_examples() {
    assert_eq!(Graph::complete(3).check_target(Family::Pancyclic, 1), Ok(true));
    assert_eq!(Graph::cycle(4).check_target(Family::Bipancyclic, 1), Ok(true));
    assert_eq!(Graph::complete_bipartite(2, 3).check_target(Family::OddlyBipancyclic, 3), Ok(true));
    assert_eq!(Graph::cycle(6).check_target(Family::Bipancyclic, 1), Ok(false));
    assert!(Graph::cycle(5).check_target(Family::Bipancyclic, 1).is_err());
}

//! Checks on the test oracles themselves: the reference search and the
//! graph generators.

mod common;

use common::*;
use sntrank::graph::families::*;
use sntrank::graph::is_isomorphic;

#[test]
fn reference_search_reproduces_known_ranks() {
    for (g, r) in [
        (empty(3), 0),
        (looped_vertex(), 1),
        (path(2), 2),
        (path(3), 2),
        (path(5), 4),
        (cycle(4), 2),
        (cycle(5), 5),
        (complete(4), 4),
        (complete(6), 5),
        (complete_looped(4), 1),
        (g1(), 3),
        (g2(), 3),
        (g3(), 3),
        (looped_band(), 4),
    ] {
        assert_eq!(naive_rank(&g), r, "{:?}", g.edges());
    }
}

#[test]
fn graph_census() {
    let counts = |loops: bool, connected: bool| -> Vec<usize> {
        (1..=5).map(|n| graphs(n, loops, connected).len()).collect()
    };
    assert_eq!(counts(false, false), vec![1, 2, 4, 11, 34]);
    assert_eq!(counts(false, true), vec![1, 1, 2, 6, 21]);
    assert_eq!(counts(true, false), vec![2, 6, 20, 90, 544]);
}

#[test]
fn census_classes_are_distinct() {
    let gs = graphs(4, true, true);
    for (i, a) in gs.iter().enumerate() {
        for b in &gs[i + 1..] {
            assert!(!is_isomorphic(a, b));
        }
    }
}

#[test]
fn tree_census() {
    let counts: Vec<usize> = (1..=10).map(|n| trees(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    for t in trees(7) {
        assert!(t.is_forest() && t.is_connected());
    }
}

#[test]
fn leaf_parity() {
    assert!(leaf_distances_even(&path(5)));
    assert!(!leaf_distances_even(&path(4)));
    assert!(leaf_distances_even(&generalized_star(&[2, 2, 2])));
    assert!(!leaf_distances_even(&generalized_star(&[2, 1, 1])));
}

#[test]
fn planting() {
    let g = plant_twin(&path(3), 0);
    assert_eq!(g.order(), 4);
    assert_eq!(g.edge_count(), 3);
    assert!(!g.is_twin_free());
    let g = plant_twin(&looped_vertex(), 0);
    assert_eq!(g, complete_looped(2));
    let g = plant_apex(&empty(2));
    assert_eq!(g.edge_count(), 3);
}

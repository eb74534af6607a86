mod common;

use proptest::prelude::*;
use sntrank::closed_form::{
    build_complete_cover, katona_s, min_factor_sum, snt_rank, snt_rank_forest, Method,
};
use sntrank::cover::{canonical_form, cover_graph, validate_cover};
use sntrank::factor::{cover_to_factors, factors_to_cover, verify_realization};
use sntrank::graph::families::*;
use sntrank::graph::{conormal_product, disjoint_union, is_isomorphic};
use sntrank::uniqueness::classify_uniqueness;
use sntrank::{snt_rank_exact, Graph, Permutation, SolverOptions};

use common::*;

fn arb_graph(max_n: usize, loops: bool) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(any::<bool>(), n * (n + 1) / 2).prop_map(move |bits| {
            let mut rows = vec![0u32; n];
            let mut it = bits.into_iter();
            for i in 0..n {
                for j in i..n {
                    if it.next().unwrap() && (loops || i != j) {
                        rows[i] |= 1 << j;
                        rows[j] |= 1 << i;
                    }
                }
            }
            from_masks(&rows)
        })
    })
}

fn arb_connected(max_n: usize, loops: bool) -> impl Strategy<Value = Graph> {
    arb_graph(max_n, loops).prop_filter("connected", |g| g.is_connected())
}

/// Random labelled tree from a Prüfer sequence.
fn arb_tree(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n - 2).prop_map(move |seq| {
            let mut degree = vec![1usize; n];
            for &v in &seq {
                degree[v] += 1;
            }
            let mut edges = Vec::new();
            for &v in &seq {
                let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
                edges.push((leaf + 1, v + 1));
                degree[leaf] -= 1;
                degree[v] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
            edges.push((rest[0] + 1, rest[1] + 1));
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|l| Permutation::from_labels(&l).unwrap())
}

fn rank(g: &Graph) -> usize {
    snt_rank(g, &SolverOptions::default(), Method::Auto)
        .unwrap()
        .rank
        .unwrap()
}

fn exact_rank(g: &Graph) -> usize {
    snt_rank_exact(g, &SolverOptions::default())
        .unwrap()
        .rank
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificate_is_valid_and_bounded(g in arb_graph(7, true)) {
        let r = snt_rank_exact(&g, &SolverOptions::default()).unwrap();
        let k = r.rank.unwrap();
        prop_assert!(validate_cover(&g, &r.certificate).unwrap().valid);
        prop_assert_eq!(r.certificate.order(), k);
        prop_assert!(r.lower_bound <= k);
        let active = (0..g.order()).filter(|&v| !g.is_isolated0(v)).count();
        prop_assert!(k <= active);
    }

    #[test]
    fn closed_forms_agree_with_exact(g in arb_graph(7, true)) {
        let auto = snt_rank(&g, &SolverOptions::default(), Method::Auto).unwrap();
        prop_assert!(validate_cover(&g, &auto.certificate).unwrap().valid);
        prop_assert_eq!(auto.rank.unwrap(), exact_rank(&g));
    }

    #[test]
    fn rank_is_a_graph_invariant((g, p) in arb_graph(6, true).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), arb_perm(n))
    })) {
        prop_assert_eq!(exact_rank(&g), exact_rank(&g.permuted(&p)));
    }

    #[test]
    fn rank_is_additive_over_components(a in arb_graph(4, true), b in arb_graph(4, true)) {
        prop_assert_eq!(exact_rank(&disjoint_union(&a, &b)), exact_rank(&a) + exact_rank(&b));
    }

    #[test]
    fn twins_do_not_change_rank((g, v) in arb_graph(6, true).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), 0..n)
    })) {
        prop_assert_eq!(rank(&plant_twin(&g, v)), rank(&g));
    }

    #[test]
    fn cut_edge_sandwich(
        (a, u) in arb_connected(4, true).prop_flat_map(|g| { let n = g.order(); (Just(g), 0..n) }),
        (b, w) in arb_connected(4, true).prop_flat_map(|g| { let n = g.order(); (Just(g), 0..n) }),
    ) {
        let mut g = disjoint_union(&a, &b);
        g.add_edge(u + 1, a.order() + w + 1).unwrap();
        let (ra, rb, r) = (exact_rank(&a), exact_rank(&b), exact_rank(&g));
        prop_assert!(r <= ra + rb + 2, "{} + {} vs {}", ra, rb, r);
        // The lower bound needs at least one bridge end without a loop.
        if !(a.has_loop0(u) && b.has_loop0(w)) {
            prop_assert!(ra + rb <= r, "{} + {} vs {}", ra, rb, r);
        }
    }

    #[test]
    fn cut_vertex_bound(
        parts in proptest::collection::vec(arb_connected(3, true), 2..=3),
        looped in any::<bool>(),
        seeds in proptest::collection::vec(any::<prop::sample::Index>(), 3),
    ) {
        // Vertex 1 is the cut vertex; it joins one vertex of every part.
        let mut g = if looped { looped_vertex() } else { empty(1) };
        let mut ends = Vec::new();
        for (p, seed) in parts.iter().zip(&seeds) {
            ends.push(g.order() + seed.index(p.order()) + 1);
            g = disjoint_union(&g, p);
        }
        for e in ends {
            g.add_edge(1, e).unwrap();
        }
        let bound = 2 + parts.iter().map(exact_rank).sum::<usize>();
        prop_assert!(exact_rank(&g) <= bound);
    }

    #[test]
    fn conormal_product_is_subadditive(a in arb_graph(3, true), b in arb_graph(3, true)) {
        let p = conormal_product(&a, &b);
        prop_assert!(rank(&p) <= rank(&a) + rank(&b));
    }

    #[test]
    fn factorization_round_trip(g in arb_graph(6, true)) {
        let r = snt_rank_exact(&g, &SolverOptions::default()).unwrap();
        let (b, c) = cover_to_factors(&r.certificate);
        prop_assert!(verify_realization(&g, &b, &c));
        let back = factors_to_cover(&b, &c).unwrap();
        prop_assert_eq!(canonical_form(&back), canonical_form(&r.certificate));
    }

    #[test]
    fn uniqueness_flags_are_nested(g in arb_connected(5, true)) {
        let r = classify_uniqueness(&g, &SolverOptions::default()).unwrap();
        prop_assert!(r.orbit_count >= 1 && r.orbit_count <= r.covers.len());
        prop_assert!(!r.unique || r.essentially_unique);
        prop_assert!(!r.essentially_unique || r.unique_cover_graph);
        for c in &r.covers {
            prop_assert_eq!(c.order(), r.rank);
            prop_assert!(validate_cover(&g, c).unwrap().valid);
        }
    }

    #[test]
    fn tree_formula_matches_exact(t in arb_tree(3, 12)) {
        let (r, cover) = snt_rank_forest(&t).unwrap();
        prop_assert!(validate_cover(&t, &cover).unwrap().valid);
        prop_assert_eq!(r, exact_rank(&t));
    }

    #[test]
    fn tree_uniqueness_and_cover_graph(t in arb_tree(3, 9)) {
        let r = classify_uniqueness(&t, &SolverOptions::default()).unwrap();
        prop_assert_eq!(r.unique, leaf_distances_even(&t));
        if r.unique {
            let stars = r.rank / 2;
            let mut matching = empty(0);
            for _ in 0..stars {
                matching = disjoint_union(&matching, &path(2));
            }
            prop_assert!(is_isomorphic(&cover_graph(&r.covers[0]), &matching));
        }
    }

    #[test]
    fn katona_is_monotone_and_witnessed(n in 1usize..20_000) {
        let s = katona_s(n).unwrap();
        prop_assert!(s <= katona_s(n + 1).unwrap());
        let (m, w) = min_factor_sum(n).unwrap();
        prop_assert_eq!(m, s);
        prop_assert!(w.product() >= n);
        prop_assert_eq!(w.sum(), s);
    }

    #[test]
    fn katona_scales_by_three(n in 2usize..1_000_000_000) {
        // s(3n) = s(n) + 3 once n >= 2.
        prop_assert_eq!(katona_s(3 * n).unwrap(), katona_s(n).unwrap() + 3);
    }

    #[test]
    fn complete_covers_are_valid(n in 2usize..=400) {
        let c = build_complete_cover(n).unwrap();
        prop_assert_eq!(c.order(), katona_s(n).unwrap());
        prop_assert!(validate_cover(&complete(n), &c).unwrap().valid);
    }
}

#[test]
fn cut_edge_between_two_loops() {
    // K2 with both loops: the bridge splits it into two looped vertices of
    // rank 1 each, yet {1,2} joined with itself covers everything.
    let g = complete_looped(2);
    assert_eq!(exact_rank(&g), 1);
    assert_eq!(exact_rank(&looped_vertex()), 1);
}

#[test]
fn conormal_of_triangles() {
    let p = conormal_product(&complete(3), &complete(3));
    assert!(is_isomorphic(&p, &complete(9)));
    assert_eq!(rank(&p), 6);
}

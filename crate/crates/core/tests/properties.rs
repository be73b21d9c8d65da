//! Property tests for the structural invariants: parse/emit round trips,
//! permutation invariance, and dynamic program vs. oracle agreement on
//! randomly generated Eulerian multigraphs.

use proptest::prelude::*;

use orbcount::multigraph::graph_from_pairs;
use orbcount::nice::make_nice;
use orbcount::orbdp::count_euler_tours;
use orbcount::oracle::enumerate_euler_tours;
use orbcount::treedecomp::{min_fill_decompose, validate_decomposition};
use orbcount::{BigNat, MultiGraph, VertexId};

/// Arbitrary loopless edge lists on up to 6 vertices.
fn edge_list() -> impl Strategy<Value = (usize, Vec<(u32, u32)>)> {
    (2usize..=6).prop_flat_map(|n| {
        let edge = (0u32..n as u32, 0u32..n as u32)
            .prop_filter_map("no self-loops", |(u, v)| (u != v).then_some((u, v)));
        (Just(n), proptest::collection::vec(edge, 0..12))
    })
}

/// Union of a few closed walks: every vertex degree comes out even, so the
/// graph is Eulerian exactly when it is connected.
fn cycle_union() -> impl Strategy<Value = (usize, Vec<(u32, u32)>)> {
    let cycle = (2usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(0u32..n as u32, 2..=4).prop_filter_map(
            "distinct cycle vertices",
            move |mut vs| {
                vs.dedup();
                if vs.len() < 2 || vs.first() == vs.last() {
                    return None;
                }
                let mut edges = Vec::new();
                for w in vs.windows(2) {
                    edges.push((w[0], w[1]));
                }
                edges.push((*vs.last().unwrap(), vs[0]));
                Some((n, edges))
            },
        )
    });
    proptest::collection::vec(cycle, 1..=3).prop_map(|cycles| {
        let n = cycles.iter().map(|&(n, _)| n).max().unwrap();
        let edges = cycles.into_iter().flat_map(|(_, e)| e).collect();
        (n, edges)
    })
}

proptest! {
    #[test]
    fn gr_round_trip((n, pairs) in edge_list()) {
        let g = graph_from_pairs(n, &pairs);
        let text = g.to_gr_string();
        let g2 = MultiGraph::parse_edge_list(&text).unwrap();
        prop_assert_eq!(g.edges(), g2.edges());
        prop_assert_eq!(g.vertex_count(), g2.vertex_count());
        prop_assert_eq!(g2.to_gr_string(), text);
    }

    #[test]
    fn handshake_and_status_permutation_invariance((n, mut pairs) in edge_list(), seed in any::<u64>()) {
        let g = graph_from_pairs(n, &pairs);
        let degree_sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());

        // deterministic shuffle from the seed
        let mut s = seed;
        for i in (1..pairs.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pairs.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled = graph_from_pairs(n, &pairs);
        prop_assert_eq!(g.eulerian_status(), shuffled.eulerian_status());
    }

    #[test]
    fn min_fill_output_is_valid_and_nicifies((n, pairs) in edge_list()) {
        let g = graph_from_pairs(n, &pairs);
        let td = min_fill_decompose(&g);
        let report = validate_decomposition(&g, &td);
        prop_assert!(report.is_valid(), "{}", report);
        let ntd = make_nice(&td, &g, VertexId(0)).unwrap();
        prop_assert!(ntd.check_shape().is_ok());
        prop_assert_eq!(ntd.width(), td.width());
        prop_assert!(validate_decomposition(&g, &ntd.to_tree_decomposition()).is_valid());
    }

    #[test]
    fn dp_matches_tour_oracle_on_cycle_unions((n, pairs) in cycle_union()) {
        let g = graph_from_pairs(n, &pairs);
        prop_assume!(g.eulerian_status().is_eulerian);
        prop_assume!(g.edge_count() <= 12);
        let factor: BigNat = g.factorial_factor().unwrap();
        prop_assert!(factor >= BigNat::from(1u32));
        let dp: BigNat = count_euler_tours(&g, None, None).unwrap();
        let brute: BigNat = enumerate_euler_tours(&g, 12).unwrap();
        prop_assert_eq!(dp, brute);
    }
}

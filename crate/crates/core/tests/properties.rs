//! Invariants over arbitrary small inputs.

use graphmod::anonymity::{is_l_anonymous, lt_heuristic};
use graphmod::cluster_editing::{ce_lower_bound, ce_solve, is_cluster_graph, CeConfig};
use graphmod::cut::TieBreakPolicy;
use graphmod::fast::{fas_exact, Tournament};
use graphmod::hcd::hs_cluster;
use graphmod::io::{parse_str, write_dimacs, write_edge_list, write_tournament, Format, Instance};
use graphmod::vc::{lp_half_integral, nt_reduce, vc_above_lp};
use graphmod::Graph;
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter_map(|(p, keep)| keep.then_some(p))
                .collect();
            Graph::from_pairs(n, &pairs).unwrap()
        })
    })
}

fn tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let arcs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .map(|((u, v), fwd)| if fwd { (u, v) } else { (v, u) })
                .collect();
            Tournament::from_arcs(n, &arcs).unwrap()
        })
    })
}

fn as_graph(inst: Instance) -> Graph {
    match inst {
        Instance::Graph(g) => g,
        other => panic!("expected a graph, got {other:?}"),
    }
}

proptest! {
    #[test]
    fn edge_list_and_dimacs_round_trip(g in graph(9)) {
        for (text, format) in [(write_edge_list(&g), Format::EdgeList), (write_dimacs(&g), Format::Dimacs)] {
            let back = as_graph(parse_str(&text, format).unwrap().instance);
            prop_assert_eq!(back.n(), g.n());
            prop_assert_eq!(back.edge_set(), g.edge_set());
        }
    }

    #[test]
    fn tournament_round_trip(t in tournament(7)) {
        let Instance::Tournament(back) = parse_str(&write_tournament(&t), Format::Tournament).unwrap().instance else {
            panic!("not a tournament");
        };
        prop_assert_eq!(back.arcs(), t.arcs());
    }

    #[test]
    fn fas_size_ignores_vertex_names(t in tournament(7), shift in 0usize..7) {
        let n = t.n();
        let relabel = |v: usize| (v + shift) % n;
        let arcs: Vec<_> = t.arcs().into_iter().map(|(u, v)| (relabel(u), relabel(v))).collect();
        let moved = Tournament::from_arcs(n, &arcs).unwrap();
        prop_assert_eq!(fas_exact(&t).unwrap().len(), fas_exact(&moved).unwrap().len());
    }

    #[test]
    fn hs_clusters_are_valid(g in graph(9), seed in any::<u64>()) {
        for policy in [TieBreakPolicy::Lexicographic, TieBreakPolicy::Adversarial, TieBreakPolicy::Random(seed)] {
            prop_assert!(hs_cluster(&g, policy).validate(&g));
        }
    }

    #[test]
    fn ce_solution_is_cluster_graph_above_bound(g in graph(7)) {
        let cfg = CeConfig::default();
        let edits = ce_solve(&g, g.n() * g.n(), &cfg).unwrap();
        prop_assert!(is_cluster_graph(&edits.apply(&g).unwrap()));
        prop_assert!(ce_lower_bound(&g, &cfg) <= edits.len());
    }

    #[test]
    fn anonymized_graphs_only_gain_edges(g in graph(8)) {
        prop_assume!(g.n() >= 2);
        if let Ok(edits) = lt_heuristic(&g, 2) {
            prop_assert!(edits.deletions.is_empty());
            prop_assert!(is_l_anonymous(&edits.apply(&g).unwrap(), 2));
        }
    }

    #[test]
    fn nt_reduction_preserves_optimum(g in graph(9)) {
        let lp = lp_half_integral(&g);
        let red = nt_reduce(&g, &lp);
        let opt = vc_above_lp(&g, g.n()).unwrap().len();
        let residual = vc_above_lp(&red.residual, red.residual.n()).unwrap().len();
        prop_assert_eq!(red.forced_in.len() + residual, opt);
        prop_assert!(lp.lp_value().ceil() as usize <= opt);
    }
}

//! Library routines against brute-force oracles on random small graphs.

mod common;

use ltdkit::construct::{construct_auto, tree_min_ltd};
use ltdkit::ltd::{exact_min_ltd, exact_min_td, is_ltd_set, is_td_set, ltd_violation, prune_ltd, Violation};
use ltdkit::structure::{block_cut_tree, bridges, connected_components, is_connected, twin_report};
use ltdkit::{Graph, VertexSet};
use proptest::prelude::*;

use common::*;

/// A graph on `1..=max_n` vertices with each edge present independently.
fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<(usize, usize)> = pairs.zip(bits).filter(|&(_, b)| b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn graph_and_set(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), proptest::collection::vec(any::<bool>(), n))
            .prop_map(|(g, bits)| (g, (0..bits.len()).filter(|&v| bits[v]).collect()))
    })
}

fn naive_is_td(adj: &[u32], d: u32) -> bool {
    adj.iter().all(|&row| row & d != 0)
}

fn component_count(adj: &[u32], alive: u32) -> usize {
    let mut seen = 0u32;
    let mut count = 0;
    for s in 0..adj.len() {
        if alive >> s & 1 == 0 || seen >> s & 1 == 1 {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen |= 1 << s;
        while let Some(v) = stack.pop() {
            let mut next = adj[v] & alive & !seen;
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn membership_tests_match_the_definition((g, d) in graph_and_set(12)) {
        let adj = adjacency(&g);
        let m = mask_of(&d);
        prop_assert_eq!(is_td_set(&g, &d), naive_is_td(&adj, m));
        prop_assert_eq!(is_ltd_set(&g, &d), naive_is_ltd(&adj, m));
    }

    #[test]
    fn violations_are_genuine((g, d) in graph_and_set(12)) {
        match ltd_violation(&g, &d) {
            None => prop_assert!(is_ltd_set(&g, &d)),
            Some(Violation::Undominated { vertex }) => {
                prop_assert!(g.neighbors(vertex).iter().all(|&w| !d.contains(w)));
            }
            Some(Violation::Unlocated { u, v }) => {
                prop_assert!(u != v && !d.contains(u) && !d.contains(v));
                let adj = adjacency(&g);
                prop_assert_eq!(adj[u] & mask_of(&d), adj[v] & mask_of(&d));
            }
        }
    }

    #[test]
    fn exact_minimum_matches_subset_enumeration(g in graph(9)) {
        let adj = adjacency(&g);
        match (exact_min_ltd(&g, None), naive_min_ltd(&adj)) {
            (Ok(r), Some(v)) => {
                prop_assert!(r.optimality_checked);
                prop_assert_eq!(r.value, v);
                prop_assert!(naive_is_ltd(&adj, mask_of(&r.witness)));
            }
            (Err(_), None) => {}
            (r, v) => prop_assert!(false, "exact {:?} vs oracle {:?}", r.map(|r| r.value), v),
        }
    }

    #[test]
    fn total_domination_is_a_lower_bound(g in graph(9)) {
        prop_assume!(g.is_isolate_free());
        let td = exact_min_td(&g).unwrap();
        let ltd = exact_min_ltd(&g, None).unwrap();
        prop_assert!(naive_is_td(&adjacency(&g), mask_of(&td.witness)));
        prop_assert!(td.value <= ltd.value);
    }

    #[test]
    fn pruning_gives_an_inclusion_minimal_set(g in graph(10)) {
        prop_assume!(g.is_isolate_free());
        let all: VertexSet = g.vertices().collect();
        let pruned = prune_ltd(&g, &all);
        prop_assert!(is_ltd_set(&g, &pruned));
        for v in pruned.iter() {
            let mut smaller = pruned.clone();
            smaller.remove(v);
            prop_assert!(!is_ltd_set(&g, &smaller));
        }
    }

    #[test]
    fn budgeted_search_still_returns_a_valid_set(g in graph(12), budget in 1u64..200) {
        prop_assume!(g.is_isolate_free());
        let r = exact_min_ltd(&g, Some(budget)).unwrap();
        prop_assert!(is_ltd_set(&g, &r.witness));
        prop_assert_eq!(r.witness.len(), r.value);
    }

    #[test]
    fn twins_match_pairwise_comparison(g in graph(10)) {
        let adj = adjacency(&g);
        let mut expected = Vec::new();
        for u in 0..g.order() {
            for v in u + 1..g.order() {
                if adj[u] == adj[v] || adj[u] | 1 << u == adj[v] | 1 << v {
                    expected.push((u, v));
                }
            }
        }
        let mut got = twin_report(&g).pairs();
        got.sort_unstable();
        got.dedup();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn bridges_match_delete_and_count(g in graph(10)) {
        let adj = adjacency(&g);
        let all = (1u32 << g.order()) - 1;
        let base = component_count(&adj, all);
        let expected: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| {
                let mut cut = adj.clone();
                cut[u] &= !(1 << v);
                cut[v] &= !(1 << u);
                component_count(&cut, all) > base
            })
            .collect();
        let mut got = bridges(&g);
        got.sort_unstable();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn components_and_blocks_partition_correctly(g in graph(10)) {
        let adj = adjacency(&g);
        let comps = connected_components(&g);
        prop_assert_eq!(comps.len(), component_count(&adj, (1u32 << g.order()) - 1));
        prop_assert_eq!(is_connected(&g), comps.len() == 1);
        prop_assert_eq!(comps.iter().map(VertexSet::len).sum::<usize>(), g.order());
        // Every edge lies in exactly one block, and blocks with three or
        // more vertices survive the removal of any single vertex.
        let bct = block_cut_tree(&g);
        for (u, v) in g.edges() {
            let holders = bct.blocks.iter().filter(|b| b.contains(u) && b.contains(v)).count();
            prop_assert_eq!(holders, 1);
        }
        for b in bct.blocks.iter().filter(|b| b.len() >= 3) {
            let m = mask_of(b);
            for v in b.iter() {
                prop_assert_eq!(component_count(&adj, m & !(1 << v)), 1);
            }
        }
    }

    #[test]
    fn automatic_construction_is_valid(g in graph(12)) {
        prop_assume!(g.is_isolate_free());
        let cert = construct_auto(&g).unwrap();
        prop_assert!(cert.verified);
        prop_assert!(naive_is_ltd(&adjacency(&g), mask_of(&cert.set)));
        prop_assert!(exact_min_ltd(&g, None).unwrap().value <= cert.set.len());
    }
}

/// Random tree on `n` vertices from a parent sequence.
fn tree(n: usize) -> impl Strategy<Value = Graph> {
    proptest::collection::vec(any::<prop::sample::Index>(), n - 1).prop_map(move |picks| {
        let edges: Vec<(usize, usize)> = picks.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tree_dynamic_program_is_optimal(g in (2usize..=14).prop_flat_map(tree)) {
        let set = tree_min_ltd(&g).unwrap();
        prop_assert!(is_ltd_set(&g, &set));
        prop_assert_eq!(set.len(), naive_min_ltd(&adjacency(&g)).unwrap());
    }
}

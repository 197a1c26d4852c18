use proptest::prelude::*;

use subcount_core::extraction::{extract_rooted, Labeling, Policy, RootedSubgraph};
use subcount_core::generators as gen;
use subcount_core::mp::run_program;
use subcount_core::oracle::{oracle_cycles, oracle_paths};
use subcount_core::programs::{count, count_walks, ego_mask_program, spd_program, Substructure};
use subcount_core::refinement::{i2_wl, subgraph_wl, wl1};
use subcount_core::{Distance, Graph};

fn graph(max_nodes: usize) -> impl Strategy<Value = Graph> {
    (1..=max_nodes, 0.1f64..0.6, any::<u64>()).prop_map(|(n, p, seed)| gen::random(n, p, seed).unwrap())
}

fn graph_and_perm(max_nodes: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_nodes).prop_flat_map(|g| {
        let ids: Vec<usize> = g.nodes().collect();
        (Just(g), Just(ids).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn degree_sum_is_twice_edges(g in graph(20)) {
        let total: usize = g.nodes().map(|v| g.degree(v).unwrap()).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn distances_obey_triangle_inequality(g in graph(12)) {
        let d: Vec<_> = g.nodes().map(|v| g.shortest_path_distances(v).unwrap()).collect();
        for a in g.nodes() {
            for b in g.nodes() {
                for c in g.nodes() {
                    if let (Some(ab), Some(bc)) = (d[a][b].finite(), d[b][c].finite()) {
                        let ac = d[a][c].finite().expect("connected through b");
                        prop_assert!(ac <= ab + bc);
                    }
                }
            }
        }
    }

    #[test]
    fn counts_follow_relabeling((g, perm) in graph_and_perm(10)) {
        let h = g.permute(&perm).unwrap();
        for kind in Substructure::COUNTED {
            let a = count(&g, kind, None).unwrap();
            let b = count(&h, kind, None).unwrap();
            prop_assert_eq!(a.graph, b.graph);
            for v in g.nodes() {
                prop_assert_eq!(a.node[v], b.node[perm[v]], "{} at {}", kind, v);
            }
        }
    }

    #[test]
    fn colors_follow_relabeling((g, perm) in graph_and_perm(12)) {
        let h = g.permute(&perm).unwrap();
        let a = wl1(&g);
        let b = wl1(&h);
        prop_assert_eq!(a.digest(), b.digest());
        let s1 = subgraph_wl(&g, Policy::Ego(2), Labeling::Spd).unwrap();
        let s2 = subgraph_wl(&h, Policy::Ego(2), Labeling::Spd).unwrap();
        let i1 = i2_wl(&g, 1).unwrap();
        let i2 = i2_wl(&h, 1).unwrap();
        for v in g.nodes() {
            prop_assert_eq!(a.color(v), b.color(perm[v]));
            prop_assert_eq!(s1.color(v), s2.color(perm[v]));
            prop_assert_eq!(i1.color(v), i2.color(perm[v]));
        }
    }

    #[test]
    fn counts_are_local_to_components(g1 in graph(8), g2 in graph(8)) {
        let u = g1.disjoint_union(&g2);
        for kind in Substructure::COUNTED {
            let mut joined = count(&g1, kind, None).unwrap().node;
            joined.extend(count(&g2, kind, None).unwrap().node);
            prop_assert_eq!(count(&u, kind, None).unwrap().node, joined);
        }
    }

    #[test]
    fn walks_dominate_paths(g in graph(9), len in 2usize..=4) {
        let paths = oracle_paths(&g, len).unwrap();
        for i in g.nodes() {
            for j in g.nodes() {
                prop_assert!(count_walks(&g, len as u32, i, j).unwrap() >= paths.between(i, j));
            }
        }
    }

    #[test]
    fn oracle_aggregation_identities(g in graph(10)) {
        for len in 3..=6 {
            let c = oracle_cycles(&g, len).unwrap();
            prop_assert_eq!(c.node.iter().sum::<u64>(), len as u64 * c.graph);
        }
        for len in 2..=4 {
            let p = oracle_paths(&g, len).unwrap();
            prop_assert_eq!(p.endpoint.iter().sum::<u64>(), 2 * p.graph);
        }
    }

    #[test]
    fn ego_mask_and_distance_programs_match_extraction(g in graph(16), hops in 1u32..4) {
        for root in g.nodes() {
            let whole = RootedSubgraph::whole(&g, root, Labeling::Identity).unwrap();
            let mask = run_program(&whole, &ego_mask_program(hops)).unwrap();
            let spd = run_program(&whole, &spd_program(hops)).unwrap();
            let ego = extract_rooted(&g, root, Policy::Ego(hops), Labeling::Spd).unwrap();
            let dist = g.shortest_path_distances(root).unwrap();
            for v in g.nodes() {
                let inside = ego.structure().local_index(v).is_some();
                prop_assert_eq!(mask.get(v, 0) == 1, inside);
                prop_assert_eq!(spd.get(v, 0) == 1, inside);
                if inside {
                    let local = ego.structure().local_index(v).unwrap();
                    prop_assert_eq!(Some(spd.get(v, 1)), ego.labels()[local].spd_root.finite().map(i64::from));
                    prop_assert_eq!(dist[v], Distance::Finite(spd.get(v, 1) as u32));
                }
            }
        }
    }
}

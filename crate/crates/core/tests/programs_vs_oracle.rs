use subcount_core::generators as gen;
use subcount_core::oracle::{oracle_count, oracle_cycle6_patterns, oracle_paths};
use subcount_core::programs::{count, count_path4_edge, Substructure};
use subcount_core::Graph;

fn corpus() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in [6, 9, 12] {
        for p in [0.25, 0.5] {
            for seed in 0..6 {
                out.push(gen::random(n, p, seed).unwrap());
            }
        }
    }
    out
}

#[test]
fn every_kind_matches_enumeration() {
    for (idx, g) in corpus().iter().enumerate() {
        for kind in Substructure::COUNTED {
            let got = count(g, kind, None).unwrap();
            let want = oracle_count(g, kind).unwrap();
            assert_eq!(got.node, want.node, "{kind} node counts, graph #{idx}");
            assert_eq!(got.graph, want.graph, "{kind} graph count, graph #{idx}");
        }
    }
}

#[test]
fn six_cycle_patterns_match_enumeration() {
    for g in corpus() {
        let got = count(&g, Substructure::Cycle6, None).unwrap().patterns.unwrap();
        assert_eq!(got, oracle_cycle6_patterns(&g).unwrap());
    }
}

#[test]
fn larger_radius_changes_nothing() {
    let g = gen::random(10, 0.4, 7).unwrap();
    for kind in Substructure::COUNTED {
        let base = count(&g, kind, None).unwrap();
        let wide = count(&g, kind, Some(kind.default_hops() + 2)).unwrap();
        assert_eq!(base.node, wide.node, "{kind}");
    }
}

#[test]
fn path4_table_matches_pairs_within_three_hops() {
    for seed in 0..5 {
        let g = gen::random(10, 0.35, seed).unwrap();
        let table = count_path4_edge(&g, 3).unwrap();
        let paths = oracle_paths(&g, 4).unwrap();
        for i in g.nodes() {
            let dist = g.shortest_path_distances(i).unwrap();
            for k in g.nodes().filter(|&k| dist[k].is_within(3)) {
                let via: u64 = g
                    .neighbors(i)
                    .iter()
                    .map(|&j| table.get(&(i, j, k)).copied().unwrap_or(0))
                    .sum();
                assert_eq!(via, paths.between(i, k), "seed {seed}, ({i}, {k})");
            }
        }
    }
}

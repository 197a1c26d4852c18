use proptest::prelude::*;

use subcount::formats::{parse_edgelist, parse_graph6_line, write_edgelist};
use subcount_core::generators as gen;
use subcount_core::Graph;

/// Straightforward graph6 encoder for graphs with at most 62 nodes.
fn to_graph6(g: &Graph) -> String {
    let n = g.node_count();
    let mut out = vec![(n + 63) as u8];
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for k in 0..6 {
            v = v << 1 | chunk.get(k).copied().unwrap_or(false) as u8;
        }
        out.push(v + 63);
    }
    String::from_utf8(out).unwrap()
}

#[test]
fn graph6_agrees_with_edge_lists_up_to_five_nodes() {
    for n in 0..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let mut text = format!("{n} {}\n", edges.len());
            for (u, v) in &edges {
                text += &format!("{u} {v}\n");
            }
            let from_el = parse_edgelist(&text).unwrap();
            let from_g6 = parse_graph6_line(&to_graph6(&from_el)).unwrap();
            assert_eq!(from_g6, from_el, "n={n} mask={mask}");
        }
    }
}

#[test]
fn graph6_named_graphs() {
    for g in [gen::rook4x4(), gen::shrikhande(), gen::petersen(), gen::complete(7)] {
        assert_eq!(parse_graph6_line(&to_graph6(&g)).unwrap(), g);
    }
}

proptest! {
    #[test]
    fn edge_list_round_trip(n in 0usize..30, p in 0.0f64..1.0, seed in any::<u64>(), shuffle_seed in any::<u64>()) {
        let g = gen::random(n, p, seed).unwrap();
        // write edges in a scrambled order with random orientation
        let mut edges: Vec<_> = g.edges().collect();
        let mut state = shuffle_seed | 1;
        let mut lines = Vec::new();
        while !edges.is_empty() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let (u, v) = edges.swap_remove(state as usize % edges.len());
            lines.push(if state & 1 == 0 { format!("{u} {v}") } else { format!("{v} {u}") });
        }
        let text = format!("{n} {}\n{}\n", lines.len(), lines.join("\n"));
        let loaded = parse_edgelist(&text).unwrap();
        prop_assert_eq!(&loaded, &g);
        let canonical = write_edgelist(&loaded);
        prop_assert_eq!(write_edgelist(&parse_edgelist(&canonical).unwrap()), canonical.clone());
        prop_assert_eq!(canonical, write_edgelist(&g));
    }
}

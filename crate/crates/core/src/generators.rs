//! Named graphs and graph families, plus seeded random graphs.
//!
//! Apex-style constructions put the apex at node 0. Grid-style constructions
//! on `Z4 x Z4` number the vertex `(r, c)` as `4 * r + c`.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("cycle length must be at least 3, got {0}")]
    CycleTooShort(usize),
    #[error("edge probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("no {degree}-regular graph on {nodes} nodes")]
    InvalidRegular { nodes: usize, degree: usize },
}

fn edges_to_graph(n: usize, edges: &[(NodeId, NodeId)]) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced an invalid edge list")
}

fn cycle_edges(nodes: &[NodeId]) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
    (0..nodes.len()).map(move |k| (nodes[k], nodes[(k + 1) % nodes.len()]))
}

fn check_cycle_len(len: usize) -> Result<(), GenError> {
    if len < 3 {
        Err(GenError::CycleTooShort(len))
    } else {
        Ok(())
    }
}

pub fn cycle(len: usize) -> Result<Graph, GenError> {
    check_cycle_len(len)?;
    let nodes: Vec<_> = (0..len).collect();
    Ok(edges_to_graph(len, &cycle_edges(&nodes).collect::<Vec<_>>()))
}

/// `(2 x C_len, C_2len)`: two graphs with identical degree sequences.
pub fn cycle_pair(len: usize) -> Result<(Graph, Graph), GenError> {
    check_cycle_len(len)?;
    let first: Vec<_> = (0..len).collect();
    let second: Vec<_> = (len..2 * len).collect();
    let split: Vec<_> = cycle_edges(&first).chain(cycle_edges(&second)).collect();
    Ok((edges_to_graph(2 * len, &split), cycle(2 * len)?))
}

/// Apex (node 0) joined to every node of `C_2len`, and apex joined to every
/// node of two disjoint `C_len`.
pub fn coned_cycles(len: usize) -> Result<(Graph, Graph), GenError> {
    check_cycle_len(len)?;
    let n = 2 * len + 1;
    let ring: Vec<_> = (1..n).collect();
    let spokes = (1..n).map(|v| (0, v));
    let joined: Vec<_> = spokes.clone().chain(cycle_edges(&ring)).collect();
    let split: Vec<_> = spokes
        .chain(cycle_edges(&ring[..len]))
        .chain(cycle_edges(&ring[len..]))
        .collect();
    Ok((edges_to_graph(n, &joined), edges_to_graph(n, &split)))
}

fn cayley_z4xz4(connection: &[(usize, usize)]) -> Graph {
    let mut edges = Vec::new();
    for r in 0..4 {
        for c in 0..4 {
            for &(dr, dc) in connection {
                let (r2, c2) = ((r + dr) % 4, (c + dc) % 4);
                let (u, v) = (4 * r + c, 4 * r2 + c2);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
    }
    edges_to_graph(16, &edges)
}

/// 4x4 rook's graph: same row or same column.
pub fn rook4x4() -> Graph {
    // every nonzero shift along a single coordinate
    cayley_z4xz4(&[(0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0)])
}

/// Shrikhande graph as the Cayley graph of `Z4 x Z4` with connection set
/// `{±(1,0), ±(0,1), ±(1,1)}`.
pub fn shrikhande() -> Graph {
    cayley_z4xz4(&[(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)])
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for k in 0..5 {
        edges.push((k, (k + 1) % 5));
        edges.push((k, k + 5));
        edges.push((5 + k, 5 + (k + 2) % 5));
    }
    edges_to_graph(10, &edges)
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    edges_to_graph(n, &edges)
}

/// Path on `nodes` nodes (`nodes - 1` edges).
pub fn path(nodes: usize) -> Graph {
    let edges: Vec<_> = (1..nodes).map(|v| (v - 1, v)).collect();
    edges_to_graph(nodes, &edges)
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    edges_to_graph(leaves + 1, &edges)
}

/// Triangle 0-1-2 with a pendant node 3 attached to node 0.
pub fn paw() -> Graph {
    edges_to_graph(4, &[(0, 1), (1, 2), (0, 2), (0, 3)])
}

/// `K4` minus the edge `{0, 3}`; nodes 1 and 2 carry the chord.
pub fn diamond() -> Graph {
    edges_to_graph(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
}

/// Erdős–Rényi `G(n, p)`, deterministic per seed.
pub fn random(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::InvalidProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(edges_to_graph(n, &edges))
}

/// Uniform-ish random `degree`-regular graph by stub pairing with restarts.
pub fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Graph, GenError> {
    if !(n * degree).is_multiple_of(2) || (n > 0 && degree >= n) {
        return Err(GenError::InvalidRegular { nodes: n, degree });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacency: Vec<Vec<NodeId>> = Vec::new();
    'restart: loop {
        adjacency.clear();
        adjacency.resize(n, Vec::new());
        let mut stubs: Vec<NodeId> = (0..n).flat_map(|v| core::iter::repeat_n(v, degree)).collect();
        stubs.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(n * degree / 2);
        let mut misses = 0usize;
        while !stubs.is_empty() {
            let a = rng.gen_range(0..stubs.len());
            let b = rng.gen_range(0..stubs.len());
            let (u, v) = (stubs[a], stubs[b]);
            if a == b || u == v || adjacency[u].contains(&v) {
                misses += 1;
                if misses > 64 + 8 * stubs.len() {
                    continue 'restart;
                }
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edges.push((u, v));
            let (hi, lo) = (a.max(b), a.min(b));
            stubs.swap_remove(hi);
            stubs.swap_remove(lo);
        }
        return Ok(edges_to_graph(n, &edges));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn srg_parameters(g: &Graph) -> Option<(usize, usize, usize, usize)> {
        let n = g.node_count();
        let k = g.degree(0).ok()?;
        let mut lambda = None;
        let mut mu = None;
        for u in 0..n {
            if g.degree(u).ok()? != k {
                return None;
            }
            for v in u + 1..n {
                let c = g.common_neighbors(u, v);
                let slot = if g.has_edge(u, v) { &mut lambda } else { &mut mu };
                if *slot.get_or_insert(c) != c {
                    return None;
                }
            }
        }
        Some((n, k, lambda?, mu?))
    }

    #[test]
    fn cycles() {
        assert_eq!(cycle(3).unwrap(), complete(3));
        let c6 = cycle(6).unwrap();
        assert!(c6.nodes().all(|v| c6.degree(v).unwrap() == 2));
        assert_eq!(cycle(2), Err(GenError::CycleTooShort(2)));
        assert!(cycle_pair(2).is_err());
        assert!(coned_cycles(1).is_err());
    }

    #[test]
    fn cycle_pair_shapes() {
        let (split, joined) = cycle_pair(3).unwrap();
        assert_eq!(split.node_count(), 6);
        assert_eq!(joined, cycle(6).unwrap());
        assert!(split.has_edge(0, 2) && split.has_edge(3, 5) && !split.has_edge(2, 3));
    }

    #[test]
    fn coned_shapes() {
        let (joined, split) = coned_cycles(3).unwrap();
        assert_eq!(joined.degree(0).unwrap(), 6);
        assert_eq!(split.degree(0).unwrap(), 6);
        assert_eq!(joined.edge_count(), 12);
        assert_eq!(split.edge_count(), 12);
        assert!(split.has_edge(1, 3) && !split.has_edge(3, 4));
        assert!(joined.has_edge(3, 4) && joined.has_edge(6, 1));
    }

    #[test]
    fn strongly_regular_pair() {
        for g in [rook4x4(), shrikhande()] {
            assert_eq!(g.node_count(), 16);
            assert_eq!(g.edge_count(), 48);
            assert_eq!(srg_parameters(&g), Some((16, 6, 2, 2)));
        }
        assert_ne!(rook4x4(), shrikhande());
    }

    #[test]
    fn petersen_is_srg_10_3_0_1() {
        assert_eq!(srg_parameters(&petersen()), Some((10, 3, 0, 1)));
    }

    #[test]
    fn random_graphs() {
        assert_eq!(random(0, 0.5, 9).unwrap().node_count(), 0);
        assert_eq!(random(20, 1.0, 3).unwrap(), complete(20));
        assert_eq!(random(20, 0.0, 3).unwrap().edge_count(), 0);
        assert_eq!(random(15, 0.3, 42).unwrap(), random(15, 0.3, 42).unwrap());
        assert_ne!(random(15, 0.3, 42).unwrap(), random(15, 0.3, 43).unwrap());
        assert!(random(3, 1.5, 0).is_err());
    }

    #[test]
    fn regular_graphs() {
        let g = random_regular(200, 4, 7).unwrap();
        assert!(g.nodes().all(|v| g.degree(v).unwrap() == 4));
        assert_eq!(g, random_regular(200, 4, 7).unwrap());
        assert!(random_regular(5, 3, 0).is_err());
        assert_eq!(random_regular(0, 4, 0).unwrap().node_count(), 0);
    }
}

//! Immutable simple undirected graphs in compressed adjacency form.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Node index into a [`Graph`]. Indices are dense and 0-based.
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on node {node}")]
    SelfLoop { node: NodeId },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: NodeId, v: NodeId },
    #[error("node {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: NodeId, node_count: usize },
    #[error("expected {expected} attribute entries, got {got}")]
    AttributeLength { expected: usize, got: usize },
    #[error("permutation is not a bijection on {node_count} nodes")]
    InvalidPermutation { node_count: usize },
}

/// Hop distance from a BFS source. Unreachable nodes carry a dedicated
/// marker and never a large finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_within(self, hops: u32) -> bool {
        matches!(self, Distance::Finite(d) if d <= hops)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("inf"),
        }
    }
}

/// A simple undirected graph. Neighbor lists are sorted ascending, there are
/// no self-loops or parallel edges, and adjacency is symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    node_attrs: Option<Vec<Vec<i64>>>,
    // aligned with `targets`, so both directions of an edge hold the label
    edge_attrs: Option<Vec<i64>>,
}

impl Graph {
    pub fn empty(node_count: usize) -> Self {
        Graph {
            offsets: vec![0; node_count + 1],
            targets: Vec::new(),
            node_attrs: None,
            edge_attrs: None,
        }
    }

    /// Builds a validated graph from an unordered edge list.
    pub fn from_edges(node_count: usize, edges: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        Self::build(node_count, edges.iter().map(|&(u, v)| (u, v, None)))
    }

    /// Like [`Graph::from_edges`] with one integer label per edge.
    pub fn from_labeled_edges(
        node_count: usize,
        edges: &[(NodeId, NodeId, i64)],
    ) -> Result<Self, GraphError> {
        Self::build(node_count, edges.iter().map(|&(u, v, a)| (u, v, Some(a))))
    }

    fn build<I>(node_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: Iterator<Item = (NodeId, NodeId, Option<i64>)>,
    {
        let mut half: Vec<(NodeId, NodeId, Option<i64>)> = Vec::new();
        let mut labeled = None;
        for (u, v, attr) in edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(GraphError::NodeOutOfRange { node, node_count });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { node: u });
            }
            labeled.get_or_insert(attr.is_some());
            half.push((u, v, attr));
            half.push((v, u, attr));
        }
        half.sort_unstable_by_key(|&(u, v, _)| (u, v));
        for w in half.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                let (u, v) = (w[0].0.min(w[0].1), w[0].0.max(w[0].1));
                return Err(GraphError::DuplicateEdge { u, v });
            }
        }
        let mut offsets = vec![0; node_count + 1];
        for &(u, _, _) in &half {
            offsets[u + 1] += 1;
        }
        for i in 0..node_count {
            offsets[i + 1] += offsets[i];
        }
        let edge_attrs = if labeled == Some(true) {
            Some(half.iter().map(|e| e.2.unwrap_or(0)).collect())
        } else {
            None
        };
        Ok(Graph {
            offsets,
            targets: half.into_iter().map(|e| e.1).collect(),
            node_attrs: None,
            edge_attrs,
        })
    }

    /// Attaches one integer label vector per node.
    pub fn with_node_attrs(mut self, attrs: Vec<Vec<i64>>) -> Result<Self, GraphError> {
        if attrs.len() != self.node_count() {
            return Err(GraphError::AttributeLength {
                expected: self.node_count(),
                got: attrs.len(),
            });
        }
        self.node_attrs = Some(attrs);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.node_count() == 0
    }

    pub fn nodes(&self) -> core::ops::Range<NodeId> {
        0..self.node_count()
    }

    /// Sorted neighbors of `i`. Panics when `i` is out of range.
    #[inline]
    pub fn neighbors(&self, i: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degree(&self, i: NodeId) -> Result<usize, GraphError> {
        self.check_node(i)?;
        Ok(self.offsets[i + 1] - self.offsets[i])
    }

    pub fn max_degree(&self) -> usize {
        self.nodes()
            .map(|i| self.offsets[i + 1] - self.offsets[i])
            .max()
            .unwrap_or(0)
    }

    pub fn check_node(&self, i: NodeId) -> Result<(), GraphError> {
        if i < self.node_count() {
            Ok(())
        } else {
            Err(GraphError::NodeOutOfRange {
                node: i,
                node_count: self.node_count(),
            })
        }
    }

    #[inline]
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn node_attrs(&self, i: NodeId) -> Option<&[i64]> {
        self.node_attrs.as_ref().map(|a| a[i].as_slice())
    }

    pub fn has_edge_attrs(&self) -> bool {
        self.edge_attrs.is_some()
    }

    pub fn edge_attr(&self, u: NodeId, v: NodeId) -> Option<i64> {
        let attrs = self.edge_attrs.as_ref()?;
        let pos = self.neighbors(u).binary_search(&v).ok()?;
        Some(attrs[self.offsets[u] + pos])
    }

    /// BFS hop distances from `source`; the source itself is at distance 0.
    pub fn shortest_path_distances(&self, source: NodeId) -> Result<Vec<Distance>, GraphError> {
        self.check_node(source)?;
        Ok(self.bfs_within(source, u32::MAX))
    }

    /// BFS that stops expanding past `max_hops`; nodes beyond are unreachable.
    fn bfs_within(&self, source: NodeId, max_hops: u32) -> Vec<Distance> {
        let mut dist = vec![Distance::Unreachable; self.node_count()];
        dist[source] = Distance::Finite(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let Distance::Finite(du) = dist[u] else {
                unreachable!()
            };
            if du >= max_hops {
                continue;
            }
            for &v in self.neighbors(u) {
                if dist[v] == Distance::Unreachable {
                    dist[v] = Distance::Finite(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Nodes within `max_hops` of `source` with their distances. Cost is
    /// proportional to the ball, not to the graph.
    pub(crate) fn ball(&self, source: NodeId, max_hops: u32) -> BTreeMap<NodeId, u32> {
        let mut dist = BTreeMap::from([(source, 0u32)]);
        let mut frontier = vec![source];
        let mut d = 0;
        while d < max_hops && !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for u in frontier {
                for &v in self.neighbors(u) {
                    if let alloc::collections::btree_map::Entry::Vacant(e) = dist.entry(v) {
                        e.insert(d);
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permute(&self, perm: &[NodeId]) -> Result<Graph, GraphError> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(GraphError::InvalidPermutation { node_count: n });
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(GraphError::InvalidPermutation { node_count: n });
            }
            seen[p] = true;
        }
        let mut g = if let Some(attrs) = &self.edge_attrs {
            let edges: Vec<_> = self
                .nodes()
                .flat_map(|u| {
                    let base = self.offsets[u];
                    self.neighbors(u)
                        .iter()
                        .enumerate()
                        .filter(move |(_, &v)| u < v)
                        .map(move |(k, &v)| (perm[u], perm[v], attrs[base + k]))
                })
                .collect();
            Graph::from_labeled_edges(n, &edges)?
        } else {
            let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
            Graph::from_edges(n, &edges)?
        };
        if let Some(attrs) = &self.node_attrs {
            let mut moved = vec![Vec::new(); n];
            for (i, a) in attrs.iter().enumerate() {
                moved[perm[i]] = a.clone();
            }
            g.node_attrs = Some(moved);
        }
        Ok(g)
    }

    /// Disjoint union; nodes of `other` are shifted by `self.node_count()`.
    /// Attributes are dropped unless both operands carry them.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.node_count();
        let n = shift + other.node_count();
        let mut offsets = self.offsets.clone();
        let base = self.targets.len();
        offsets.extend(other.offsets[1..].iter().map(|o| o + base));
        let mut targets = self.targets.clone();
        targets.extend(other.targets.iter().map(|t| t + shift));
        debug_assert_eq!(offsets.len(), n + 1);
        let node_attrs = match (&self.node_attrs, &other.node_attrs) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        let edge_attrs = match (&self.edge_attrs, &other.edge_attrs) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Graph {
            offsets,
            targets,
            node_attrs,
            edge_attrs,
        }
    }

    /// Number of common neighbors of `u` and `v`.
    pub fn common_neighbors(&self, u: NodeId, v: NodeId) -> usize {
        let (a, b) = (self.neighbors(u), self.neighbors(v));
        let (mut x, mut y, mut count) = (0, 0, 0);
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                core::cmp::Ordering::Less => x += 1,
                core::cmp::Ordering::Greater => y += 1,
                core::cmp::Ordering::Equal => {
                    count += 1;
                    x += 1;
                    y += 1;
                }
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn triangle_degrees() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        for i in 0..3 {
            assert_eq!(g.degree(i).unwrap(), 2);
        }
        assert_eq!(g.neighbors(0), &[1, 2]);
    }

    #[test]
    fn rejects_invalid_edges() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 0)]),
            Err(GraphError::SelfLoop { node: 0 })
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        );
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::NodeOutOfRange { node: 2, .. })
        ));
    }

    #[test]
    fn degree_out_of_range() {
        let g = path(3);
        assert!(g.degree(3).is_err());
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.degree(0).unwrap(), 4);
    }

    #[test]
    fn bfs_distances() {
        let d = path(4).shortest_path_distances(0).unwrap();
        assert_eq!(d, [0, 1, 2, 3].map(Distance::Finite));

        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            two.shortest_path_distances(0).unwrap(),
            [
                Distance::Finite(0),
                Distance::Finite(1),
                Distance::Unreachable,
                Distance::Unreachable
            ]
        );

        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert_eq!(
            c6.shortest_path_distances(0).unwrap(),
            [0, 1, 2, 3, 2, 1].map(Distance::Finite)
        );
        assert!(c6.shortest_path_distances(6).is_err());
    }

    #[test]
    fn union_and_permutation() {
        let g = path(3).disjoint_union(&path(2));
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 1), (1, 2), (3, 4)]);
        let p = g.permute(&[4, 3, 2, 1, 0]).unwrap();
        assert_eq!(p.edges().collect::<Vec<_>>(), [(0, 1), (2, 3), (3, 4)]);
        assert!(g.permute(&[0, 0, 1, 2, 3]).is_err());
    }

    #[test]
    fn edge_attributes_follow_both_directions() {
        let g = Graph::from_labeled_edges(3, &[(0, 1, 7), (2, 1, -3)]).unwrap();
        assert_eq!(g.edge_attr(1, 0), Some(7));
        assert_eq!(g.edge_attr(1, 2), Some(-3));
        assert_eq!(g.edge_attr(0, 2), None);
        let p = g.permute(&[2, 1, 0]).unwrap();
        assert_eq!(p.edge_attr(2, 1), Some(7));
    }
}

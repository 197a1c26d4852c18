//! Rooted subgraph policies: node deletion and K-hop ego-networks for one
//! root, and root/branching pairs that share the root's ego-network.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::exec::{Executor, Sequential};
use crate::graph::{Distance, Graph, GraphError, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Labeling {
    /// Indicator of the root (and of the branching node, when present).
    Identity,
    /// Shortest-path distance to the root (and to the branching node).
    Spd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Policy {
    /// Drop the root and its incident edges; the root id stays as metadata.
    NodeDeletion,
    /// Induced subgraph on nodes within `k` hops of the root, `k >= 1`.
    Ego(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("ego-network radius must be at least 1")]
    ZeroHops,
    #[error("branching node {branching} is not a neighbor of root {root}")]
    NotAdjacent { root: NodeId, branching: NodeId },
}

/// Which kind of rooted subgraph a bag holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BagMode {
    /// One subgraph per node.
    Node,
    /// One subgraph per ordered adjacent pair `(root, branching)`.
    Pair,
}

/// Node set and induced edges of a subgraph, reindexed locally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalGraph {
    nodes: Vec<NodeId>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    edge_attrs: Option<Vec<i64>>,
    node_attrs: Option<Vec<Vec<i64>>>,
}

impl LocalGraph {
    /// Induced subgraph of `g` on the sorted node set `nodes`.
    fn induced(g: &Graph, nodes: Vec<NodeId>) -> Self {
        let mut offsets = Vec::with_capacity(nodes.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        let mut edge_attrs = g.has_edge_attrs().then(Vec::new);
        for &v in &nodes {
            for &w in g.neighbors(v) {
                if let Ok(local) = nodes.binary_search(&w) {
                    targets.push(local as u32);
                    if let Some(attrs) = edge_attrs.as_mut() {
                        attrs.push(g.edge_attr(v, w).unwrap_or(0));
                    }
                }
            }
            offsets.push(targets.len());
        }
        let node_attrs = g.node_attrs(0).map(|_| {
            nodes
                .iter()
                .map(|&v| g.node_attrs(v).unwrap_or(&[]).to_vec())
                .collect()
        });
        LocalGraph {
            nodes,
            offsets,
            targets,
            edge_attrs,
            node_attrs,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Parent-graph ids, ascending.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    #[inline]
    pub fn neighbors(&self, local: usize) -> &[u32] {
        &self.targets[self.offsets[local]..self.offsets[local + 1]]
    }

    #[inline]
    pub fn edge_attr_at(&self, local: usize, nth: usize) -> i64 {
        self.edge_attrs
            .as_ref()
            .map_or(0, |a| a[self.offsets[local] + nth])
    }

    pub fn node_attrs(&self, local: usize) -> &[i64] {
        self.node_attrs.as_ref().map_or(&[], |a| a[local].as_slice())
    }

    pub fn local_index(&self, parent: NodeId) -> Option<usize> {
        self.nodes.binary_search(&parent).ok()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }
}

/// Per-node labels of a rooted subgraph. The adjacency indicators are one
/// message-passing layer away from the identifiers and are precomputed here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeLabel {
    pub is_root: bool,
    pub is_branch: bool,
    pub root_adj: bool,
    pub branch_adj: bool,
    pub spd_root: Distance,
    pub spd_branch: Option<Distance>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedSubgraph {
    root: NodeId,
    branching: Option<NodeId>,
    labeling: Labeling,
    structure: Arc<LocalGraph>,
    labels: Vec<NodeLabel>,
}

impl RootedSubgraph {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn branching(&self) -> Option<NodeId> {
        self.branching
    }

    pub fn labeling(&self) -> Labeling {
        self.labeling
    }

    pub fn structure(&self) -> &LocalGraph {
        &self.structure
    }

    pub fn len(&self) -> usize {
        self.structure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.structure.is_empty()
    }

    pub fn local_nodes(&self) -> &[NodeId] {
        self.structure.nodes()
    }

    pub fn labels(&self) -> &[NodeLabel] {
        &self.labels
    }

    pub fn root_local(&self) -> Option<usize> {
        self.structure.local_index(self.root)
    }

    pub fn branch_local(&self) -> Option<usize> {
        self.branching.and_then(|b| self.structure.local_index(b))
    }

    /// Retained edges in parent-graph ids, `(u, v)` with `u < v`.
    pub fn local_edges(&self) -> Vec<(NodeId, NodeId)> {
        let s = &*self.structure;
        let mut edges = Vec::with_capacity(s.edge_count());
        for k in 0..s.len() {
            for &l in s.neighbors(k) {
                let (u, v) = (s.nodes[k], s.nodes[l as usize]);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        edges
    }

    /// The labeling vector `z` of a local node.
    pub fn z(&self, local: usize) -> Vec<i64> {
        let l = &self.labels[local];
        let dist = |d: Distance| d.finite().map_or(-1, i64::from);
        match (self.labeling, self.branching.is_some()) {
            (Labeling::Identity, false) => vec![l.is_root as i64],
            (Labeling::Identity, true) => vec![l.is_root as i64, l.is_branch as i64],
            (Labeling::Spd, false) => vec![dist(l.spd_root)],
            (Labeling::Spd, true) => vec![
                dist(l.spd_root),
                dist(l.spd_branch.unwrap_or(Distance::Unreachable)),
            ],
        }
    }

    /// Copy sharing the same structure with a new branching node.
    pub fn with_branching(&self, g: &Graph, branching: NodeId) -> Result<Self, ExtractError> {
        if !g.has_edge(self.root, branching) {
            return Err(ExtractError::NotAdjacent {
                root: self.root,
                branching,
            });
        }
        // Every node of the subgraph is within (its root distance + 1) of
        // the branching node, so a bounded search is exact.
        let spd_branch = match self.labeling {
            Labeling::Spd => {
                let reach = self
                    .labels
                    .iter()
                    .filter_map(|l| match l.spd_root {
                        Distance::Finite(d) => Some(d),
                        Distance::Unreachable => None,
                    })
                    .max()
                    .unwrap_or(0);
                Some(g.ball(branching, reach + 1))
            }
            Labeling::Identity => None,
        };
        let labels = self
            .structure
            .nodes
            .iter()
            .zip(&self.labels)
            .map(|(&v, l)| NodeLabel {
                is_branch: v == branching,
                branch_adj: g.has_edge(branching, v),
                spd_branch: spd_branch.as_ref().map(|d| finite_or_unreachable(d.get(&v))),
                ..*l
            })
            .collect();
        Ok(RootedSubgraph {
            branching: Some(branching),
            structure: Arc::clone(&self.structure),
            labels,
            ..*self
        })
    }

    /// The whole parent graph with `root` marked.
    pub fn whole(g: &Graph, root: NodeId, labeling: Labeling) -> Result<Self, GraphError> {
        g.check_node(root)?;
        let structure = LocalGraph::induced(g, g.nodes().collect());
        let spd = g.ball(root, u32::MAX);
        Ok(Self::labeled(g, root, labeling, structure, &spd))
    }

    fn labeled(
        g: &Graph,
        root: NodeId,
        labeling: Labeling,
        structure: LocalGraph,
        spd: &BTreeMap<NodeId, u32>,
    ) -> Self {
        let labels = structure
            .nodes
            .iter()
            .map(|&v| NodeLabel {
                is_root: v == root,
                is_branch: false,
                root_adj: g.has_edge(root, v),
                branch_adj: false,
                spd_root: finite_or_unreachable(spd.get(&v)),
                spd_branch: None,
            })
            .collect();
        RootedSubgraph {
            root,
            branching: None,
            labeling,
            structure: Arc::new(structure),
            labels,
        }
    }
}

fn finite_or_unreachable(d: Option<&u32>) -> Distance {
    d.map_or(Distance::Unreachable, |&d| Distance::Finite(d))
}

/// Extracts one rooted subgraph.
pub fn extract_rooted(
    g: &Graph,
    root: NodeId,
    policy: Policy,
    labeling: Labeling,
) -> Result<RootedSubgraph, ExtractError> {
    g.check_node(root)?;
    let (structure, spd) = match policy {
        Policy::NodeDeletion => (
            LocalGraph::induced(g, g.nodes().filter(|&v| v != root).collect()),
            g.ball(root, u32::MAX),
        ),
        Policy::Ego(0) => return Err(ExtractError::ZeroHops),
        Policy::Ego(k) => {
            let ball = g.ball(root, k);
            (LocalGraph::induced(g, ball.keys().copied().collect()), ball)
        }
    };
    Ok(RootedSubgraph::labeled(g, root, labeling, structure, &spd))
}

/// A complete family of rooted subgraphs, ordered by root then branching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphBag {
    mode: BagMode,
    node_count: usize,
    subgraphs: Vec<RootedSubgraph>,
}

impl SubgraphBag {
    pub fn mode(&self) -> BagMode {
        self.mode
    }

    /// Node count of the parent graph.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn subgraphs(&self) -> &[RootedSubgraph] {
        &self.subgraphs
    }

    pub fn len(&self) -> usize {
        self.subgraphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgraphs.is_empty()
    }
}

pub fn extract_bag_subgraph_mpnn(
    g: &Graph,
    policy: Policy,
    labeling: Labeling,
) -> Result<SubgraphBag, ExtractError> {
    extract_bag_subgraph_mpnn_with(g, policy, labeling, &Sequential)
}

pub fn extract_bag_subgraph_mpnn_with<E: Executor>(
    g: &Graph,
    policy: Policy,
    labeling: Labeling,
    exec: &E,
) -> Result<SubgraphBag, ExtractError> {
    if policy == Policy::Ego(0) {
        return Err(ExtractError::ZeroHops);
    }
    let subgraphs = crate::exec::try_map(exec, g.node_count(), |root| {
        extract_rooted(g, root, policy, labeling)
    })?;
    Ok(SubgraphBag {
        mode: BagMode::Node,
        node_count: g.node_count(),
        subgraphs,
    })
}

/// One subgraph per ordered adjacent pair; each pair shares the root's
/// `hops`-hop ego-network.
pub fn extract_bag_i2(g: &Graph, hops: u32, labeling: Labeling) -> Result<SubgraphBag, ExtractError> {
    extract_bag_i2_with(g, hops, labeling, &Sequential)
}

pub fn extract_bag_i2_with<E: Executor>(
    g: &Graph,
    hops: u32,
    labeling: Labeling,
    exec: &E,
) -> Result<SubgraphBag, ExtractError> {
    if hops == 0 {
        return Err(ExtractError::ZeroHops);
    }
    let per_root = crate::exec::try_map(exec, g.node_count(), |root| {
        let base = extract_rooted(g, root, Policy::Ego(hops), labeling)?;
        g.neighbors(root)
            .iter()
            .map(|&j| base.with_branching(g, j))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(SubgraphBag {
        mode: BagMode::Pair,
        node_count: g.node_count(),
        subgraphs: per_root.into_iter().flatten().collect(),
    })
}

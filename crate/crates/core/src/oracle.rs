//! Brute-force ground truth by exhaustive enumeration.
//!
//! Nothing here shares code with the message-passing programs: paths and
//! cycles come from depth-first search with a visited set, graphlets from
//! direct neighborhood scans, walks from repeated adjacency products.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::exec::{Executor, Sequential};
use crate::graph::{Graph, GraphError, NodeId};
use crate::programs::{CountReport, PatternCounts, Substructure};

/// Default cap on estimated enumeration steps.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("path length must lie in 2..=6, got {0}")]
    PathLength(usize),
    #[error("cycle length must lie in 3..=8, got {0}")]
    CycleLength(usize),
    #[error("walk length must be at least 1")]
    WalkLength,
    #[error("enumeration would take about {estimate} steps, over the budget of {budget}")]
    Budget { estimate: u64, budget: u64 },
    #[error("walk count overflows 64 bits")]
    Overflow,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCounts {
    pub len: usize,
    /// Paths starting at each node.
    pub endpoint: Vec<u64>,
    /// Paths from `i` to `k`, keyed by the ordered pair; only nonzero entries.
    pub pairs: BTreeMap<(NodeId, NodeId), u64>,
    /// Distinct paths, each counted once.
    pub graph: u64,
}

impl PathCounts {
    pub fn between(&self, i: NodeId, k: NodeId) -> u64 {
        self.pairs.get(&(i, k)).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCounts {
    pub len: usize,
    /// Cycles containing each node.
    pub node: Vec<u64>,
    /// Distinct cycles, each counted once.
    pub graph: u64,
}

/// Enumeration settings: a step budget and an executor for per-node tasks.
#[derive(Debug, Clone, Copy)]
pub struct Oracle<E = Sequential> {
    pub budget: u64,
    pub exec: E,
}

impl Default for Oracle<Sequential> {
    fn default() -> Self {
        Oracle {
            budget: DEFAULT_BUDGET,
            exec: Sequential,
        }
    }
}

impl<E: Executor> Oracle<E> {
    pub fn new(budget: u64, exec: E) -> Self {
        Oracle { budget, exec }
    }

    /// `N * d * (d - 1)^(len - 1)` bounds the number of DFS extensions.
    fn check_budget(&self, g: &Graph, len: usize) -> Result<(), OracleError> {
        let d = g.max_degree() as u128;
        let mut est = g.node_count() as u128 * d;
        for _ in 1..len {
            est = est.saturating_mul(d.saturating_sub(1).max(1));
        }
        let estimate = u64::try_from(est).unwrap_or(u64::MAX);
        if estimate > self.budget {
            Err(OracleError::Budget {
                estimate,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    pub fn paths(&self, g: &Graph, len: usize) -> Result<PathCounts, OracleError> {
        if !(2..=6).contains(&len) {
            return Err(OracleError::PathLength(len));
        }
        self.check_budget(g, len)?;
        let n = g.node_count();
        let per_start = self.exec.map(n, |s| {
            let mut ends = vec![0u64; n];
            let mut visited = vec![false; n];
            visited[s] = true;
            path_dfs(g, s, len, &mut visited, &mut |end| ends[end] += 1);
            ends
        });
        let mut counts = PathCounts {
            len,
            endpoint: vec![0; n],
            pairs: BTreeMap::new(),
            graph: 0,
        };
        for (s, ends) in per_start.into_iter().enumerate() {
            for (k, c) in ends.into_iter().enumerate().filter(|&(_, c)| c > 0) {
                counts.endpoint[s] += c;
                counts.pairs.insert((s, k), c);
                // a path is canonical when read from its smaller endpoint
                if s < k {
                    counts.graph += c;
                }
            }
        }
        Ok(counts)
    }

    pub fn cycles(&self, g: &Graph, len: usize) -> Result<CycleCounts, OracleError> {
        if !(3..=8).contains(&len) {
            return Err(OracleError::CycleLength(len));
        }
        self.check_budget(g, len)?;
        let n = g.node_count();
        let per_start = self.exec.map(n, |s| {
            let mut member = vec![0u64; n];
            let mut count = 0u64;
            let mut visited = vec![false; n];
            let mut stack = vec![s];
            visited[s] = true;
            cycle_dfs(g, s, len, &mut visited, &mut stack, &mut |cycle| {
                count += 1;
                for &v in cycle {
                    member[v] += 1;
                }
            });
            (count, member)
        });
        let mut counts = CycleCounts {
            len,
            node: vec![0; n],
            graph: 0,
        };
        for (count, member) in per_start {
            counts.graph += count;
            for (acc, m) in counts.node.iter_mut().zip(member) {
                *acc += m;
            }
        }
        Ok(counts)
    }

    /// Graphlet occurrences at the marked position, per node.
    pub fn graphlets(&self, g: &Graph, kind: Substructure) -> Result<Vec<u64>, OracleError> {
        self.check_budget(g, 4)?;
        let n = g.node_count();
        let f: fn(&Graph, NodeId) -> u64 = match kind {
            Substructure::TailedTriangle => tailed_triangle_at,
            Substructure::ChordalCycle => chordal_cycle_at,
            Substructure::Clique4 => clique4_at,
            Substructure::TriangleRectangle => house_apex_at,
            other => {
                return Ok(match other {
                    Substructure::Path2 | Substructure::Path3 | Substructure::Path4 => {
                        self.paths(g, path_len(other))?.endpoint
                    }
                    Substructure::Walk(len) => (0..n)
                        .map(|i| self.walks(g, len as usize, i, i))
                        .collect::<Result<_, _>>()?,
                    _ => self.cycles(g, cycle_len(other))?.node,
                })
            }
        };
        Ok(self.exec.map(n, |i| f(g, i)))
    }

    /// Walks of length `len` from `i` to `j`.
    pub fn walks(&self, g: &Graph, len: usize, i: NodeId, j: NodeId) -> Result<u64, OracleError> {
        if len == 0 {
            return Err(OracleError::WalkLength);
        }
        g.check_node(i)?;
        g.check_node(j)?;
        let n = g.node_count();
        let mut cur = vec![0u64; n];
        cur[i] = 1;
        for _ in 0..len {
            let mut next = vec![0u64; n];
            for (v, slot) in next.iter_mut().enumerate() {
                for &u in g.neighbors(v) {
                    *slot = slot.checked_add(cur[u]).ok_or(OracleError::Overflow)?;
                }
            }
            cur = next;
        }
        Ok(cur[j])
    }

    /// The five 6-cycle pattern counts per node, by classifying every pair of
    /// a 4-path and a 2-path from `i` to a common endpoint.
    pub fn cycle6_patterns(&self, g: &Graph) -> Result<PatternCounts, OracleError> {
        self.check_budget(g, 4)?;
        let n = g.node_count();
        let per_node = self.exec.map(n, |i| {
            let mut p = [0u64; 5];
            let mut visited = vec![false; n];
            let mut stack = vec![i];
            visited[i] = true;
            walk_paths(g, 4, &mut visited, &mut stack, &mut |path| {
                let k = path[4];
                for &m in g.neighbors(i) {
                    if !g.has_edge(m, k) || m == k {
                        continue;
                    }
                    p[0] += 1;
                    match path.iter().position(|&v| v == m) {
                        Some(3) => p[1] += 1,
                        Some(2) => p[2] += 1,
                        Some(1) => p[3] += 1,
                        _ => {}
                    }
                }
            });
            p[4] = pattern4_at(g, i);
            p
        });
        let mut counts: [Vec<u64>; 5] = Default::default();
        for row in per_node {
            for (c, v) in counts.iter_mut().zip(row) {
                c.push(v);
            }
        }
        Ok(PatternCounts { counts })
    }

    /// Report in the same shape as the counting programs produce.
    pub fn count(&self, g: &Graph, kind: Substructure) -> Result<CountReport, OracleError> {
        use Substructure::*;
        let (node, graph) = match kind {
            Path2 | Path3 | Path4 => {
                let p = self.paths(g, path_len(kind))?;
                (p.endpoint, p.graph)
            }
            Cycle3 | Cycle4 | Cycle5 | Cycle6 => {
                let c = self.cycles(g, cycle_len(kind))?;
                (c.node, c.graph)
            }
            _ => {
                let node = self.graphlets(g, kind)?;
                let total: u64 = node.iter().sum();
                let positions = kind.positions() as u64;
                debug_assert_eq!(total % positions, 0);
                (node, total / positions)
            }
        };
        let patterns = match kind {
            Cycle6 => Some(self.cycle6_patterns(g)?),
            _ => None,
        };
        Ok(CountReport {
            kind,
            hops: 0,
            node,
            graph,
            patterns,
        })
    }
}

fn path_len(kind: Substructure) -> usize {
    match kind {
        Substructure::Path2 => 2,
        Substructure::Path3 => 3,
        _ => 4,
    }
}

fn cycle_len(kind: Substructure) -> usize {
    match kind {
        Substructure::Cycle3 => 3,
        Substructure::Cycle4 => 4,
        Substructure::Cycle5 => 5,
        _ => 6,
    }
}

fn path_dfs(g: &Graph, v: NodeId, left: usize, visited: &mut [bool], found: &mut impl FnMut(NodeId)) {
    if left == 0 {
        found(v);
        return;
    }
    for &u in g.neighbors(v) {
        if !visited[u] {
            visited[u] = true;
            path_dfs(g, u, left - 1, visited, found);
            visited[u] = false;
        }
    }
}

/// Like [`path_dfs`] but hands over the whole node sequence.
fn walk_paths(
    g: &Graph,
    left: usize,
    visited: &mut [bool],
    stack: &mut Vec<NodeId>,
    found: &mut impl FnMut(&[NodeId]),
) {
    if left == 0 {
        found(stack);
        return;
    }
    let v = *stack.last().expect("non-empty path");
    for &u in g.neighbors(v) {
        if !visited[u] {
            visited[u] = true;
            stack.push(u);
            walk_paths(g, left - 1, visited, stack, found);
            stack.pop();
            visited[u] = false;
        }
    }
}

/// Cycles whose smallest node is `start`, read in the direction where the
/// second node is smaller than the last.
fn cycle_dfs(
    g: &Graph,
    start: NodeId,
    len: usize,
    visited: &mut [bool],
    stack: &mut Vec<NodeId>,
    found: &mut impl FnMut(&[NodeId]),
) {
    let v = *stack.last().expect("non-empty path");
    if stack.len() == len {
        if g.has_edge(v, start) && stack[1] < v {
            found(stack);
        }
        return;
    }
    for &u in g.neighbors(v) {
        if u > start && !visited[u] {
            visited[u] = true;
            stack.push(u);
            cycle_dfs(g, start, len, visited, stack, found);
            stack.pop();
            visited[u] = false;
        }
    }
}

/// Adjacent pairs `{a, b}` inside `nodes`.
fn adjacent_pairs<'a>(g: &'a Graph, nodes: &'a [NodeId]) -> impl Iterator<Item = (NodeId, NodeId)> + 'a {
    nodes.iter().enumerate().flat_map(move |(x, &a)| {
        nodes[x + 1..]
            .iter()
            .filter(move |&&b| g.has_edge(a, b))
            .map(move |&b| (a, b))
    })
}

/// Triangle `{i, a, b}` plus a tail `t` at `i`.
fn tailed_triangle_at(g: &Graph, i: NodeId) -> u64 {
    let nbrs = g.neighbors(i);
    adjacent_pairs(g, nbrs)
        .map(|(a, b)| nbrs.iter().filter(|&&t| t != a && t != b).count() as u64)
        .sum()
}

/// `i` adjacent to both ends of the chord `{a, b}`, and a fourth node `k`
/// adjacent to both as well.
fn chordal_cycle_at(g: &Graph, i: NodeId) -> u64 {
    adjacent_pairs(g, g.neighbors(i))
        .map(|(a, b)| {
            g.neighbors(a)
                .iter()
                .filter(|&&k| k != i && g.has_edge(k, b))
                .count() as u64
        })
        .sum()
}

fn clique4_at(g: &Graph, i: NodeId) -> u64 {
    let nbrs = g.neighbors(i);
    adjacent_pairs(g, nbrs)
        .map(|(a, b)| {
            nbrs.iter()
                .filter(|&&c| c > b && g.has_edge(a, c) && g.has_edge(b, c))
                .count() as u64
        })
        .sum()
}

/// Apex `i` on triangle `{i, a, b}`, with the rectangle `a - x - y - b`.
fn house_apex_at(g: &Graph, i: NodeId) -> u64 {
    let mut total = 0;
    for (a, b) in adjacent_pairs(g, g.neighbors(i)) {
        for &x in g.neighbors(a) {
            if x == i || x == b {
                continue;
            }
            for &y in g.neighbors(b) {
                if y != i && y != a && y != x && g.has_edge(x, y) {
                    total += 1;
                }
            }
        }
    }
    total
}

/// Nodes `k != i` with an adjacent pair `{x, y}` inside `N(i) ∩ N(k)`.
fn pattern4_at(g: &Graph, i: NodeId) -> u64 {
    let mut total = 0;
    for k in g.nodes().filter(|&k| k != i) {
        let common: Vec<_> = g
            .neighbors(i)
            .iter()
            .copied()
            .filter(|&x| g.has_edge(x, k))
            .collect();
        total += adjacent_pairs(g, &common).count() as u64;
    }
    total
}

pub fn oracle_paths(g: &Graph, len: usize) -> Result<PathCounts, OracleError> {
    Oracle::default().paths(g, len)
}

pub fn oracle_cycles(g: &Graph, len: usize) -> Result<CycleCounts, OracleError> {
    Oracle::default().cycles(g, len)
}

pub fn oracle_graphlets(g: &Graph, kind: Substructure) -> Result<Vec<u64>, OracleError> {
    Oracle::default().graphlets(g, kind)
}

pub fn oracle_walks(g: &Graph, len: usize, i: NodeId, j: NodeId) -> Result<u64, OracleError> {
    Oracle::default().walks(g, len, i, j)
}

pub fn oracle_cycle6_patterns(g: &Graph) -> Result<PatternCounts, OracleError> {
    Oracle::default().cycle6_patterns(g)
}

pub fn oracle_count(g: &Graph, kind: Substructure) -> Result<CountReport, OracleError> {
    Oracle::default().count(g, kind)
}

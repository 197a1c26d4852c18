//! Hand-built message-passing programs that count paths, cycles and small
//! graphlets exactly, plus their readouts.
//!
//! Node-level conventions: a path is counted at the node it starts from, a
//! cycle at every node it contains, and each graphlet at one marked position
//! (see [`Substructure`]). Graph-level counts divide the node sum by the
//! number of marked positions per occurrence, and that division must be
//! exact.
//!
//! Subgraphs are ego-networks with identity labels. Node-mode programs run
//! one subgraph per root `i`; pair-mode programs run one subgraph per ordered
//! edge `(i, j)` where `j` is the branching node.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::exec::{Executor, Sequential};
use crate::extraction::{
    extract_bag_i2_with, extract_bag_subgraph_mpnn_with, BagMode, ExtractError, Labeling, Policy,
    RootedSubgraph, SubgraphBag,
};
use crate::graph::{Graph, GraphError, NodeId};
use crate::mp::{
    self, c, feat, msg, nbr, not, own, pool, BagResult, EvalError, Expr, Feature, MPProgram, Pool,
    Readout, Scope, Side, StateTensor,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Substructure {
    Path2,
    Path3,
    Path4,
    Cycle3,
    Cycle4,
    Cycle5,
    Cycle6,
    /// Triangle with a pendant edge; counted at the triangle node that holds
    /// the tail.
    TailedTriangle,
    /// `K4` minus an edge; counted at either endpoint of the missing edge
    /// (the two degree-2 positions).
    ChordalCycle,
    Clique4,
    /// 4-cycle and triangle sharing an edge (house); counted at the triangle
    /// node outside the 4-cycle.
    TriangleRectangle,
    /// Closed walks of the given length.
    Walk(u32),
}

impl Substructure {
    /// Every kind with a fixed program, in report order.
    pub const COUNTED: [Substructure; 11] = [
        Substructure::Path2,
        Substructure::Path3,
        Substructure::Path4,
        Substructure::Cycle3,
        Substructure::Cycle4,
        Substructure::Cycle5,
        Substructure::Cycle6,
        Substructure::TailedTriangle,
        Substructure::ChordalCycle,
        Substructure::Clique4,
        Substructure::TriangleRectangle,
    ];

    pub fn mode(self) -> BagMode {
        use Substructure::*;
        match self {
            Path2 | Path3 | Cycle3 | Cycle4 | Walk(_) => BagMode::Node,
            _ => BagMode::Pair,
        }
    }

    /// Smallest ego-network radius for which the program is exact.
    pub fn min_hops(self) -> u32 {
        use Substructure::*;
        match self {
            Cycle3 | TailedTriangle | Clique4 => 1,
            Path2 | Cycle4 | Cycle5 | ChordalCycle | TriangleRectangle => 2,
            Path3 | Cycle6 => 3,
            Path4 => 4,
            Walk(len) => len.div_ceil(2).max(1),
        }
    }

    /// Radius used when none is requested.
    pub fn default_hops(self) -> u32 {
        use Substructure::*;
        match self {
            Cycle3 => 1,
            Cycle4 | Cycle5 | TailedTriangle | ChordalCycle | TriangleRectangle => 2,
            Clique4 => 1,
            Cycle6 => 3,
            Path4 => 4,
            other => other.min_hops(),
        }
    }

    /// Marked positions per occurrence, used for the graph-level count.
    pub fn positions(self) -> i64 {
        use Substructure::*;
        match self {
            Path2 | Path3 | Path4 | ChordalCycle => 2,
            Cycle3 => 3,
            Cycle4 | Clique4 => 4,
            Cycle5 => 5,
            Cycle6 => 6,
            TailedTriangle | TriangleRectangle | Walk(_) => 1,
        }
    }
}

impl fmt::Display for Substructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Substructure::*;
        match self {
            Path2 => f.write_str("path2"),
            Path3 => f.write_str("path3"),
            Path4 => f.write_str("path4"),
            Cycle3 => f.write_str("cycle3"),
            Cycle4 => f.write_str("cycle4"),
            Cycle5 => f.write_str("cycle5"),
            Cycle6 => f.write_str("cycle6"),
            TailedTriangle => f.write_str("tailed_triangle"),
            ChordalCycle => f.write_str("chordal_cycle"),
            Clique4 => f.write_str("clique4"),
            TriangleRectangle => f.write_str("triangle_rectangle"),
            Walk(len) => write!(f, "walk{len}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown substructure `{0}`")]
pub struct UnknownSubstructure(pub String);

impl FromStr for Substructure {
    type Err = UnknownSubstructure;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(len) = s.strip_prefix("walk") {
            return match len.parse::<u32>() {
                Ok(len) if len >= 1 => Ok(Substructure::Walk(len)),
                _ => Err(UnknownSubstructure(s.into())),
            };
        }
        Substructure::COUNTED
            .into_iter()
            .find(|k| {
                let mut name = String::new();
                let _ = fmt::write(&mut name, format_args!("{k}"));
                name == s
            })
            .ok_or_else(|| UnknownSubstructure(s.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("{kind} needs subgraphs of at least {required} hops, got {got}")]
    InsufficientHops {
        kind: Substructure,
        required: u32,
        got: u32,
    },
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{what} is negative ({value}) at node {node}")]
    Negative {
        what: &'static str,
        node: NodeId,
        value: i64,
    },
}

/// Node-level counts of the five 6-cycle patterns (`#0` .. `#4`).
///
/// `#0(i)` pairs a 4-path and a 2-path from `i` to a common endpoint `k`.
/// `#1`, `#2` and `#3` are the pairs whose 2-path midpoint coincides with the
/// fourth, third or second node of the 4-path. `#4(i)` counts a node `k` and
/// an adjacent pair `{x, y}` inside `N(i) ∩ N(k)`; it corrects `#2`.
/// Each 6-cycle through `i` yields two disjoint pairs, one per choice of
/// `k`, so `C6(i) = (#0 - #1 - #2 - #3) / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCounts {
    pub counts: [Vec<u64>; 5],
}

impl PatternCounts {
    pub fn get(&self, pattern: usize, node: NodeId) -> u64 {
        self.counts[pattern][node]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub kind: Substructure,
    pub hops: u32,
    pub node: Vec<u64>,
    pub graph: u64,
    pub patterns: Option<PatternCounts>,
}

fn own_f(f: Feature) -> Expr {
    feat(Side::Own, f)
}

fn nbr_f(f: Feature) -> Expr {
    feat(Side::Nbr, f)
}

/// `1[k != i] * 1[k != j]`
fn off_pair() -> Expr {
    not(own_f(Feature::Root)) * not(own_f(Feature::Branch))
}

/// `1[l != i] * 1[l != j]` for the sending neighbor.
fn nbr_off_pair() -> Expr {
    not(nbr_f(Feature::Root)) * not(nbr_f(Feature::Branch))
}

/// Degree in the first layer, then `sum_{j in N(i)} (d_j - 1)` at the root.
pub fn path2_program() -> MPProgram {
    MPProgram::new("path2", BagMode::Node)
        .layer(vec![c(1)], vec![msg(0)])
        .layer(vec![nbr(0) - c(1)], vec![msg(0)])
}

/// Component 0: neighbors of the root. Component 1: 2-paths from the root.
pub fn path2_endpoint_program() -> MPProgram {
    MPProgram::new("path2-endpoints", BagMode::Node)
        .layer(vec![nbr_f(Feature::Root)], vec![msg(0)])
        .layer(vec![nbr(0)], vec![own(0), not(own_f(Feature::Root)) * msg(0)])
}

/// Component 0: 3-paths from the root to each node; component 1: 2-paths.
///
/// A 3-walk `i -> m -> l -> k` revisits a node only when `m = k`, which
/// happens once per `l in N(k) \ {i}` whenever `k` is a neighbor of `i`.
pub fn path3_program() -> MPProgram {
    let mut p = path2_endpoint_program();
    p.name = "path3".into();
    p.layer(
        vec![not(nbr_f(Feature::Root)) * (nbr(1) - own(0))],
        vec![not(own_f(Feature::Root)) * msg(0), own(1)],
    )
}

/// First three layers shared by every pair-mode path program. Final
/// component 0 is the number of 4-paths `i -> j -> .. -> k`, i.e. 3-paths
/// from `j` to `k` that avoid `i`.
fn path4_layers(name: &str) -> MPProgram {
    MPProgram::new(name, BagMode::Pair)
        // a: 1[k in N(j) \ {i}]
        .layer(
            vec![nbr_f(Feature::Branch)],
            vec![not(own_f(Feature::Root)) * msg(0)],
        )
        // q: 2-paths from j avoiding i
        .layer(vec![nbr(0)], vec![own(0), off_pair() * msg(0)])
}

fn path4_message() -> Expr {
    nbr_off_pair() * (nbr(1) - own(0))
}

pub fn path4_program() -> MPProgram {
    path4_layers("path4").layer(vec![path4_message()], vec![off_pair() * msg(0)])
}

/// Component 0: 4-paths `i -> j -> .. -> k`; component 1: the same restricted
/// to `k in N(j)`, which closes a house with apex `i`.
pub fn triangle_rectangle_program() -> MPProgram {
    path4_layers("triangle_rectangle").layer(
        vec![path4_message()],
        vec![
            off_pair() * msg(0),
            own_f(Feature::BranchAdj) * off_pair() * msg(0),
        ],
    )
}

/// Component layout of [`cycle6_program`]'s final state.
pub mod cycle6_slots {
    pub const PATH4: usize = 0;
    pub const PATTERN1: usize = 1;
    pub const PATTERN0: usize = 2;
    pub const PATTERN3: usize = 3;
    pub const PATTERN4_TWICE: usize = 4;
    /// `1[k in N(i) ∩ N(j)]`
    pub const COMMON: usize = 5;
    /// `1[k != i] 1[k in N(j)] (C3(j,k) - 1[k in N(i)])`
    pub const SIDE: usize = 6;
    /// `1[k in N(i) ∩ N(j)] (C3(j,k) - 1[k in N(i)])`
    pub const COMMON_SIDE: usize = 7;
}

/// All 6-cycle pattern terms in one three-layer pair-mode program.
pub fn cycle6_program() -> MPProgram {
    let root = || own_f(Feature::Root);
    let branch_adj = || own_f(Feature::BranchAdj);
    let root_adj = || own_f(Feature::RootAdj);
    MPProgram::new("cycle6", BagMode::Pair)
        .layer(
            vec![
                nbr_f(Feature::Branch),
                nbr_f(Feature::Root),
                nbr_f(Feature::BranchAdj),
            ],
            vec![
                not(root()) * msg(0),     // 0 a = 1[k in N(j) \ {i}]
                msg(1),                   // 1 1[k in N(i)]
                msg(2),                   // 2 C3(j,k) = |N(j) ∩ N(k)|
                off_pair() * msg(0),      // 3 1[k in N(j)], k not in {i, j}
                off_pair() * msg(1),      // 4 1[k in N(i)], k not in {i, j}
            ],
        )
        .layer(
            vec![nbr(0), nbr(1), nbr(3) * nbr(4)],
            vec![
                own(0),                            // 0 a
                own(2),                            // 1 C3(j,k)
                off_pair() * msg(0),               // 2 2-paths from j avoiding i
                not(root()) * msg(1),              // 3 P2(i,k)
                off_pair() * own(3) * msg(2),      // 4 #4 term: common nbrs of i,j adjacent to k
            ],
        )
        .layer(
            vec![
                nbr_off_pair() * (nbr(2) - own(0)),
                nbr_off_pair() * nbr_f(Feature::RootAdj) * (nbr(2) - own(0)),
            ],
            vec![
                off_pair() * msg(0),                                 // PATH4
                off_pair() * msg(1),                                 // PATTERN1
                off_pair() * msg(0) * own(3),                        // PATTERN0
                off_pair() * own(0) * msg(0),                        // PATTERN3
                own(4),                                              // PATTERN4_TWICE
                root_adj() * branch_adj(),                           // COMMON
                not(root()) * branch_adj() * (own(1) - root_adj()),  // SIDE
                root_adj() * branch_adj() * (own(1) - root_adj()),   // COMMON_SIDE
            ],
        )
}

/// Triangles `{k, l}` inside `N(i) ∩ N(j)`, each seen twice per branching node.
pub fn clique4_program() -> MPProgram {
    MPProgram::new("clique4", BagMode::Pair)
        .layer(
            vec![nbr_f(Feature::Root), nbr_f(Feature::Branch)],
            vec![off_pair() * msg(0), off_pair() * msg(1)],
        )
        .layer(
            vec![nbr(0) * nbr(1)],
            vec![off_pair() * own(0) * own(1) * msg(0)],
        )
}

/// Common neighbors of `i` and `j` adjacent to `k in N(j)`.
pub fn chordal_cycle_program() -> MPProgram {
    MPProgram::new("chordal_cycle", BagMode::Pair)
        .layer(
            vec![nbr_f(Feature::Root), nbr_f(Feature::Branch)],
            vec![msg(0) * msg(1)],
        )
        .layer(
            vec![nbr(0)],
            vec![off_pair() * own_f(Feature::BranchAdj) * msg(0)],
        )
}

/// Triangles through `i` that avoid `j`, each seen twice.
pub fn tailed_triangle_program() -> MPProgram {
    MPProgram::new("tailed_triangle", BagMode::Pair)
        .layer(
            vec![nbr_f(Feature::Root)],
            vec![not(own_f(Feature::Branch)) * msg(0)],
        )
        .layer(vec![nbr(0)], vec![own(0) * msg(0)])
}

/// Walks of length `len` from the root to every node.
pub fn walk_program(len: u32) -> MPProgram {
    let mut p = MPProgram::new(alloc::format!("walk{len}"), BagMode::Node).init(vec![own_f(Feature::Root)]);
    for _ in 0..len {
        p = p.layer(vec![nbr(0)], vec![msg(0)]);
    }
    p
}

/// Marks nodes within `hops` of the root with 1, others with 0.
pub fn ego_mask_program(hops: u32) -> MPProgram {
    let mut p = MPProgram::new(alloc::format!("ego-mask{hops}"), BagMode::Node)
        .init(vec![own_f(Feature::Root)]);
    for _ in 0..hops {
        p = p.layer(
            vec![nbr(0)],
            vec![not(mp::nonzero(own(0))) * mp::positive(msg(0)) + mp::nonzero(own(0))],
        );
    }
    p
}

/// Component 0: reached flag; component 1: hop distance once reached.
pub fn spd_program(hops: u32) -> MPProgram {
    let mut p = MPProgram::new(alloc::format!("spd{hops}"), BagMode::Node)
        .init(vec![own_f(Feature::Root), c(0)]);
    for t in 0..hops {
        let newly = not(mp::nonzero(own(0))) * mp::positive(msg(0));
        p = p.layer(
            vec![nbr(0)],
            vec![
                own(0) + newly.clone(),
                own(1) + c(i64::from(t) + 1) * newly,
            ],
        );
    }
    p
}

/// Program and readouts for one substructure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingPlan {
    kind: Substructure,
    hops: u32,
    program: MPProgram,
    readouts: Vec<Readout>,
}

const NAME_RAW2: &str = "pattern2-raw";

impl CountingPlan {
    pub fn new(kind: Substructure, hops: Option<u32>) -> Result<Self, CountError> {
        let hops = hops.unwrap_or_else(|| kind.default_hops());
        if hops < kind.min_hops() {
            return Err(CountError::InsufficientHops {
                kind,
                required: kind.min_hops(),
                got: hops,
            });
        }
        let positions = kind.positions();
        let sum = |name: &str, component, scope| Readout::sum(name, component, scope);
        use Substructure::*;
        let (program, readouts) = match kind {
            Path2 => (
                path2_program(),
                vec![sum("path2", 0, Scope::Root).per_graph(positions)],
            ),
            Path3 => (
                path3_program(),
                vec![sum("path3", 0, Scope::All).per_graph(positions)],
            ),
            Cycle3 => (
                path2_endpoint_program(),
                vec![sum("cycle3", 1, Scope::RootNeighbors).per_node(2).per_graph(positions)],
            ),
            Cycle4 => (
                path3_program(),
                vec![sum("cycle4", 0, Scope::RootNeighbors).per_node(2).per_graph(positions)],
            ),
            Path4 => (
                path4_program(),
                vec![sum("path4", 0, Scope::All).per_graph(positions)],
            ),
            Cycle5 => (
                path4_program(),
                vec![sum("cycle5", 0, Scope::RootNeighbors).per_node(2).per_graph(positions)],
            ),
            TriangleRectangle => (
                triangle_rectangle_program(),
                vec![sum("triangle_rectangle", 1, Scope::RootNeighbors)
                    .per_node(2)
                    .per_graph(positions)],
            ),
            Clique4 => (
                clique4_program(),
                vec![sum("clique4", 0, Scope::All).per_node(6).per_graph(positions)],
            ),
            ChordalCycle => (
                chordal_cycle_program(),
                vec![sum("chordal_cycle", 0, Scope::All).per_node(2).per_graph(positions)],
            ),
            TailedTriangle => (
                tailed_triangle_program(),
                vec![sum("tailed_triangle", 0, Scope::All).per_node(2).per_graph(positions)],
            ),
            Walk(len) => (
                walk_program(len),
                vec![sum("walk", 0, Scope::Root)],
            ),
            Cycle6 => {
                use cycle6_slots::*;
                let all = |component| Pool {
                    component,
                    scope: Scope::All,
                };
                (
                    cycle6_program(),
                    vec![
                        sum("pattern0", PATTERN0, Scope::All),
                        sum("pattern1", PATTERN1, Scope::All),
                        Readout::combined(
                            NAME_RAW2,
                            vec![all(COMMON), all(SIDE), all(COMMON_SIDE)],
                            pool(0) * pool(1) - pool(2),
                        ),
                        sum("pattern3", PATTERN3, Scope::All),
                        sum("pattern4", PATTERN4_TWICE, Scope::All).per_node(2),
                    ],
                )
            }
        };
        Ok(CountingPlan {
            kind,
            hops,
            program,
            readouts,
        })
    }

    pub fn kind(&self) -> Substructure {
        self.kind
    }

    pub fn hops(&self) -> u32 {
        self.hops
    }

    pub fn program(&self) -> &MPProgram {
        &self.program
    }

    pub fn readouts(&self) -> &[Readout] {
        &self.readouts
    }

    pub fn extract<E: Executor>(&self, g: &Graph, exec: &E) -> Result<SubgraphBag, CountError> {
        Ok(match self.kind.mode() {
            BagMode::Node => {
                extract_bag_subgraph_mpnn_with(g, Policy::Ego(self.hops), Labeling::Identity, exec)?
            }
            BagMode::Pair => extract_bag_i2_with(g, self.hops, Labeling::Identity, exec)?,
        })
    }

    pub fn run<E: Executor>(
        &self,
        bag: &SubgraphBag,
        exec: &E,
    ) -> Result<Vec<StateTensor>, CountError> {
        Ok(mp::run_states(bag, &self.program, exec)?)
    }

    pub fn readout(
        &self,
        bag: &SubgraphBag,
        states: &[StateTensor],
    ) -> Result<CountReport, CountError> {
        let results = mp::apply_readouts(bag, states, &self.readouts)?;
        if self.kind == Substructure::Cycle6 {
            return cycle6_report(self.hops, bag.node_count(), &results);
        }
        let r = &results[0];
        Ok(CountReport {
            kind: self.kind,
            hops: self.hops,
            node: to_counts(self.kind_name(), &r.node)?,
            graph: to_count(self.kind_name(), 0, r.graph)?,
            patterns: None,
        })
    }

    fn kind_name(&self) -> &'static str {
        "count"
    }

    pub fn count<E: Executor>(&self, g: &Graph, exec: &E) -> Result<CountReport, CountError> {
        let bag = self.extract(g, exec)?;
        let states = self.run(&bag, exec)?;
        self.readout(&bag, &states)
    }
}

fn to_count(what: &'static str, node: NodeId, value: i64) -> Result<u64, CountError> {
    u64::try_from(value).map_err(|_| CountError::Negative { what, node, value })
}

fn to_counts(what: &'static str, values: &[i64]) -> Result<Vec<u64>, CountError> {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| to_count(what, i, v))
        .collect()
}

fn cycle6_report(hops: u32, n: usize, results: &[BagResult]) -> Result<CountReport, CountError> {
    let by_name = |name: &str| &results.iter().find(|r| r.name == name).expect("readout").node;
    let p0 = by_name("pattern0");
    let p1 = by_name("pattern1");
    let raw2 = by_name(NAME_RAW2);
    let p3 = by_name("pattern3");
    let p4 = by_name("pattern4");
    let overflow = || CountError::Eval(EvalError::Overflow(mp::Site::Readout));
    let mut p2 = vec![0i64; n];
    let mut node = vec![0i64; n];
    for i in 0..n {
        p2[i] = p4[i]
            .checked_mul(2)
            .and_then(|twice| raw2[i].checked_sub(twice))
            .ok_or_else(overflow)?;
        let rest = p0[i]
            .checked_sub(p1[i])
            .and_then(|v| v.checked_sub(p2[i]))
            .and_then(|v| v.checked_sub(p3[i]))
            .ok_or_else(overflow)?;
        node[i] = mp::exact_div(rest, 2)?;
    }
    let counts = [
        to_counts("pattern #0", p0)?,
        to_counts("pattern #1", p1)?,
        to_counts("pattern #2", &p2)?,
        to_counts("pattern #3", p3)?,
        to_counts("pattern #4", p4)?,
    ];
    let node = to_counts("6-cycle count", &node)?;
    let total: u64 = node.iter().sum();
    if !total.is_multiple_of(6) {
        return Err(EvalError::Inexact {
            value: total as i64,
            divisor: 6,
        }
        .into());
    }
    Ok(CountReport {
        kind: Substructure::Cycle6,
        hops,
        node,
        graph: total / 6,
        patterns: Some(PatternCounts { counts }),
    })
}

/// Counts `kind` with the given (or default) ego-network radius.
pub fn count(g: &Graph, kind: Substructure, hops: Option<u32>) -> Result<CountReport, CountError> {
    count_with(g, kind, hops, &Sequential)
}

pub fn count_with<E: Executor>(
    g: &Graph,
    kind: Substructure,
    hops: Option<u32>,
    exec: &E,
) -> Result<CountReport, CountError> {
    CountingPlan::new(kind, hops)?.count(g, exec)
}

pub fn count_path2_node(g: &Graph) -> Result<CountReport, CountError> {
    count(g, Substructure::Path2, None)
}

pub fn count_path3_node(g: &Graph, hops: Option<u32>) -> Result<CountReport, CountError> {
    count(g, Substructure::Path3, hops)
}

pub fn count_cycle3_node(g: &Graph) -> Result<CountReport, CountError> {
    count(g, Substructure::Cycle3, None)
}

pub fn count_cycle4_node(g: &Graph) -> Result<CountReport, CountError> {
    count(g, Substructure::Cycle4, None)
}

pub fn count_path4_node(g: &Graph) -> Result<CountReport, CountError> {
    count(g, Substructure::Path4, None)
}

pub fn count_cycle5_node(g: &Graph) -> Result<CountReport, CountError> {
    count(g, Substructure::Cycle5, None)
}

pub fn count_cycle6_node(g: &Graph) -> Result<CountReport, CountError> {
    count(g, Substructure::Cycle6, None)
}

/// Nonzero entries of `P4(i -> j -> .. -> k)` keyed by `(i, j, k)`.
///
/// With `hops = 3` every entry whose endpoint `k` lies within three hops of
/// `i` is exact; endpoints at distance four need `hops >= 4`.
pub fn count_path4_edge(
    g: &Graph,
    hops: u32,
) -> Result<BTreeMap<(NodeId, NodeId, NodeId), u64>, CountError> {
    if hops < 3 {
        return Err(CountError::InsufficientHops {
            kind: Substructure::Path4,
            required: 3,
            got: hops,
        });
    }
    let bag = extract_bag_i2_with(g, hops, Labeling::Identity, &Sequential)?;
    let states = mp::run_states(&bag, &path4_program(), &Sequential)?;
    let mut table = BTreeMap::new();
    for (sub, st) in bag.subgraphs().iter().zip(&states) {
        let j = sub.branching().expect("pair bag");
        for (local, &k) in sub.local_nodes().iter().enumerate() {
            let v = st.get(local, 0);
            if v != 0 {
                table.insert((sub.root(), j, k), to_count("4-path count", sub.root(), v)?);
            }
        }
    }
    Ok(table)
}

/// Walks of length `len` from `i` to `j`, by message passing from `i`.
pub fn count_walks(g: &Graph, len: u32, i: NodeId, j: NodeId) -> Result<u64, CountError> {
    g.check_node(j)?;
    let sub = RootedSubgraph::whole(g, i, Labeling::Identity)?;
    let st = mp::run_program(&sub, &walk_program(len))?;
    to_count("walk count", i, st.get(j, 0))
}

/// Mean 3-, 4-, 5- and 6-cycle counts over a corpus of graphs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleStats {
    pub graphs: usize,
    pub means: [f64; 4],
}

pub const STATS_KINDS: [Substructure; 4] = [
    Substructure::Cycle3,
    Substructure::Cycle4,
    Substructure::Cycle5,
    Substructure::Cycle6,
];

/// Graph-level cycle counts of one graph, in [`STATS_KINDS`] order.
pub fn cycle_counts<E: Executor>(g: &Graph, exec: &E) -> Result<[u64; 4], CountError> {
    let mut out = [0; 4];
    for (slot, kind) in out.iter_mut().zip(STATS_KINDS) {
        *slot = count_with(g, kind, None, exec)?.graph;
    }
    Ok(out)
}

impl CycleStats {
    /// Averages rows produced by [`cycle_counts`]; an empty corpus has zero means.
    pub fn from_counts(rows: &[[u64; 4]]) -> Self {
        let mut means = [0.0; 4];
        if !rows.is_empty() {
            for (c, mean) in means.iter_mut().enumerate() {
                let total: u64 = rows.iter().map(|r| r[c]).sum();
                *mean = total as f64 / rows.len() as f64;
            }
        }
        CycleStats {
            graphs: rows.len(),
            means,
        }
    }
}

pub fn corpus_cycle_stats<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> Result<CycleStats, CountError> {
    let rows = graphs
        .into_iter()
        .map(|g| cycle_counts(g, &Sequential))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CycleStats::from_counts(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators as gen;

    fn node_counts(g: &Graph, kind: Substructure) -> Vec<u64> {
        count(g, kind, None).unwrap().node
    }

    #[test]
    fn parse_names() {
        for k in Substructure::COUNTED {
            assert_eq!(alloc::format!("{k}").parse::<Substructure>(), Ok(k));
        }
        assert_eq!("walk4".parse(), Ok(Substructure::Walk(4)));
        assert!("walk0".parse::<Substructure>().is_err());
        assert!("cycle9".parse::<Substructure>().is_err());
    }

    #[test]
    fn paths_on_small_graphs() {
        let p3 = gen::path(3);
        assert_eq!(node_counts(&p3, Substructure::Path2), [1, 0, 1]);
        assert_eq!(node_counts(&gen::complete(3), Substructure::Path2), [2, 2, 2]);
        let p4 = gen::path(4);
        assert_eq!(node_counts(&p4, Substructure::Path3), [1, 0, 0, 1]);
        let c4 = gen::cycle(4).unwrap();
        assert_eq!(node_counts(&c4, Substructure::Path3), [2; 4]);
        let p5 = gen::path(5);
        assert_eq!(node_counts(&p5, Substructure::Path4), [1, 0, 0, 0, 1]);
        let c5 = gen::cycle(5).unwrap();
        assert_eq!(node_counts(&c5, Substructure::Path4), [2; 5]);
    }

    #[test]
    fn cycles_on_small_graphs() {
        let k3 = gen::complete(3);
        assert_eq!(node_counts(&k3, Substructure::Cycle3), [1; 3]);
        let k4 = gen::complete(4);
        assert_eq!(node_counts(&k4, Substructure::Cycle3), [3; 4]);
        assert_eq!(node_counts(&k4, Substructure::Cycle4), [3; 4]);
        let c4 = gen::cycle(4).unwrap();
        assert_eq!(node_counts(&c4, Substructure::Cycle4), [1; 4]);
        assert_eq!(node_counts(&c4, Substructure::Cycle3), [0; 4]);
        assert_eq!(node_counts(&gen::cycle(5).unwrap(), Substructure::Cycle5), [1; 5]);
        let r = count(&gen::cycle(6).unwrap(), Substructure::Cycle6, None).unwrap();
        assert_eq!(r.node, [1; 6]);
        assert_eq!(r.graph, 1);
        let p = r.patterns.unwrap();
        for pattern in 1..5 {
            assert_eq!(p.counts[pattern], [0; 6]);
        }
        // two (4-path, 2-path) pairs per 6-cycle, one for each far endpoint
        assert_eq!(p.counts[0], [2; 6]);
        assert_eq!(node_counts(&k4, Substructure::Cycle6), [0; 4]);
    }

    #[test]
    fn coned_apex_is_in_six_five_cycles() {
        let (joined, split) = gen::coned_cycles(3).unwrap();
        assert_eq!(node_counts(&joined, Substructure::Cycle5)[0], 6);
        assert_eq!(node_counts(&split, Substructure::Cycle5)[0], 0);
    }

    #[test]
    fn graphlets_on_small_graphs() {
        let k4 = gen::complete(4);
        assert_eq!(node_counts(&k4, Substructure::Clique4), [1; 4]);
        assert_eq!(node_counts(&gen::paw(), Substructure::TailedTriangle), [1, 0, 0, 0]);
        // tips of the diamond are 0 and 3
        assert_eq!(node_counts(&gen::diamond(), Substructure::ChordalCycle), [1, 0, 0, 1]);
        let house = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(node_counts(&house, Substructure::TriangleRectangle), [1, 0, 0, 0, 0]);
    }

    #[test]
    fn insufficient_hops_is_refused() {
        assert_eq!(
            count(&gen::cycle(6).unwrap(), Substructure::Cycle6, Some(2)),
            Err(CountError::InsufficientHops {
                kind: Substructure::Cycle6,
                required: 3,
                got: 2
            })
        );
        assert!(count_path4_edge(&gen::path(5), 2).is_err());
    }

    #[test]
    fn path4_table() {
        let t = count_path4_edge(&gen::path(5), 4).unwrap();
        assert_eq!(t.get(&(0, 1, 4)), Some(&1));
        assert_eq!(t.get(&(4, 3, 0)), Some(&1));
        assert_eq!(t.len(), 2);
        let c5 = gen::cycle(5).unwrap();
        let t = count_path4_edge(&c5, 3).unwrap();
        for ((i, j, k), v) in t {
            assert_eq!(v, 1);
            assert!(c5.has_edge(i, k) && k != j);
        }
    }

    #[test]
    fn walks() {
        let k3 = gen::complete(3);
        assert_eq!(count_walks(&k3, 3, 0, 0).unwrap(), 2);
        assert_eq!(count_walks(&gen::path(2), 2, 0, 0).unwrap(), 1);
        assert_eq!(count_walks(&gen::cycle(4).unwrap(), 5, 1, 1).unwrap(), 0);
        assert_eq!(node_counts(&k3, Substructure::Walk(2)), [2; 3]);
    }

    #[test]
    fn corpus_stats() {
        let c6 = gen::cycle(6).unwrap();
        let ten = [&c6; 10];
        assert_eq!(corpus_cycle_stats(ten).unwrap().means, [0.0, 0.0, 0.0, 1.0]);
        let k3 = gen::complete(3);
        let c4 = gen::cycle(4).unwrap();
        let s = corpus_cycle_stats([&k3, &c4]).unwrap();
        assert_eq!((s.graphs, s.means), (2, [0.5, 0.5, 0.0, 0.0]));
        assert_eq!(corpus_cycle_stats([]).unwrap().means, [0.0; 4]);
    }

    #[test]
    fn empty_graph_counts() {
        let g = Graph::empty(0);
        for k in Substructure::COUNTED {
            let r = count(&g, k, None).unwrap();
            assert!(r.node.is_empty());
            assert_eq!(r.graph, 0);
        }
    }

    #[test]
    fn program_text_round_trip() {
        for k in Substructure::COUNTED {
            let plan = CountingPlan::new(k, None).unwrap();
            let text = alloc::format!("{}", plan.program());
            let back: MPProgram = text.parse().unwrap();
            assert_eq!(&back, plan.program(), "{text}");
        }
    }
}

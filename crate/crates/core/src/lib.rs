//! Exact substructure counting with fixed integer message-passing programs
//! over rooted subgraphs, plus brute-force oracles and color refinement.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, the CLI and
//! the thread-pool executor live in the `subcount` crate.

#![no_std]

extern crate alloc;

pub mod exec;
pub mod extraction;
pub mod generators;
pub mod graph;
pub mod mp;
pub mod oracle;
pub mod programs;
pub mod refinement;

pub use exec::{Executor, Sequential};
pub use extraction::{BagMode, Labeling, Policy, RootedSubgraph, SubgraphBag};
pub use graph::{Distance, Graph, GraphError, NodeId};
pub use programs::{CountError, CountReport, CountingPlan, PatternCounts, Substructure};

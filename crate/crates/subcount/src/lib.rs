//! File formats, CSV reports, a thread-pool executor and the `subcount`
//! command line on top of `subcount-core`.

pub mod bench;
pub mod cli;
pub mod formats;
pub mod parallel;
pub mod report;
pub mod stats;

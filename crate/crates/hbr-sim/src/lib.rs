//! Simulation library for routing in wireless sensor networks.
//!
//! The library covers four areas:
//!
//! * [`net`] — random geometric networks (unit-disk graphs) over a rectangular
//!   field, with optional obstacle masks, plus plain-text serialization.
//! * [`hbr`] — hierarchical bipartition routing: a recursive landmark-based
//!   bipartition assigns every node a binary address; routing on those
//!   addresses is loop-free and always delivers. Includes a deterministic
//!   flood simulation for the distributed construction cost.
//! * [`greedy`] — cost-over-progress greedy forwarding on physical coordinates
//!   (GEO) or on landmark-distance virtual coordinates (LMR), with dead-end
//!   recovery delegating to shortest-path or HBR routes.
//! * [`eval`] — the experiment harness: density sweeps, overhead/dead-end
//!   statistics, weight-coarsening and flood studies, CSV/markdown emission,
//!   and SVG rendering.
//!
//! All randomness flows through [`rng`]'s seed-derivation scheme, so every
//! result is reproducible bit-for-bit, independent of thread count.

pub mod eval;
pub mod greedy;
pub mod hbr;
pub mod net;
pub mod rng;
mod trace;
mod weights;

pub use net::{euclidean_distance, generate_network, GenMeta, GenerationConfig, Mask, Network, Position};
pub use trace::{HopMode, RouteTrace};
pub use weights::{WeightModel, Weights};

use thiserror::Error;

/// Errors from network construction, generation and serialization.
#[derive(Debug, Error)]
pub enum NetError {
    #[error("nodes {u} and {v} are not adjacent")]
    NotAdjacent { u: u32, v: u32 },
    #[error("configuration yields zero expected nodes")]
    Degenerate,
    #[error("network rejected: largest component has {largest} of {placed} placed nodes")]
    Rejected { placed: usize, largest: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors from building the bipartition hierarchy.
#[derive(Debug, Error)]
pub enum BuildError {
    #[error("network is not connected (node {0} unreachable)")]
    Disconnected(u32),
    #[error("network is empty")]
    Empty,
}

/// Errors from routing.
#[derive(Debug, Error)]
pub enum RouteError {
    #[error("unknown node id {0}")]
    UnknownNode(u32),
    #[error("routing loop guard tripped after {hops} hops from {from} to {to}")]
    LoopGuard { from: u32, to: u32, hops: u64 },
    #[error("protocol dependency missing: {0}")]
    MissingDependency(&'static str),
    #[error("no route from {from} to {to}")]
    Unreachable { from: u32, to: u32 },
}

/// Errors from the experiment harness.
#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("retry budget exhausted: density {density} network {index} after {attempts} attempts")]
    RetryBudget { density: f64, index: usize, attempts: usize },
    #[error("shortest-path baseline cost is zero")]
    ZeroBaseline,
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Route(#[from] RouteError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

//! Minimum r-dominating set by dynamic programming over distance labelings
//! of a nice tree decomposition.
//!
//! A bag vertex carries a label in `[-r, r]`. Zero puts it in the solution,
//! a positive label `t` says it is at distance `t` from the solution and that
//! claim is already backed inside the processed subgraph, and `-t` is a
//! promise still to be kept. Joins run through counting tables whose bar
//! transform turns the consistency rule into a pointwise product.

mod join;
mod labeling;
mod solve;
mod table;

pub use join::{
    convolve_join, extract_min, forward_transform, indication_table, inverse_transform, join_table, CountTable,
    JoinMode, JoinStats, MAX_COUNT_BAG,
};
pub use labeling::{bag_edges, is_locally_valid, ForgetRule, Layout, ValidityRule};
pub use solve::{reconstruct_witness, solve_rds, solve_rds_with, NodeStat, RdsConfig, RdsRun};
pub use table::{forget_table, introduce_table, leaf_table, Rules, ValueTable, INF};

use thiserror::Error;

/// Largest radius the label bit sets hold.
pub const MAX_RADIUS: u32 = 62;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RdsError {
    #[error("radius must be in 1..={max}, got {0}", max = MAX_RADIUS)]
    InvalidRadius(u32),
    #[error("graph has {0} vertices, more than the 16-bit value tables hold")]
    TooManyVertices(usize),
    #[error("bag of size {size} exceeds the counting limit {max}")]
    BagTooLarge { size: usize, max: usize },
    #[error("join children have different bags")]
    BagMismatch,
    #[error("count overflowed 64 bits")]
    Overflow,
    #[error("{0} ordering violations found by the self-check")]
    OrderingViolations(usize),
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error(transparent)]
    Decomposition(#[from] tree_decomp::Violation),
}

//! Randomized decision procedure for connected r-dominating set over an
//! edge-nice tree decomposition, by counting consistent cuts modulo 2.
//!
//! Each run weights the vertices at random and fixes a root vertex that
//! must lie on the first side of the cut. A candidate set contributes
//! `2^(components - 1)` cuts, so only connected sets survive the parity.

mod decide;
mod label;
mod row;
mod run;
mod table;

pub use decide::{
    all_runs, decide_rcds, decide_rcds_rooted, decide_rcds_with, decide_rooted_with, min_rcds, min_rcds_with,
    root_table, RcdsConfig, RunOutcome,
};
pub use label::{CutLabel, CutLayout};
pub use row::{BitRow, ExactRow, Row};
pub use run::{sample_weights, CutCountRun};
pub use table::{
    cc_forget, cc_introduce_edge, cc_introduce_vertex, cc_join, cc_leaf, convolve_bar, forward_bar, inverse_bar,
    CutTable, ExactTable, NegativeForget, ParityTable,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RcdsError {
    #[error("radius must be at least 1, got {0}")]
    InvalidRadius(u32),
    #[error("at least one repetition is needed")]
    NoRepetitions,
    #[error("vertex {0} is not in the bag")]
    NotInBag(usize),
    #[error("join children have different bags")]
    BagMismatch,
    #[error("root {root} out of range for {n} vertices")]
    RootOutOfRange { root: usize, n: usize },
    #[error("run has {got} weights, graph has {want} vertices")]
    WeightCount { got: usize, want: usize },
    #[error("size {k} exceeds the run's limit {max}")]
    SizeBeyondRun { k: usize, max: usize },
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error(transparent)]
    Decomposition(#[from] tree_decomp::Violation),
}

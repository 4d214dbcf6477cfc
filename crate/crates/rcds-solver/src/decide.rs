use graph_core::{bfs_distances, is_connected, Graph};
use rayon::prelude::*;
use tree_decomp::{make_edge_nice, validate, EdgeNiceTreeDecomposition, NodeKind, TreeDecomposition};

use crate::row::{BitRow, Row};
use crate::run::CutCountRun;
use crate::table::{cc_forget, cc_introduce_edge, cc_introduce_vertex, cc_join, cc_leaf, CutTable, NegativeForget};
use crate::RcdsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RcdsConfig {
    pub r: u32,
    pub negative_forget: NegativeForget,
}

impl RcdsConfig {
    pub fn new(r: u32) -> Self {
        RcdsConfig { r, negative_forget: NegativeForget::default() }
    }
}

/// Outcome of one (root, repetition) pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOutcome {
    pub root: usize,
    pub rep: u64,
    pub hit: bool,
}

/// Runs the table recurrences bottom-up and returns the root table, whose
/// single labeling holds the counts for every size `0..=run.k` and weight.
pub fn root_table<R: Row>(
    g: &Graph,
    etd: &EdgeNiceTreeDecomposition,
    cfg: &RcdsConfig,
    run: &CutCountRun,
) -> Result<CutTable<R>, RcdsError> {
    if cfg.r < 1 {
        return Err(RcdsError::InvalidRadius(cfg.r));
    }
    if run.n() != g.n() {
        return Err(RcdsError::WeightCount { got: run.n(), want: g.n() });
    }
    if run.root >= g.n() {
        return Err(RcdsError::RootOutOfRange { root: run.root, n: g.n() });
    }
    etd.check_structure().map_err(RcdsError::Invariant)?;
    let nodes = &etd.nodes;
    let mut tables: Vec<Option<CutTable<R>>> = vec![None; nodes.len()];
    let no_dist = vec![None; g.n()];
    for (i, x) in nodes.iter().enumerate() {
        let mut take = |c: usize| tables[c].take().expect("child computed once");
        let table = match x.kind {
            NodeKind::Leaf => cc_leaf(cfg.r, run),
            NodeKind::Introduce(u) => cc_introduce_vertex(&take(x.children[0]), u, run),
            NodeKind::IntroduceEdge(u, v) => cc_introduce_edge(&take(x.children[0]), u, v)?,
            NodeKind::Forget(u) => {
                let child = take(x.children[0]);
                match cfg.negative_forget {
                    NegativeForget::Reject => cc_forget(&child, u, cfg.negative_forget, &no_dist)?,
                    NegativeForget::DistanceWitness => {
                        let sub = Graph::from_edges(g.n(), &etd.introduced_edges(i)).expect("edges come from g");
                        let dist = bfs_distances(&sub, &[u], None).expect("u is a vertex");
                        cc_forget(&child, u, cfg.negative_forget, dist.as_slice())?
                    }
                }
            }
            NodeKind::Join => {
                let a = take(x.children[0]);
                let b = take(x.children[1]);
                cc_join(&a, &b, run)?
            }
        };
        tables[i] = Some(table);
    }
    Ok(tables.pop().flatten().expect("root computed"))
}

/// True when the root parity at size `k` is odd for some weight. A true
/// answer always certifies a connected r-dominating set of size `k`
/// containing `run.root`.
pub fn decide_rcds_rooted(
    g: &Graph,
    etd: &EdgeNiceTreeDecomposition,
    r: u32,
    k: usize,
    run: &CutCountRun,
) -> Result<bool, RcdsError> {
    decide_rooted_with(g, etd, &RcdsConfig::new(r), k, run)
}

pub fn decide_rooted_with(
    g: &Graph,
    etd: &EdgeNiceTreeDecomposition,
    cfg: &RcdsConfig,
    k: usize,
    run: &CutCountRun,
) -> Result<bool, RcdsError> {
    if k > run.k {
        return Err(RcdsError::SizeBeyondRun { k, max: run.k });
    }
    let root: CutTable<BitRow> = root_table(g, etd, cfg, run)?;
    Ok(!root.row(0, k).is_zero())
}

/// Monte-Carlo decision: ORs every root vertex and `reps` fresh weightings.
pub fn decide_rcds(
    g: &Graph,
    td: &TreeDecomposition,
    r: u32,
    k: usize,
    seed: u64,
    reps: u64,
) -> Result<bool, RcdsError> {
    validate(td, g)?;
    decide_rcds_with(g, &make_edge_nice(td, g), &RcdsConfig::new(r), k, seed, reps)
}

fn trivial_answer(g: &Graph, cfg: &RcdsConfig, k: usize, reps: u64) -> Result<Option<bool>, RcdsError> {
    if cfg.r < 1 {
        return Err(RcdsError::InvalidRadius(cfg.r));
    }
    if reps == 0 {
        return Err(RcdsError::NoRepetitions);
    }
    if k == 0 || k > g.n() {
        return Ok(Some(k == 0 && g.n() == 0));
    }
    Ok(None)
}

pub fn decide_rcds_with(
    g: &Graph,
    etd: &EdgeNiceTreeDecomposition,
    cfg: &RcdsConfig,
    k: usize,
    seed: u64,
    reps: u64,
) -> Result<bool, RcdsError> {
    if let Some(answer) = trivial_answer(g, cfg, k, reps)? {
        return Ok(answer);
    }
    let n = g.n();
    let found = (0..n as u64 * reps).into_par_iter().map(|j| {
        let run = CutCountRun::new(n, k, seed, (j / reps) as usize, j % reps);
        decide_rooted_with(g, etd, cfg, k, &run)
    });
    match found.find_any(|x| !matches!(x, Ok(false))) {
        Some(x) => x,
        None => Ok(false),
    }
}

/// Every (root, repetition) outcome, without stopping at the first hit.
pub fn all_runs(
    g: &Graph,
    etd: &EdgeNiceTreeDecomposition,
    cfg: &RcdsConfig,
    k: usize,
    seed: u64,
    reps: u64,
) -> Result<Vec<RunOutcome>, RcdsError> {
    if trivial_answer(g, cfg, k, reps)?.is_some() {
        return Ok(Vec::new());
    }
    let n = g.n();
    (0..n as u64 * reps)
        .into_par_iter()
        .map(|j| {
            let (root, rep) = ((j / reps) as usize, j % reps);
            let run = CutCountRun::new(n, k, seed, root, rep);
            decide_rooted_with(g, etd, cfg, k, &run).map(|hit| RunOutcome { root, rep, hit })
        })
        .collect()
}

/// Smallest `k` the decision accepts, searching upward from 1. `None` when
/// the graph is disconnected, since no connected set reaches every component.
pub fn min_rcds(g: &Graph, td: &TreeDecomposition, r: u32, seed: u64, reps: u64) -> Result<Option<usize>, RcdsError> {
    validate(td, g)?;
    min_rcds_with(g, &make_edge_nice(td, g), &RcdsConfig::new(r), seed, reps)
}

pub fn min_rcds_with(
    g: &Graph,
    etd: &EdgeNiceTreeDecomposition,
    cfg: &RcdsConfig,
    seed: u64,
    reps: u64,
) -> Result<Option<usize>, RcdsError> {
    let all: Vec<usize> = (0..g.n()).collect();
    if !is_connected(g, &all) {
        return Ok(None);
    }
    for k in 1..=g.n() {
        if decide_rcds_with(g, etd, cfg, k, seed, reps)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

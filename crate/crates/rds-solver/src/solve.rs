use std::collections::BTreeSet;
use std::time::Instant;

use graph_core::Graph;
use oracle::is_r_dominating;
use tree_decomp::{make_nice, validate, NiceTreeDecomposition, NodeKind, TreeDecomposition};

use crate::join::{join_table, JoinMode};
use crate::table::{
    forget_with_plan, introduce_with_plan, leaf_table, ForgetPlan, IntroducePlan, Rules, ValueTable, INF,
};
use crate::RdsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RdsConfig {
    pub rules: Rules,
    pub join_mode: JoinMode,
    /// Check the ordering property on every table and fail on a violation.
    pub self_check: bool,
}

impl RdsConfig {
    pub fn new(r: u32) -> Self {
        RdsConfig { rules: Rules::new(r), join_mode: JoinMode::Sparse, self_check: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeStat {
    pub node: usize,
    pub kind: &'static str,
    pub bag: usize,
    pub entries: usize,
    /// Labeling entries visited; the table size except at joins.
    pub touched: u64,
    /// Size-window cells a join combined; 0 for other nodes.
    pub cells: u64,
    /// Widest size window of the two join children; 0 for other nodes.
    pub window: usize,
    pub nanos: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RdsRun {
    pub size: usize,
    pub witness: Vec<usize>,
    pub stats: Vec<NodeStat>,
    /// Single-flip pairs compared by the self-check.
    pub ordering_pairs: u64,
}

/// Minimum r-dominating set size and a witness, using a nice form of `td`.
pub fn solve_rds(g: &Graph, td: &TreeDecomposition, r: u32) -> Result<(usize, Vec<usize>), RdsError> {
    validate(td, g)?;
    let run = solve_rds_with(g, &make_nice(td, g), &RdsConfig::new(r))?;
    Ok((run.size, run.witness))
}

fn kind_name(k: NodeKind) -> &'static str {
    match k {
        NodeKind::Leaf => "leaf",
        NodeKind::Introduce(_) => "introduce",
        NodeKind::IntroduceEdge(..) => "introduce-edge",
        NodeKind::Forget(_) => "forget",
        NodeKind::Join => "join",
    }
}

fn subtree_vertices(nice: &NiceTreeDecomposition, i: usize, n: usize) -> Vec<bool> {
    let mut inside = vec![false; n];
    let mut stack = vec![i];
    while let Some(x) = stack.pop() {
        for &v in &nice.nodes[x].bag {
            inside[v] = true;
        }
        stack.extend(&nice.nodes[x].children);
    }
    inside
}

pub fn solve_rds_with(g: &Graph, nice: &NiceTreeDecomposition, cfg: &RdsConfig) -> Result<RdsRun, RdsError> {
    let rules = &cfg.rules;
    if rules.r < 1 || rules.r > crate::MAX_RADIUS {
        return Err(RdsError::InvalidRadius(rules.r));
    }
    if g.n() >= INF as usize {
        return Err(RdsError::TooManyVertices(g.n()));
    }
    nice.check_structure().map_err(RdsError::Invariant)?;
    let nodes = &nice.nodes;
    let mut keep = vec![false; nodes.len()];
    for x in nodes {
        if matches!(x.kind, NodeKind::Forget(_) | NodeKind::Join) {
            for &c in &x.children {
                keep[c] = true;
            }
        }
    }
    let mut tables: Vec<Option<ValueTable>> = vec![None; nodes.len()];
    let mut stats = Vec::with_capacity(nodes.len());
    let mut ordering_pairs = 0u64;
    let mut violations = 0usize;
    for (i, x) in nodes.iter().enumerate() {
        let start = Instant::now();
        let mut touched = None;
        let (mut window, mut cells) = (0, 0);
        let table = match x.kind {
            NodeKind::Leaf => leaf_table(&x.bag, g, rules),
            NodeKind::Introduce(u) => {
                let child = tables[x.children[0]].as_ref().expect("child computed");
                let inside = subtree_vertices(nice, i, g.n());
                let plan = IntroducePlan::new(&child.bag, u, g, &inside, rules);
                introduce_with_plan(child, u, &plan)
            }
            NodeKind::Forget(u) => {
                let child = tables[x.children[0]].as_ref().expect("child computed");
                forget_with_plan(child, u, &ForgetPlan::new(&child.bag, u, g, rules))
            }
            NodeKind::Join => {
                let a = tables[x.children[0]].as_ref().expect("child computed");
                let b = tables[x.children[1]].as_ref().expect("child computed");
                let (t, js) = join_table(a, b, cfg.join_mode, g.n())?;
                touched = Some(js.touched);
                window = js.left_width.max(js.right_width);
                cells = js.cells;
                t
            }
            NodeKind::IntroduceEdge(..) => {
                return Err(RdsError::Invariant("edge introductions are not part of a nice decomposition".into()))
            }
        };
        if cfg.self_check {
            violations += table.ordering_violations();
            ordering_pairs += table.layout.digits() as u64 * table.len() as u64;
        }
        stats.push(NodeStat {
            node: i,
            kind: kind_name(x.kind),
            bag: x.bag.len(),
            entries: table.len(),
            touched: touched.unwrap_or(table.len() as u64),
            cells,
            window,
            nanos: start.elapsed().as_nanos(),
        });
        for &c in &x.children {
            if !keep[c] {
                tables[c] = None;
            }
        }
        tables[i] = Some(table);
    }
    if violations > 0 {
        return Err(RdsError::OrderingViolations(violations));
    }
    let root = nice.root();
    let size = tables[root].as_ref().expect("root computed").values[0];
    if size == INF {
        return Err(RdsError::Invariant("root entry is infeasible".into()));
    }
    let witness = reconstruct_witness(g, nice, &tables, rules, size)?;
    Ok(RdsRun { size: size as usize, witness, stats, ordering_pairs })
}

/// Walks the decomposition top-down, following one optimal choice per node.
/// Ties go to the smallest labeling index, left child first.
pub fn reconstruct_witness(
    g: &Graph,
    nice: &NiceTreeDecomposition,
    tables: &[Option<ValueTable>],
    rules: &Rules,
    size: u16,
) -> Result<Vec<usize>, RdsError> {
    let nodes = &nice.nodes;
    let mut chosen = BTreeSet::new();
    let mut stack = vec![(nice.root(), 0usize, size)];
    let lost = || RdsError::Invariant("no choice reproduces a table value".into());
    let mut cand = Vec::new();
    while let Some((i, ci, val)) = stack.pop() {
        let x = &nodes[i];
        match x.kind {
            NodeKind::Leaf => {
                let lay = crate::Layout::new(rules.r, x.bag.len());
                let labels = lay.decode(ci);
                chosen.extend(x.bag.iter().zip(labels).filter(|(_, l)| *l == 0).map(|(&v, _)| v));
            }
            NodeKind::Introduce(u) => {
                let child_bag = &nodes[x.children[0]].bag;
                let inside = subtree_vertices(nice, i, g.n());
                let plan = IntroducePlan::new(child_bag, u, g, &inside, rules);
                let (cj, add) = plan.child_of(ci).ok_or_else(lost)?;
                if add == 1 {
                    chosen.insert(u);
                }
                stack.push((x.children[0], cj, val - add));
            }
            NodeKind::Forget(u) => {
                let child = tables[x.children[0]].as_ref().expect("forget child retained");
                ForgetPlan::new(&child.bag, u, g, rules).candidates(ci, &mut cand);
                let cj = *cand.iter().find(|&&c| child.values[c] == val).ok_or_else(lost)?;
                stack.push((x.children[0], cj, val));
            }
            NodeKind::Join => {
                let a = tables[x.children[0]].as_ref().expect("join child retained");
                let b = tables[x.children[1]].as_ref().expect("join child retained");
                let (cj, ck) = consistent_pair(a, b, ci, val).ok_or_else(lost)?;
                stack.push((x.children[1], ck, b.values[ck]));
                stack.push((x.children[0], cj, a.values[cj]));
            }
            NodeKind::IntroduceEdge(..) => unreachable!("checked before the run"),
        }
    }
    let witness: Vec<usize> = chosen.into_iter().collect();
    if witness.len() != size as usize || !is_r_dominating(g, &witness, rules.r) {
        return Err(RdsError::Invariant(format!(
            "reconstructed set of size {} does not certify optimum {size}",
            witness.len()
        )));
    }
    Ok(witness)
}

/// First consistent child pair, by left index then right index, whose
/// values add up to `val` once shared zeros are discounted.
fn consistent_pair(a: &ValueTable, b: &ValueTable, ci: usize, val: u16) -> Option<(usize, usize)> {
    let lay = &a.layout;
    let labels = lay.decode(ci);
    let zeros = labels.iter().filter(|&&l| l == 0).count() as u32;
    let positive: Vec<usize> = (0..labels.len()).filter(|&q| labels[q] > 0).collect();
    let mut best: Option<(usize, usize)> = None;
    let combos = 3usize.pow(positive.len() as u32);
    for mut code in 0..combos {
        let (mut cj, mut ck) = (ci, ci);
        for &q in &positive {
            let flip = 2 * labels[q] as usize * lay.strides[q];
            match code % 3 {
                0 => ck -= flip,
                1 => cj -= flip,
                _ => {}
            }
            code /= 3;
        }
        let (x, y) = (a.values[cj], b.values[ck]);
        if x != INF && y != INF && x as u32 + y as u32 == val as u32 + zeros && best.map_or(true, |p| (cj, ck) < p) {
            best = Some((cj, ck));
        }
    }
    best
}

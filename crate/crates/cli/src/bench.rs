use std::io::Write;
use std::time::Instant;

use graph_core::Graph;
use rcds_solver::{
    cc_forget, cc_introduce_edge, cc_introduce_vertex, cc_join, cc_leaf, CutCountRun, NegativeForget, ParityTable,
};
use rds_solver::{solve_rds_with, RdsConfig};
use tree_decomp::{make_edge_nice, make_nice, NodeKind, TreeDecomposition};

use crate::{header, load_input, opt, show, td_name, BenchArgs, Cli, CliError, Format, Problem};

const KINDS: [&str; 5] = ["leaf", "introduce", "introduce-edge", "forget", "join"];

/// One decomposition node as measured by a benchmark run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRow {
    pub node: usize,
    pub kind: &'static str,
    pub bag: usize,
    pub entries: u128,
    /// Size the structural formula predicts for this bag.
    pub expected: u128,
    pub touched: u64,
    pub nanos: u128,
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

/// Distance-labeling tables: `(2r + 1)^bag` entries per node.
pub fn bench_rds(g: &Graph, td: &TreeDecomposition, r: u32, join: rds_solver::JoinMode) -> Result<Vec<NodeRow>, CliError> {
    let cfg = RdsConfig { join_mode: join, ..RdsConfig::new(r) };
    let run = solve_rds_with(g, &make_nice(td, g), &cfg)?;
    let base = 2 * r as u128 + 1;
    Ok(run
        .stats
        .iter()
        .map(|s| NodeRow {
            node: s.node,
            kind: s.kind,
            bag: s.bag,
            entries: s.entries as u128,
            expected: base.pow(s.bag as u32),
            touched: s.touched,
            nanos: s.nanos,
        })
        .collect())
}

/// Cut-counting parity tables for root 0, repetition 0: `(2r + 2)^bag`
/// labelings by `k + 1` sizes by `2nk + 1` weights per node.
pub fn bench_rcds(g: &Graph, td: &TreeDecomposition, r: u32, k: usize, seed: u64) -> Result<Vec<NodeRow>, CliError> {
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    let etd = make_edge_nice(td, g);
    let run = CutCountRun::new(g.n(), k, seed, 0, 0);
    let per_bag = (k as u128 + 1) * run.width() as u128;
    let base = 2 * r as u128 + 2;
    let mut tables: Vec<Option<ParityTable>> = vec![None; etd.nodes.len()];
    let mut rows = Vec::with_capacity(etd.nodes.len());
    for (i, x) in etd.nodes.iter().enumerate() {
        let start = Instant::now();
        let mut take = |c: usize| tables[c].take().expect("child computed once");
        let t = match x.kind {
            NodeKind::Leaf => cc_leaf(r, &run),
            NodeKind::Introduce(u) => cc_introduce_vertex(&take(x.children[0]), u, &run),
            NodeKind::IntroduceEdge(u, v) => cc_introduce_edge(&take(x.children[0]), u, v)?,
            NodeKind::Forget(u) => cc_forget(&take(x.children[0]), u, NegativeForget::Reject, &[])?,
            NodeKind::Join => {
                let a = take(x.children[0]);
                cc_join(&a, &take(x.children[1]), &run)?
            }
        };
        let (labels, sizes, weights) = t.dims();
        let entries = (labels * sizes * weights) as u128;
        rows.push(NodeRow {
            node: i,
            kind: kind_name(x.kind),
            bag: x.bag.len(),
            entries,
            expected: base.pow(x.bag.len() as u32) * per_bag,
            touched: entries as u64,
            nanos: start.elapsed().as_nanos(),
        });
        tables[i] = Some(t);
    }
    Ok(rows)
}

fn emit(out: &mut dyn Write, format: Format, cells: &[String]) -> std::io::Result<()> {
    match format {
        Format::Tsv => writeln!(out, "{}", cells.join("\t")),
        Format::Human => {
            let mut line = format!("{:<16}", cells[0]);
            for c in &cells[1..] {
                line.push_str(&format!("{c:>14}"));
            }
            writeln!(out, "{}", line.trim_end())
        }
    }
}

pub(crate) fn bench_cmd(cli: &Cli, a: &BenchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = [
        ("graph", show(&a.input.graph)),
        ("td", td_name(&a.input)),
        ("r", a.r.to_string()),
        ("problem", format!("{:?}", a.problem).to_lowercase()),
        ("k", opt(&a.k, "-")),
        ("seed", a.seed.to_string()),
        ("join", format!("{:?}", a.join).to_lowercase()),
        ("per_node", a.per_node.to_string()),
        ("format", format!("{:?}", a.format).to_lowercase()),
    ];
    header(out, cli, "bench", &flags)?;
    let (g, td) = load_input(&a.input)?;
    writeln!(out, "# n={} m={} width={}", g.n(), g.m(), td.width())?;
    let rows = match a.problem {
        Problem::Rds => bench_rds(&g, &td, a.r, a.join.into())?,
        Problem::Rcds => {
            let k = a.k.ok_or_else(|| CliError::Usage("bench --problem rcds needs --k".into()))?;
            bench_rcds(&g, &td, a.r, k, a.seed)?
        }
    };
    if a.per_node {
        let head = ["node", "kind", "bag", "entries", "expected", "touched", "nanos"];
        emit(out, a.format, &head.map(String::from))?;
        for x in &rows {
            let cells = [
                x.node.to_string(),
                x.kind.to_string(),
                x.bag.to_string(),
                x.entries.to_string(),
                x.expected.to_string(),
                x.touched.to_string(),
                x.nanos.to_string(),
            ];
            emit(out, a.format, &cells)?;
        }
    } else {
        let head = ["kind", "nodes", "max_bag", "entries", "expected", "touched", "millis"];
        emit(out, a.format, &head.map(String::from))?;
        for kind in KINDS {
            let of: Vec<&NodeRow> = rows.iter().filter(|x| x.kind == kind).collect();
            if of.is_empty() {
                continue;
            }
            let cells = [
                kind.to_string(),
                of.len().to_string(),
                of.iter().map(|x| x.bag).max().unwrap_or(0).to_string(),
                of.iter().map(|x| x.entries).sum::<u128>().to_string(),
                of.iter().map(|x| x.expected).sum::<u128>().to_string(),
                of.iter().map(|x| x.touched as u128).sum::<u128>().to_string(),
                format!("{:.3}", of.iter().map(|x| x.nanos).sum::<u128>() as f64 / 1e6),
            ];
            emit(out, a.format, &cells)?;
        }
    }
    let off = rows.iter().filter(|x| x.entries != x.expected).count();
    if off > 0 {
        return Err(CliError::Internal(format!("{off} nodes with table size off the structural formula")));
    }
    Ok(0)
}

//! `rdom`: command-line front end for the solvers, oracles and the instance
//! generator.
//!
//! Every report opens with a `#` line echoing the parsed flags. Exit codes:
//! 0 success, 1 infeasible or NO under `--expect-yes`, 2 usage or input
//! errors, 3 internal failures.

mod args;
mod bench;
mod selftest;

use std::ffi::OsString;
use std::fmt::Display;
use std::io::{self, Write};
use std::path::Path;

use clap::Parser;
use graph_core::{is_connected, parse_gr, write_gr, Graph};
use oracle::{brute_min_rcds_capped, brute_min_rds_capped, is_r_dominating, OracleError};
use rayon::prelude::*;
use rcds_solver::{all_runs, decide_rcds_with, decide_rooted_with, CutCountRun, RcdsConfig, RcdsError, RunOutcome};
use rds_solver::{solve_rds_with, RdsConfig, RdsError, Rules};
use reduction_gen::{
    build_instance_rcds_with, build_instance_rds_with, parse_cnf, witness_rcds, witness_rds, BuildOptions,
    ReductionError, Repairs,
};
use thiserror::Error;
use tree_decomp::{make_edge_nice, make_nice, min_fill_decompose, parse_td, write_td, TdError, TreeDecomposition};

pub use args::*;
pub use bench::{bench_rcds, bench_rds, NodeRow};
pub use selftest::{run_self_test, CheckOutcome};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<RdsError> for CliError {
    fn from(e: RdsError) -> Self {
        match e {
            RdsError::InvalidRadius(_)
            | RdsError::TooManyVertices(_)
            | RdsError::BagTooLarge { .. }
            | RdsError::Decomposition(_) => CliError::Usage(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<RcdsError> for CliError {
    fn from(e: RcdsError) -> Self {
        match e {
            RcdsError::InvalidRadius(_)
            | RcdsError::NoRepetitions
            | RcdsError::RootOutOfRange { .. }
            | RcdsError::Decomposition(_) => CliError::Usage(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Contract(_) | ReductionError::Witness(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code. The report goes to `out`, diagnostics to `err`.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command, inside a pool of `--threads` workers when given.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {t} threads: {e}")))?;
            // The report is buffered because the pool needs a sendable sink.
            let mut buf = Vec::new();
            let res = pool.install(|| dispatch(cli, &mut buf));
            out.write_all(&buf)?;
            res
        }
        None => dispatch(cli, out),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::SolveRds(a) => solve_rds_cmd(cli, a, out),
        Command::SolveRcds(a) => solve_rcds_cmd(cli, a, out),
        Command::Oracle(a) => oracle_cmd(cli, a, out),
        Command::Gen(a) => gen_cmd(cli, a, out),
        Command::CheckTd(a) => check_td_cmd(cli, a, out),
        Command::Bench(a) => bench::bench_cmd(cli, a, out),
        Command::SelfTest(a) => selftest::self_test_cmd(cli, a, out),
    }
}

/// Writes the `#` provenance line.
pub(crate) fn header(out: &mut dyn Write, cli: &Cli, name: &str, flags: &[(&str, String)]) -> io::Result<()> {
    write!(out, "# rdom {name}")?;
    for (k, v) in flags {
        write!(out, " {k}={v}")?;
    }
    let threads = cli.threads.map_or("auto".to_string(), |t| t.to_string());
    writeln!(out, " threads={threads}")
}

pub(crate) fn show(p: &Path) -> String {
    p.display().to_string()
}

pub(crate) fn opt<T: Display>(v: &Option<T>, none: &str) -> String {
    v.as_ref().map_or(none.to_string(), |x| x.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

pub(crate) fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_gr(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Graph plus the given decomposition, or min-fill when none is given.
pub(crate) fn load_input(input: &InputArgs) -> Result<(Graph, TreeDecomposition), CliError> {
    let g = load_graph(&input.graph)?;
    let td = match &input.td {
        Some(p) => parse_td(&read(p)?, &g).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
        None => min_fill_decompose(&g),
    };
    Ok((g, td))
}

pub(crate) fn td_name(input: &InputArgs) -> String {
    input.td.as_deref().map_or("min-fill".to_string(), show)
}

fn write_set(out: &mut dyn Write, set: &[usize]) -> io::Result<()> {
    for v in set {
        writeln!(out, "S {}", v + 1)?;
    }
    Ok(())
}

fn solve_rds_cmd(cli: &Cli, a: &SolveRdsArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = [
        ("graph", show(&a.input.graph)),
        ("td", td_name(&a.input)),
        ("r", a.r.to_string()),
        ("join", format!("{:?}", a.join).to_lowercase()),
        ("validity", format!("{:?}", a.validity).to_lowercase()),
        ("forget", format!("{:?}", a.forget).to_lowercase()),
        ("self_check", a.self_check.to_string()),
    ];
    header(out, cli, "solve-rds", &flags)?;
    let (g, td) = load_input(&a.input)?;
    let cfg = RdsConfig {
        rules: Rules { r: a.r, validity: a.validity.into(), forget: a.forget.into() },
        join_mode: a.join.into(),
        self_check: a.self_check,
    };
    let run = solve_rds_with(&g, &make_nice(&td, &g), &cfg)?;
    if run.witness.len() != run.size || !is_r_dominating(&g, &run.witness, a.r) {
        return Err(CliError::Internal(format!("witness of {} vertices does not back size {}", run.witness.len(), run.size)));
    }
    writeln!(out, "# n={} m={} width={}", g.n(), g.m(), td.width())?;
    if a.self_check {
        writeln!(out, "# ordering pairs checked={}", run.ordering_pairs)?;
    }
    writeln!(out, "SIZE {}", run.size)?;
    write_set(out, &run.witness)?;
    Ok(0)
}

/// Parities for the given roots, every repetition, in (root, rep) order.
fn rooted_runs(
    g: &Graph,
    etd: &tree_decomp::EdgeNiceTreeDecomposition,
    cfg: &RcdsConfig,
    k: usize,
    seed: u64,
    reps: u64,
    root: usize,
) -> Result<Vec<RunOutcome>, RcdsError> {
    (0..reps)
        .into_par_iter()
        .map(|rep| {
            let run = CutCountRun::new(g.n(), k, seed, root, rep);
            decide_rooted_with(g, etd, cfg, k, &run).map(|hit| RunOutcome { root, rep, hit })
        })
        .collect()
}

fn solve_rcds_cmd(cli: &Cli, a: &SolveRcdsArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = [
        ("graph", show(&a.input.graph)),
        ("td", td_name(&a.input)),
        ("r", a.r.to_string()),
        ("k", opt(&a.k, "min")),
        ("seed", a.seed.to_string()),
        ("reps", a.reps.to_string()),
        ("root", opt(&a.root, "all")),
        ("expect_yes", a.expect_yes.to_string()),
        ("verbose", a.verbose.to_string()),
    ];
    header(out, cli, "solve-rcds", &flags)?;
    let (g, td) = load_input(&a.input)?;
    let n = g.n();
    let root = match a.root {
        Some(v) if v == 0 || v > n => return Err(CliError::Usage(format!("root {v} is not a vertex of 1..={n}"))),
        Some(v) => Some(v - 1),
        None => None,
    };
    let etd = make_edge_nice(&td, &g);
    let cfg = RcdsConfig::new(a.r);
    let decide = |k: usize, out: &mut dyn Write| -> Result<bool, CliError> {
        if !a.verbose && root.is_none() {
            return Ok(decide_rcds_with(&g, &etd, &cfg, k, a.seed, a.reps)?);
        }
        let runs = match root {
            Some(v) => rooted_runs(&g, &etd, &cfg, k, a.seed, a.reps, v)?,
            None => all_runs(&g, &etd, &cfg, k, a.seed, a.reps)?,
        };
        for x in &runs {
            writeln!(out, "RUN k={k} root={} rep={} parity={}", x.root + 1, x.rep, if x.hit { "odd" } else { "even" })?;
        }
        if runs.is_empty() {
            // Sizes outside 1..=n are answered without running the tables.
            return Ok(decide_rcds_with(&g, &etd, &cfg, k, a.seed, a.reps)?);
        }
        Ok(runs.iter().any(|x| x.hit))
    };
    writeln!(out, "# n={} m={} width={}", n, g.m(), td.width())?;
    match a.k {
        Some(k) => {
            let yes = decide(k, out)?;
            writeln!(out, "{}", if yes { "YES" } else { "NO" })?;
            Ok(if !yes && a.expect_yes { 1 } else { 0 })
        }
        None => {
            let all: Vec<usize> = (0..n).collect();
            if n > 0 && is_connected(&g, &all) {
                for k in 1..=n {
                    if decide(k, out)? {
                        writeln!(out, "MINSIZE {k}")?;
                        return Ok(0);
                    }
                }
            }
            writeln!(out, "MINSIZE none")?;
            Ok(1)
        }
    }
}

fn oracle_cmd(cli: &Cli, a: &OracleArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let problem = format!("{:?}", a.problem).to_lowercase();
    let flags = [("problem", problem), ("graph", show(&a.graph)), ("r", a.r.to_string()), ("cap", a.cap.to_string())];
    header(out, cli, "oracle", &flags)?;
    let g = load_graph(&a.graph)?;
    let best = match a.problem {
        Problem::Rds => Some(brute_min_rds_capped(&g, a.r, a.cap)?),
        Problem::Rcds => brute_min_rcds_capped(&g, a.r, a.cap)?,
    };
    match best {
        Some((k, set)) => {
            writeln!(out, "SIZE {k}")?;
            write_set(out, &set)?;
            Ok(0)
        }
        None => {
            writeln!(out, "SIZE none")?;
            Ok(1)
        }
    }
}

fn gen_cmd(cli: &Cli, a: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = [
        ("kind", format!("{:?}", a.kind).to_lowercase()),
        ("r", a.r.to_string()),
        ("p", a.p.to_string()),
        ("cnf", show(&a.cnf)),
        ("out", a.out.as_deref().map_or("-".into(), show)),
        ("meta", a.meta.as_deref().map_or("-".into(), show)),
        ("literal", a.literal.to_string()),
        ("cap", a.cap.to_string()),
        ("verify", a.verify.to_string()),
    ];
    header(out, cli, "gen", &flags)?;
    let cnf = parse_cnf(&read(&a.cnf)?)?;
    let repairs = if a.literal { Repairs::NONE } else { Repairs::default() };
    let opts = BuildOptions { vertex_cap: a.cap, repairs };
    let inst = match a.kind {
        Problem::Rds => build_instance_rds_with(&cnf, a.r, a.p, &opts)?,
        Problem::Rcds => build_instance_rcds_with(&cnf, a.r, a.p, &opts)?,
    };
    let sidecar = inst.sidecar();
    if let Some(path) = &a.out {
        write_file(path, &write_gr(&inst.graph))?;
    }
    if let Some(path) = &a.meta {
        write_file(path, &sidecar)?;
    }
    out.write_all(sidecar.as_bytes())?;
    if a.verify {
        let assignments = cnf.satisfying_assignments();
        if assignments.is_empty() {
            writeln!(out, "witness=none")?;
        }
        for assignment in &assignments {
            let w = match a.kind {
                Problem::Rds => witness_rds(&inst, assignment),
                Problem::Rcds => witness_rcds(&inst, assignment),
            };
            if let Err(e) = w.and_then(|w| inst.check_solution(&w)) {
                let bits: String = assignment.iter().map(|&b| if b { '1' } else { '0' }).collect();
                writeln!(out, "witness=invalid assignment={bits} ({e})")?;
                return Ok(1);
            }
        }
        if !assignments.is_empty() {
            writeln!(out, "witness=valid assignments={}", assignments.len())?;
        }
    }
    Ok(0)
}

fn check_td_cmd(cli: &Cli, a: &CheckTdArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = [
        ("graph", show(&a.input.graph)),
        ("td", td_name(&a.input)),
        ("out", a.out.as_deref().map_or("-".into(), show)),
    ];
    header(out, cli, "check-td", &flags)?;
    let g = load_graph(&a.input.graph)?;
    let td = match &a.input.td {
        Some(p) => match parse_td(&read(p)?, &g) {
            Ok(td) => td,
            Err(TdError::Invalid(v)) => {
                writeln!(out, "INVALID {v}")?;
                return Ok(1);
            }
            Err(e) => return Err(CliError::Usage(format!("{}: {e}", p.display()))),
        },
        None => min_fill_decompose(&g),
    };
    if let Some(path) = &a.out {
        write_file(path, &write_td(&td, g.n()))?;
    }
    writeln!(out, "VALID width={} bags={}", td.width(), td.bags.len())?;
    Ok(0)
}

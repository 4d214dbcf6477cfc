use std::io::Write;

use graph_core::Graph;
use oracle::{brute_count_cuts_kw, brute_min_rcds, brute_min_rds, is_r_dominating};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rcds_solver::{min_rcds_with, root_table, CutCountRun, ParityTable, RcdsConfig, Row};
use rds_solver::{solve_rds_with, JoinMode, RdsConfig};
use reduction_gen::{build_instance_rcds, build_instance_rds, witness_rcds, witness_rds, CnfFormula};
use tree_decomp::{make_edge_nice, make_nice, min_fill_decompose};

use crate::bench::{bench_rcds, bench_rds};
use crate::{header, Cli, CliError, SelfTestArgs};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome { name, passed, detail }
}

pub(crate) fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("vertices in range");
            }
        }
    }
    g
}

/// Random spanning tree plus independent extra edges.
pub(crate) fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = random_graph(rng, n, p);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v).expect("vertices in range");
    }
    g
}

fn rds_checks(rng: &mut ChaCha8Rng, graphs: usize) -> Result<Vec<CheckOutcome>, CliError> {
    let (mut runs, mut wrong, mut bad_witness, mut mode_diff, mut pairs) = (0, 0, 0, 0, 0u64);
    let mut first_wrong = String::new();
    for i in 0..graphs {
        let n = rng.gen_range(1..=8);
        let p = [0.2, 0.4, 0.6][i % 3];
        let g = random_graph(rng, n, p);
        let nice = make_nice(&min_fill_decompose(&g), &g);
        for r in 1..=3 {
            let checked = RdsConfig { self_check: true, ..RdsConfig::new(r) };
            let run = solve_rds_with(&g, &nice, &checked)?;
            let dense = solve_rds_with(&g, &nice, &RdsConfig { join_mode: JoinMode::Dense, ..RdsConfig::new(r) })?;
            let (best, _) = brute_min_rds(&g, r)?;
            runs += 1;
            pairs += run.ordering_pairs;
            if run.size != best && first_wrong.is_empty() {
                first_wrong = format!(" first: graph {i} r={r} got {} want {best}", run.size);
            }
            wrong += usize::from(run.size != best);
            bad_witness += usize::from(run.witness.len() != best || !is_r_dominating(&g, &run.witness, r));
            mode_diff += usize::from(dense.size != run.size);
        }
    }
    Ok(vec![
        outcome("rds-exact", wrong == 0, format!("{wrong} mismatches in {runs} runs{first_wrong}")),
        outcome("rds-witness", bad_witness == 0, format!("{bad_witness} bad witnesses in {runs} runs")),
        outcome("rds-join-modes", mode_diff == 0, format!("{mode_diff} dense/sparse differences")),
        // A violation aborts the run with an error, so reaching here means none.
        outcome("ordering", true, format!("{pairs} labeling pairs compared, 0 violations")),
    ])
}

fn base_checks(rng: &mut ChaCha8Rng) -> Result<CheckOutcome, CliError> {
    let (mut nodes, mut off) = (0, 0);
    for _ in 0..6 {
        let n = rng.gen_range(2..=7);
        let g = random_graph(rng, n, 0.4);
        let td = min_fill_decompose(&g);
        for r in 1..=2 {
            let mut rows = bench_rds(&g, &td, r, JoinMode::Sparse)?;
            rows.extend(bench_rcds(&g, &td, r, rng.gen_range(1..=n), 1)?);
            nodes += rows.len();
            off += rows.iter().filter(|x| x.entries != x.expected).count();
        }
    }
    Ok(outcome("table-bases", off == 0, format!("{off} of {nodes} node tables off the formula")))
}

fn rcds_checks(rng: &mut ChaCha8Rng, graphs: usize, seed: u64) -> Result<Vec<CheckOutcome>, CliError> {
    let (mut trials, mut mismatches, mut false_pos) = (0, 0, 0);
    for i in 0..graphs {
        let n = rng.gen_range(1..=7);
        let p = rng.gen_range(0.0..0.4);
        let g = random_connected(rng, n, p);
        let etd = make_edge_nice(&min_fill_decompose(&g), &g);
        for r in 1..=2 {
            let got = min_rcds_with(&g, &etd, &RcdsConfig::new(r), seed ^ i as u64, 10)?;
            let want = brute_min_rcds(&g, r)?.map(|x| x.0);
            trials += 1;
            mismatches += usize::from(got != want);
            false_pos += usize::from(matches!((got, want), (Some(a), Some(b)) if a < b));
        }
    }
    let (mut cells, mut parity_off) = (0u64, 0);
    for trial in 0..graphs.min(12) {
        let n = rng.gen_range(1..=5);
        let g = random_graph(rng, n, 0.5);
        let etd = make_edge_nice(&min_fill_decompose(&g), &g);
        let r = rng.gen_range(1..=2);
        let root = rng.gen_range(0..n);
        let run = CutCountRun::new(n, n, seed ^ trial as u64, root, 0);
        let t: ParityTable = root_table(&g, &etd, &RcdsConfig::new(r), &run)?;
        for k in 0..=n {
            for w in 0..run.width() {
                let brute = brute_count_cuts_kw(&g, r, k, w as u64, &run.weights, root)?;
                cells += 1;
                parity_off += usize::from(t.row(0, k).get(w) != brute % 2);
            }
        }
    }
    Ok(vec![
        outcome(
            "rcds-decision",
            mismatches <= 1 && false_pos == 0,
            format!("{mismatches} mismatches, {false_pos} false positives in {trials} trials"),
        ),
        outcome("cut-parity", parity_off == 0, format!("{parity_off} of {cells} (k, W) cells differ")),
    ])
}

fn reduction_check() -> Result<CheckOutcome, CliError> {
    let cnf = CnfFormula::new(2, vec![vec![1, 2]])?;
    let mut bad = Vec::new();
    for r in 2..=3u32 {
        let rds = build_instance_rds(&cnf, r, 1)?;
        let rcds = build_instance_rcds(&cnf, r, 1)?;
        let (t, m, p) = (rds.params.t, rds.params.m, 1);
        let rds_target = (p + 1) * t * m * (2 * r as usize * p * t + 1) + 2;
        let (t2, r2) = (rcds.params.t, r as usize);
        let rcds_target = ((r2 + 2) * p + r2 + 1) * t2 * m * ((2 * r2 + 1) * t2 * p + 1) + 1;
        if rds.target != rds_target || rcds.target != rcds_target {
            bad.push(format!("r={r} size"));
        }
        for a in cnf.satisfying_assignments() {
            if rds.check_solution(&witness_rds(&rds, &a)?).is_err() || rcds.check_solution(&witness_rcds(&rcds, &a)?).is_err()
            {
                bad.push(format!("r={r} witness {a:?}"));
            }
        }
    }
    let detail = if bad.is_empty() { "sizes and witnesses hold for r=2,3".to_string() } else { bad.join(", ") };
    Ok(outcome("reduction", bad.is_empty(), detail))
}

/// Differential checks at reduced sizes; `graphs` random graphs per check.
pub fn run_self_test(seed: u64, graphs: usize) -> Result<Vec<CheckOutcome>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all = rds_checks(&mut rng, graphs)?;
    all.push(base_checks(&mut rng)?);
    all.extend(rcds_checks(&mut rng, graphs, seed)?);
    all.push(reduction_check()?);
    Ok(all)
}

pub(crate) fn self_test_cmd(cli: &Cli, a: &SelfTestArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    header(out, cli, "self-test", &[("seed", a.seed.to_string()), ("graphs", a.graphs.to_string())])?;
    let checks = run_self_test(a.seed, a.graphs)?;
    for c in &checks {
        writeln!(out, "{} {} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(out, "SUMMARY {} passed {failed} failed", checks.len() - failed)?;
    Ok(if failed == 0 { 0 } else { 3 })
}

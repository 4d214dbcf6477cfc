use graph_core::{families, Graph};
use oracle::{brute_min_rds, is_r_dominating};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rds_solver::{solve_rds, solve_rds_with, ForgetRule, JoinMode, RdsConfig, RdsError, ValidityRule, MAX_RADIUS};
use tree_decomp::{make_nice, min_fill_decompose};

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn solve(g: &Graph, cfg: &RdsConfig) -> Result<(usize, Vec<usize>), RdsError> {
    let nice = make_nice(&min_fill_decompose(g), g);
    solve_rds_with(g, &nice, cfg).map(|run| (run.size, run.witness))
}

#[test]
fn named_graphs() {
    let td = |g: &Graph| min_fill_decompose(g);
    let p5 = families::path(5);
    assert_eq!(solve_rds(&p5, &td(&p5), 2).unwrap(), (1, vec![2]));
    let c9 = families::cycle(9);
    let (size, witness) = solve_rds(&c9, &td(&c9), 1).unwrap();
    assert_eq!(size, 3);
    assert!(is_r_dominating(&c9, &witness, 1));
    let two = families::disjoint_union(&families::complete(3), &families::complete(3));
    assert_eq!(solve_rds(&two, &td(&two), 1).unwrap().0, 2);
    let empty = Graph::new(4);
    assert_eq!(solve_rds(&empty, &td(&empty), 1).unwrap(), (4, vec![0, 1, 2, 3]));
    assert_eq!(solve_rds(&p5, &td(&p5), 0), Err(RdsError::InvalidRadius(0)));
    assert_eq!(solve_rds(&p5, &td(&p5), MAX_RADIUS).unwrap().0, 1);
    assert_eq!(solve_rds(&p5, &td(&p5), MAX_RADIUS + 1), Err(RdsError::InvalidRadius(MAX_RADIUS + 1)));
}

#[test]
fn default_rules_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..240 {
        let n = rng.gen_range(1..=9);
        let p = [0.2, 0.4, 0.6][trial % 3];
        let g = random_graph(&mut rng, n, p);
        for r in 1..=3 {
            let want = brute_min_rds(&g, r).unwrap().0;
            for mode in [JoinMode::Dense, JoinMode::Sparse] {
                let mut cfg = RdsConfig::new(r);
                cfg.join_mode = mode;
                cfg.self_check = true;
                let (size, witness) = solve(&g, &cfg).unwrap();
                assert_eq!(size, want, "trial {trial} r={r} edges {:?}", g.edges());
                assert!(is_r_dominating(&g, &witness, r));
                assert_eq!(witness.len(), size);
            }
        }
    }
}

/// Runs the oracle comparison for a non-default rule set and returns the
/// number of disagreements and failed runs.
fn disagreements(validity: ValidityRule, forget: ForgetRule) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut bad = 0;
    for _ in 0..600 {
        let n = rng.gen_range(2..=11);
        let p = rng.gen_range(0.1..0.5);
        let g = random_graph(&mut rng, n, p);
        for r in 1..=4 {
            let mut cfg = RdsConfig::new(r);
            cfg.rules.validity = validity;
            cfg.rules.forget = forget;
            let want = brute_min_rds(&g, r).unwrap().0;
            match solve(&g, &cfg) {
                Ok((size, _)) if size == want => {}
                _ => bad += 1,
            }
        }
    }
    bad
}

#[test]
fn signed_validity_disagrees_with_brute_force() {
    assert!(disagreements(ValidityRule::Signed, ForgetRule::Magnitude) > 0);
}

#[test]
fn literal_forget_rule_disagrees_with_brute_force() {
    assert!(disagreements(ValidityRule::Magnitude, ForgetRule::Literal) > 0);
}

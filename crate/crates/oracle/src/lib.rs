//! Brute-force ground truth for domination and cut counting.
//!
//! Everything here enumerates subsets directly. Size caps are hard
//! refusals so a caller never gets a partial answer.

use graph_core::{bfs_distances, component_count, is_connected, Graph};
use thiserror::Error;

pub const DEFAULT_CAP: usize = 20;
pub const CUT_COUNT_CAP: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle cap is {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("root vertex {0} is not in the chosen set")]
    RootNotInSet(usize),
    #[error("weight vector has length {got}, expected {want}")]
    WeightLength { got: usize, want: usize },
}

/// Subsets of `0..n` in order of cardinality, lexicographic within a size.
#[derive(Debug, Clone)]
pub struct SubsetIterator {
    n: usize,
    current: Option<Vec<usize>>,
}

impl SubsetIterator {
    pub fn new(n: usize) -> Self {
        SubsetIterator { n, current: Some(Vec::new()) }
    }

    /// Starts at the first subset of size `k`.
    pub fn from_size(n: usize, k: usize) -> Self {
        SubsetIterator { n, current: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for SubsetIterator {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut nxt = cur.clone();
        let mut i = k;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if nxt[i] < self.n - k + i {
                nxt[i] += 1;
                for j in i + 1..k {
                    nxt[j] = nxt[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if advanced {
            self.current = Some(nxt);
        } else if k < self.n {
            self.current = Some((0..=k).collect());
        }
        Some(cur)
    }
}

/// Multi-source BFS from `d`: every vertex within `r` hops?
pub fn is_r_dominating(g: &Graph, d: &[usize], r: u32) -> bool {
    if g.n() == 0 {
        return true;
    }
    if d.is_empty() {
        return false;
    }
    bfs_distances(g, d, None).expect("set in range").all_within(r)
}

/// Bitmask of the closed r-ball around each vertex.
fn balls(g: &Graph, r: u32) -> Vec<u64> {
    (0..g.n())
        .map(|v| {
            let d = bfs_distances(g, &[v], None).unwrap();
            (0..g.n())
                .filter(|&w| matches!(d.get(w), Some(x) if x <= r))
                .fold(0u64, |acc, w| acc | 1 << w)
        })
        .collect()
}

fn check_cap(g: &Graph, cap: usize) -> Result<(), OracleError> {
    if g.n() > cap {
        return Err(OracleError::TooLarge { n: g.n(), cap });
    }
    Ok(())
}

fn first_optimum(
    g: &Graph,
    r: u32,
    cap: usize,
    accept: impl Fn(&[usize]) -> bool,
) -> Result<Option<(usize, Vec<usize>)>, OracleError> {
    check_cap(g, cap.min(63))?;
    let full = if g.n() == 0 { 0 } else { u64::MAX >> (64 - g.n()) };
    let ball = balls(g, r);
    for s in SubsetIterator::new(g.n()) {
        let covered = s.iter().fold(0u64, |acc, &v| acc | ball[v]);
        if covered == full && accept(&s) {
            return Ok(Some((s.len(), s)));
        }
    }
    Ok(None)
}

/// Minimum r-dominating set and the lexicographically first optimum.
pub fn brute_min_rds(g: &Graph, r: u32) -> Result<(usize, Vec<usize>), OracleError> {
    brute_min_rds_capped(g, r, DEFAULT_CAP)
}

pub fn brute_min_rds_capped(
    g: &Graph,
    r: u32,
    cap: usize,
) -> Result<(usize, Vec<usize>), OracleError> {
    Ok(first_optimum(g, r, cap, |_| true)?.expect("the full vertex set dominates"))
}

/// Minimum connected r-dominating set, or `None` when none exists.
pub fn brute_min_rcds(g: &Graph, r: u32) -> Result<Option<(usize, Vec<usize>)>, OracleError> {
    brute_min_rcds_capped(g, r, DEFAULT_CAP)
}

pub fn brute_min_rcds_capped(
    g: &Graph,
    r: u32,
    cap: usize,
) -> Result<Option<(usize, Vec<usize>)>, OracleError> {
    if g.n() == 0 {
        check_cap(g, cap)?;
        return Ok(None);
    }
    first_optimum(g, r, cap, |s| is_connected(g, s))
}

fn for_each_cut(g: &Graph, set: &[usize], root: Option<usize>, mut f: impl FnMut()) {
    let k = set.len();
    for mask in 0u64..1 << k {
        let side = |i: usize| mask >> i & 1 == 1;
        if let Some(rho) = root {
            if let Some(i) = set.iter().position(|&v| v == rho) {
                if side(i) {
                    continue;
                }
            }
        }
        let crossing = (0..k).any(|i| {
            (i + 1..k).any(|j| side(i) != side(j) && g.has_edge(set[i], set[j]))
        });
        if !crossing {
            f();
        }
    }
}

/// Bipartitions `(C1, C2)` of `set` with no edge across and `root` in `C1`.
pub fn count_consistent_cuts(g: &Graph, set: &[usize], root: usize) -> Result<u64, OracleError> {
    if !set.contains(&root) {
        return Err(OracleError::RootNotInSet(root));
    }
    check_cap(g, DEFAULT_CAP)?;
    let mut count = 0;
    for_each_cut(g, set, Some(root), || count += 1);
    Ok(count)
}

/// `2^(cc - 1)` computed from the component count, for comparison.
pub fn cut_count_formula(g: &Graph, set: &[usize]) -> u64 {
    1 << (component_count(g, set) - 1)
}

fn check_weights(g: &Graph, weights: &[u64]) -> Result<(), OracleError> {
    if weights.len() != g.n() {
        return Err(OracleError::WeightLength { got: weights.len(), want: g.n() });
    }
    Ok(())
}

/// Number of pairs (C, cut) where C is an r-dominating set with |C| = k and
/// weight `w`, and the cut is a consistent cut of `G[C]` (root on side one).
pub fn brute_count_cuts_kw(
    g: &Graph,
    r: u32,
    k: usize,
    w: u64,
    weights: &[u64],
    root: usize,
) -> Result<u64, OracleError> {
    check_cap(g, CUT_COUNT_CAP)?;
    check_weights(g, weights)?;
    let mut total = 0;
    for s in SubsetIterator::from_size(g.n(), k).take_while(|s| s.len() == k) {
        if s.iter().map(|&v| weights[v]).sum::<u64>() != w || !s.contains(&root) {
            continue;
        }
        if is_r_dominating(g, &s, r) {
            for_each_cut(g, &s, Some(root), || total += 1);
        }
    }
    Ok(total)
}

/// Like [`brute_count_cuts_kw`] but counts consistent subcuts, so sets
/// avoiding the root contribute all `2^cc` bipartitions.
pub fn brute_count_subcuts_kw(
    g: &Graph,
    r: u32,
    k: usize,
    w: u64,
    weights: &[u64],
    root: usize,
) -> Result<u64, OracleError> {
    check_cap(g, CUT_COUNT_CAP)?;
    check_weights(g, weights)?;
    let mut total = 0;
    for s in SubsetIterator::from_size(g.n(), k).take_while(|s| s.len() == k) {
        if s.iter().map(|&v| weights[v]).sum::<u64>() == w && is_r_dominating(g, &s, r) {
            for_each_cut(g, &s, Some(root), || total += 1);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::families::{complete, cycle, path, star};

    #[test]
    fn subsets_by_size_then_lex() {
        let all: Vec<_> = SubsetIterator::new(3).collect();
        assert_eq!(
            all,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2]
            ]
        );
        assert_eq!(SubsetIterator::new(0).count(), 1);
    }

    #[test]
    fn domination_checks() {
        let p5 = path(5);
        assert!(is_r_dominating(&p5, &[2], 2));
        assert!(!is_r_dominating(&p5, &[0], 2));
        assert!(is_r_dominating(&p5, &[0, 1, 2, 3, 4], 0));
    }

    #[test]
    fn small_minimum_sets() {
        assert_eq!(brute_min_rds(&cycle(9), 1).unwrap(), (3, vec![0, 3, 6]));
        assert_eq!(brute_min_rds(&star(5), 1).unwrap().0, 1);
        assert_eq!(brute_min_rds(&Graph::new(1), 1).unwrap().0, 1);
        assert_eq!(brute_min_rcds(&cycle(6), 1).unwrap().unwrap().0, 4);
        assert_eq!(brute_min_rcds(&complete(4), 1).unwrap().unwrap().0, 1);
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(brute_min_rcds(&two_edges, 1).unwrap(), None);
    }

    #[test]
    fn cap_is_a_refusal() {
        let big = path(21);
        assert_eq!(brute_min_rds(&big, 1), Err(OracleError::TooLarge { n: 21, cap: 20 }));
        assert!(brute_count_cuts_kw(&path(8), 1, 1, 1, &[1; 8], 0).is_err());
    }

    #[test]
    fn cut_counts_follow_components() {
        assert_eq!(count_consistent_cuts(&complete(3), &[0, 1, 2], 1).unwrap(), 1);
        let two = Graph::new(2);
        assert_eq!(count_consistent_cuts(&two, &[0, 1], 0).unwrap(), 2);
        assert_eq!(count_consistent_cuts(&two, &[0], 0).unwrap(), 1);
        assert_eq!(
            count_consistent_cuts(&two, &[1], 0),
            Err(OracleError::RootNotInSet(0))
        );
    }

    #[test]
    fn kw_counts_on_single_vertex() {
        let g = Graph::new(1);
        assert_eq!(brute_count_cuts_kw(&g, 1, 1, 3, &[3], 0).unwrap(), 1);
        assert_eq!(brute_count_cuts_kw(&g, 1, 1, 2, &[3], 0).unwrap(), 0);
        assert_eq!(brute_count_cuts_kw(&path(5), 1, 1, 1, &[1; 5], 2).unwrap(), 0);
    }
}

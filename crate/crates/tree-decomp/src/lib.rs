//! Tree decompositions: PACE `.td` I/O, validation, a min-fill heuristic,
//! and conversion to nice and edge-nice rooted forms.

mod minfill;
mod nice;

pub use minfill::min_fill_decompose;
pub use nice::{make_edge_nice, make_nice, EdgeNiceTreeDecomposition, NiceTreeDecomposition, Node, NodeKind};

use std::fmt::Write;

use graph_core::{Graph, ParseError};
use thiserror::Error;

/// Unrooted decomposition. Bags are sorted 0-based vertex lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

/// Which defining condition a decomposition breaks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("condition 1: vertex {} is in no bag", .0 + 1)]
    UncoveredVertex(usize),
    #[error("condition 2: edge {}-{} is in no bag", .0 + 1, .1 + 1)]
    UncoveredEdge(usize, usize),
    #[error("condition 3: bags containing vertex {} are not connected", .0 + 1)]
    DisconnectedOccurrence(usize),
    #[error("bag graph is not a tree")]
    NotATree,
    #[error("bag {bag} mentions vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { bag: usize, vertex: usize, n: usize },
}

impl Violation {
    /// 1, 2 or 3 for the three defining conditions, 0 for structural errors.
    pub fn condition(&self) -> u8 {
        match self {
            Violation::UncoveredVertex(_) => 1,
            Violation::UncoveredEdge(..) => 2,
            Violation::DisconnectedOccurrence(_) => 3,
            _ => 0,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TdError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid decomposition: {0}")]
    Invalid(#[from] Violation),
}

impl TreeDecomposition {
    pub fn new(mut bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, edges }
    }

    /// Largest bag size minus one; 0 for a decomposition without vertices.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        adj
    }
}

/// Checks the tree shape and the three conditions, in that order.
pub fn validate(td: &TreeDecomposition, g: &Graph) -> Result<(), Violation> {
    let n = g.n();
    let nb = td.bags.len();
    for (i, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| v >= n) {
            return Err(Violation::VertexOutOfRange { bag: i + 1, vertex: v + 1, n });
        }
    }
    if nb == 0 {
        return match n {
            0 => Ok(()),
            _ => Err(Violation::UncoveredVertex(0)),
        };
    }
    let adj = td.adjacency();
    if td.edges.len() != nb - 1
        || td.edges.iter().any(|&(a, b)| a >= nb || b >= nb || a == b)
        || reachable(&adj, 0, |_| true).iter().filter(|&&x| x).count() != nb
    {
        return Err(Violation::NotATree);
    }
    let mut holders = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            holders[v].push(i);
        }
    }
    if let Some(v) = holders.iter().position(Vec::is_empty) {
        return Err(Violation::UncoveredVertex(v));
    }
    for (u, v) in g.edges() {
        if !holders[u].iter().any(|&i| td.bags[i].binary_search(&v).is_ok()) {
            return Err(Violation::UncoveredEdge(u, v));
        }
    }
    let mut inside = vec![false; nb];
    for (v, hs) in holders.iter().enumerate() {
        for &i in hs {
            inside[i] = true;
        }
        let seen = reachable(&adj, hs[0], |i| inside[i]);
        let connected = hs.iter().all(|&i| seen[i]);
        for &i in hs {
            inside[i] = false;
        }
        if !connected {
            return Err(Violation::DisconnectedOccurrence(v));
        }
    }
    Ok(())
}

fn reachable(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] && allowed(j) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen
}

/// Parses PACE `.td`: `s td <bags> <width+1> <n>`, `b <id> <v...>` lines,
/// then tree edges. The result is validated against `g`.
pub fn parse_td(text: &str, g: &Graph) -> Result<TreeDecomposition, TdError> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<usize, ParseError> {
            s.parse()
                .map_err(|_| ParseError::new(line_no, format!("not a non-negative integer: {s:?}")))
        };
        if tok[0] == "s" {
            if header.is_some() || tok.len() != 5 || tok[1] != "td" {
                return Err(ParseError::new(line_no, "expected header `s td <bags> <width+1> <n>`").into());
            }
            let count = num(tok[2])?;
            let n = num(tok[4])?;
            if n != g.n() {
                return Err(ParseError::new(line_no, format!("decomposition is for {n} vertices, graph has {}", g.n())).into());
            }
            header = Some((count, num(tok[3])?));
            bags = vec![None; count];
            continue;
        }
        let Some((count, _)) = header else {
            return Err(ParseError::new(line_no, "content before header").into());
        };
        if tok[0] == "b" {
            let id = num(tok.get(1).copied().unwrap_or(""))?;
            if id == 0 || id > count || bags[id - 1].is_some() {
                return Err(ParseError::new(line_no, format!("bad or repeated bag id {id}")).into());
            }
            let mut bag = Vec::new();
            for t in &tok[2..] {
                let v = num(t)?;
                if v == 0 || v > g.n() {
                    return Err(ParseError::new(line_no, format!("vertex {v} out of range")).into());
                }
                bag.push(v - 1);
            }
            bags[id - 1] = Some(bag);
        } else {
            if tok.len() != 2 {
                return Err(ParseError::new(line_no, "expected tree edge `a b`").into());
            }
            let (a, b) = (num(tok[0])?, num(tok[1])?);
            if a == 0 || b == 0 || a > count || b > count {
                return Err(ParseError::new(line_no, "tree edge mentions unknown bag").into());
            }
            edges.push((a - 1, b - 1));
        }
    }
    let (_, declared) = header.ok_or_else(|| ParseError::new(0, "missing header"))?;
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| ParseError::new(0, format!("bag {} missing", i + 1))))
        .collect::<Result<_, _>>()?;
    let td = TreeDecomposition::new(bags, edges);
    let actual = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    if actual > declared {
        return Err(ParseError::new(0, format!("header width+1 is {declared}, largest bag has {actual}")).into());
    }
    validate(&td, g)?;
    Ok(td)
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let size = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.bags.len(), size, n);
    for (i, bag) in td.bags.iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::families::{cycle, star};

    #[test]
    fn star_with_path_of_bags() {
        let g = star(3);
        let td = parse_td("s td 3 2 4\nb 1 1 2\nb 2 1 3\nb 3 1 4\n1 2\n2 3\n", &g).unwrap();
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn missing_edge_is_condition_two() {
        let g = star(3);
        let err = parse_td("s td 3 2 4\nb 1 1 2\nb 2 1 3\nb 3 4\n1 2\n2 3\n", &g).unwrap_err();
        match err {
            TdError::Invalid(v) => assert_eq!(v.condition(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_bag_cycle() {
        let g = cycle(4);
        let td = parse_td("s td 1 4 4\nb 1 1 2 3 4\n", &g).unwrap();
        assert_eq!(td.width(), 3);
    }

    #[test]
    fn split_occurrence_is_condition_three() {
        let g = Graph::new(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2], vec![0]], vec![(0, 1), (1, 2)]);
        assert_eq!(validate(&td, &g).unwrap_err().condition(), 3);
    }

    #[test]
    fn empty_decomposition_is_condition_one() {
        let td = TreeDecomposition::new(vec![], vec![]);
        assert_eq!(validate(&td, &Graph::new(2)).unwrap_err().condition(), 1);
        assert!(validate(&td, &Graph::new(0)).is_ok());
    }

    #[test]
    fn forest_is_rejected() {
        let td = TreeDecomposition::new(vec![vec![0], vec![1]], vec![]);
        assert_eq!(validate(&td, &Graph::new(2)), Err(Violation::NotATree));
    }

    #[test]
    fn text_round_trip() {
        let g = cycle(5);
        let td = min_fill_decompose(&g);
        assert_eq!(parse_td(&write_td(&td, 5), &g).unwrap(), td);
    }
}

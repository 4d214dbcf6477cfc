use std::fmt::Write;

use crate::{Graph, ParseError};

/// Parses the PACE `.gr` format: `c` comments, a `p tw n m` header, then
/// `m` lines `u v` with 1-based ids.
pub fn parse_gr(text: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<Graph> = None;
    let mut declared_m = 0usize;
    let mut seen_m = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "p" {
            if graph.is_some() {
                return Err(ParseError::new(line_no, "duplicate header"));
            }
            if tokens.len() != 4 || tokens[1] != "tw" {
                return Err(ParseError::new(line_no, "expected header `p tw <n> <m>`"));
            }
            let n = parse_num(tokens[2], line_no)?;
            declared_m = parse_num(tokens[3], line_no)?;
            graph = Some(Graph::new(n));
            continue;
        }
        let g = graph
            .as_mut()
            .ok_or_else(|| ParseError::new(line_no, "edge line before header"))?;
        if tokens.len() != 2 {
            return Err(ParseError::new(line_no, "expected edge line `u v`"));
        }
        let u = parse_num(tokens[0], line_no)?;
        let v = parse_num(tokens[1], line_no)?;
        let n = g.n();
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(ParseError::new(line_no, format!("vertex {x} out of range 1..={n}")));
            }
        }
        if u == v {
            return Err(ParseError::new(line_no, format!("self-loop on vertex {u}")));
        }
        g.add_edge(u - 1, v - 1).expect("checked above");
        seen_m += 1;
    }
    let g = graph.ok_or_else(|| ParseError::new(0, "missing header"))?;
    if seen_m != declared_m {
        return Err(ParseError::new(
            0,
            format!("header declares {declared_m} edges, found {seen_m}"),
        ));
    }
    Ok(g)
}

pub fn write_gr(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("p tw {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

fn parse_num(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("not a non-negative integer: {tok:?}")))
}

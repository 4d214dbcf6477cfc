use std::collections::BTreeSet;

use graph_core::Graph;

use crate::TreeDecomposition;

/// Decomposition from a greedy min-fill elimination ordering.
/// Ties go to the smallest vertex id, so the output is reproducible.
pub fn min_fill_decompose(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill_in(&adj, v), v))
            .expect("a live vertex remains");
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[a].remove(&v);
        }
        let mut bag = nb;
        bag.push(v);
        bags.push(bag);
        order.push(v);
        alive[v] = false;
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, bag) in bags.iter().enumerate() {
        let v = order[i];
        match bag.iter().filter(|&&w| w != v).map(|&w| position[w]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, edges)
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nb: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nb.iter().enumerate() {
        missing += nb[i + 1..].iter().filter(|b| !adj[a].contains(b)).count();
    }
    missing
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate;
    use graph_core::families::{complete, cycle, path, star};

    #[test]
    fn trees_have_width_one() {
        for g in [path(7), star(5)] {
            let td = min_fill_decompose(&g);
            validate(&td, &g).unwrap();
            assert_eq!(td.width(), 1);
        }
    }

    #[test]
    fn complete_and_cycle_widths() {
        assert_eq!(min_fill_decompose(&complete(4)).width(), 3);
        assert_eq!(min_fill_decompose(&cycle(5)).width(), 2);
    }

    #[test]
    fn disconnected_graphs_get_one_tree() {
        let g = Graph::from_edges(5, &[(0, 1), (3, 4)]).unwrap();
        let td = min_fill_decompose(&g);
        validate(&td, &g).unwrap();
    }
}

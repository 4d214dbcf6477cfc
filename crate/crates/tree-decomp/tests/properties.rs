use graph_core::{families, Graph};
use proptest::prelude::*;
use tree_decomp::{make_edge_nice, make_nice, min_fill_decompose, validate, NodeKind};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0f64..0.7).prop_flat_map(|(n, p)| {
        proptest::collection::vec(0.0f64..1.0, n * (n - 1) / 2).prop_map(move |coins| {
            let mut g = Graph::new(n);
            let mut it = coins.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() < p {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
    })
}

/// Treewidth by trying every elimination ordering.
fn exhaustive_treewidth(g: &Graph) -> usize {
    fn go(adj: &mut Vec<Vec<bool>>, alive: &mut Vec<bool>, best_so_far: usize, best: &mut usize) {
        let live: Vec<usize> = (0..alive.len()).filter(|&v| alive[v]).collect();
        if live.is_empty() {
            *best = (*best).min(best_so_far);
            return;
        }
        for &v in &live {
            let nb: Vec<usize> = live.iter().copied().filter(|&w| w != v && adj[v][w]).collect();
            let here = best_so_far.max(nb.len());
            if here >= *best {
                continue;
            }
            let saved = adj.clone();
            for &a in &nb {
                for &b in &nb {
                    if a != b {
                        adj[a][b] = true;
                    }
                }
            }
            alive[v] = false;
            go(adj, alive, here, best);
            alive[v] = true;
            *adj = saved;
        }
    }
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut best = n.saturating_sub(1);
    go(&mut adj, &mut vec![true; n], 0, &mut best);
    best
}

#[test]
fn min_fill_matches_exhaustive_width_on_small_classics() {
    for g in [families::cycle(5), families::complete(4), families::path(6), families::cycle(6)] {
        assert_eq!(min_fill_decompose(&g).width(), exhaustive_treewidth(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn min_fill_is_valid_and_not_below_treewidth(g in arb_graph(6)) {
        let td = min_fill_decompose(&g);
        prop_assert!(validate(&td, &g).is_ok());
        prop_assert!(td.width() >= exhaustive_treewidth(&g));
    }

    #[test]
    fn nice_form_keeps_width_and_forgets_each_vertex_once(g in arb_graph(12)) {
        let td = min_fill_decompose(&g);
        let nice = make_nice(&td, &g);
        prop_assert!(nice.check_structure().is_ok());
        prop_assert_eq!(nice.width(), td.width());
        let mut forgotten = vec![0; g.n()];
        for x in &nice.nodes {
            if let NodeKind::Forget(v) = x.kind {
                forgotten[v] += 1;
            }
        }
        prop_assert!(forgotten.iter().all(|&c| c == 1));
        prop_assert!(nice.nodes.len() <= (td.width() + 2) * 2 * td.bags.len() + 1);
    }

    #[test]
    fn edge_nice_introduces_each_edge_once(g in arb_graph(12)) {
        let td = min_fill_decompose(&g);
        let en = make_edge_nice(&td, &g);
        prop_assert!(en.check_structure().is_ok());
        prop_assert_eq!(en.width(), td.width());
        let mut seen = Vec::new();
        for x in &en.nodes {
            if let NodeKind::IntroduceEdge(u, v) = x.kind {
                prop_assert!(g.has_edge(u, v));
                prop_assert!(x.bag.contains(&u) && x.bag.contains(&v));
                seen.push((u, v));
            }
        }
        seen.sort_unstable();
        prop_assert_eq!(&seen, &g.edges());
        prop_assert_eq!(en.introduced_edges(en.root()), g.edges());
        for (i, x) in en.nodes.iter().enumerate() {
            let below = en.introduced_edges(i);
            let own: Vec<_> = x.children.iter().flat_map(|&c| en.introduced_edges(c)).collect();
            let extra = usize::from(matches!(x.kind, NodeKind::IntroduceEdge(..)));
            prop_assert_eq!(below.len(), own.len() + extra);
        }
    }
}

use std::collections::BTreeSet;

use graph_core::Graph;

use crate::TreeDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    IntroduceEdge(usize, usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    /// Sorted vertex ids.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Nodes are stored children-first; the root is
/// the last node and has an empty bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<Node>,
}

/// Nice decomposition with explicit edge introductions. Stored children-first,
/// root last with an empty bag, leaves empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeNiceTreeDecomposition {
    pub nodes: Vec<Node>,
}

fn width_of(nodes: &[Node]) -> usize {
    nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0).saturating_sub(1)
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        width_of(&self.nodes)
    }

    /// Checks node-type bag relations; returns a description of the first problem.
    pub fn check_structure(&self) -> Result<(), String> {
        check_nodes(&self.nodes, false)
    }
}

impl EdgeNiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        width_of(&self.nodes)
    }

    pub fn check_structure(&self) -> Result<(), String> {
        check_nodes(&self.nodes, true)
    }

    /// Edges introduced in the subtree of `i`, sorted.
    pub fn introduced_edges(&self, i: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut stack = vec![i];
        while let Some(x) = stack.pop() {
            if let NodeKind::IntroduceEdge(u, v) = self.nodes[x].kind {
                out.push((u.min(v), u.max(v)));
            }
            stack.extend(&self.nodes[x].children);
        }
        out.sort_unstable();
        out
    }
}

fn check_nodes(nodes: &[Node], edge_nice: bool) -> Result<(), String> {
    let root = nodes.last().ok_or("no nodes")?;
    if !root.bag.is_empty() {
        return Err("root bag is not empty".into());
    }
    let mut parents = vec![0usize; nodes.len()];
    for (i, x) in nodes.iter().enumerate() {
        let kids: Vec<&Node> = x.children.iter().map(|&c| &nodes[c]).collect();
        if x.children.iter().any(|&c| c >= i) {
            return Err(format!("node {i} has a child stored after it"));
        }
        for &c in &x.children {
            parents[c] += 1;
        }
        let ok = match (x.kind, kids.as_slice()) {
            (NodeKind::Leaf, []) => !edge_nice || x.bag.is_empty(),
            (NodeKind::Introduce(v), [c]) => {
                !c.bag.contains(&v) && with(&c.bag, v) == x.bag
            }
            (NodeKind::Forget(v), [c]) => c.bag.contains(&v) && with(&x.bag, v) == c.bag,
            (NodeKind::IntroduceEdge(u, v), [c]) => {
                edge_nice && c.bag == x.bag && x.bag.contains(&u) && x.bag.contains(&v) && u != v
            }
            (NodeKind::Join, [a, b]) => a.bag == x.bag && b.bag == x.bag,
            _ => false,
        };
        if !ok {
            return Err(format!("node {i} ({:?}) does not match its children", x.kind));
        }
    }
    if parents[..nodes.len() - 1].iter().any(|&p| p != 1) {
        return Err("nodes do not form a single rooted tree".into());
    }
    Ok(())
}

fn with(bag: &[usize], v: usize) -> Vec<usize> {
    let mut b = bag.to_vec();
    let pos = b.binary_search(&v).unwrap_or_else(|p| p);
    b.insert(pos, v);
    b
}

fn without(bag: &[usize], v: usize) -> Vec<usize> {
    bag.iter().copied().filter(|&w| w != v).collect()
}

struct Builder {
    nodes: Vec<Node>,
    sizes: Vec<usize>,
}

impl Builder {
    fn push(&mut self, kind: NodeKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        let size = 1 + children.iter().map(|&c| self.sizes[c]).sum::<usize>();
        self.nodes.push(Node { kind, bag, children });
        self.sizes.push(size);
        self.nodes.len() - 1
    }

    /// Forgets then introduces vertices until node `cur` has bag `target`.
    fn morph(&mut self, mut cur: usize, target: &[usize]) -> usize {
        let from = self.nodes[cur].bag.clone();
        for &v in from.iter().filter(|v| target.binary_search(v).is_err()) {
            let bag = without(&self.nodes[cur].bag, v);
            cur = self.push(NodeKind::Forget(v), bag, vec![cur]);
        }
        for &v in target.iter().filter(|v| from.binary_search(v).is_err()) {
            let bag = with(&self.nodes[cur].bag, v);
            cur = self.push(NodeKind::Introduce(v), bag, vec![cur]);
        }
        cur
    }
}

/// Converts a valid decomposition into nice form rooted at bag 0, with the
/// root bag forgotten down to the empty set. Width is unchanged.
pub fn make_nice(td: &TreeDecomposition, _g: &Graph) -> NiceTreeDecomposition {
    let mut b = Builder { nodes: Vec::new(), sizes: Vec::new() };
    if td.bags.is_empty() {
        b.push(NodeKind::Leaf, Vec::new(), Vec::new());
        return NiceTreeDecomposition { nodes: b.nodes };
    }
    let adj = td.adjacency();
    let mut order = Vec::with_capacity(td.bags.len());
    let mut parent = vec![usize::MAX; td.bags.len()];
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in adj[x].iter().rev() {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut built = vec![usize::MAX; td.bags.len()];
    for &x in order.iter().rev() {
        let bag = &td.bags[x];
        let mut kids: Vec<usize> = adj[x]
            .iter()
            .filter(|&&y| y != x && parent[y] == x)
            .map(|&y| b.morph(built[y], bag))
            .collect();
        let node = if kids.is_empty() {
            let leaf = b.push(NodeKind::Leaf, Vec::new(), Vec::new());
            b.morph(leaf, bag)
        } else {
            kids.sort_by_key(|&k| b.sizes[k]);
            let mut acc = kids[0];
            for &k in &kids[1..] {
                acc = b.push(NodeKind::Join, bag.clone(), vec![acc, k]);
            }
            acc
        };
        built[x] = node;
    }
    b.morph(built[0], &[]);
    NiceTreeDecomposition { nodes: b.nodes }
}

/// Edge-nice form: each graph edge gets one introduce-edge node, placed just
/// below the forget of whichever endpoint is forgotten first.
pub fn make_edge_nice(td: &TreeDecomposition, g: &Graph) -> EdgeNiceTreeDecomposition {
    let nice = make_nice(td, g);
    let mut map = vec![0usize; nice.nodes.len()];
    let mut nodes: Vec<Node> = Vec::with_capacity(nice.nodes.len() + g.m());
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, x) in nice.nodes.iter().enumerate() {
        let mut children: Vec<usize> = x.children.iter().map(|&c| map[c]).collect();
        if let NodeKind::Forget(v) = x.kind {
            let below = &nodes[children[0]].bag.clone();
            for &w in below {
                let e = (v.min(w), v.max(w));
                if w != v && g.has_edge(v, w) && done.insert(e) {
                    nodes.push(Node {
                        kind: NodeKind::IntroduceEdge(e.0, e.1),
                        bag: below.clone(),
                        children,
                    });
                    children = vec![nodes.len() - 1];
                }
            }
        }
        nodes.push(Node { kind: x.kind, bag: x.bag.clone(), children });
        map[i] = nodes.len() - 1;
    }
    EdgeNiceTreeDecomposition { nodes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::min_fill_decompose;
    use graph_core::families::complete;

    #[test]
    fn single_bag_triangle() {
        let g = complete(3);
        let td = TreeDecomposition::new(vec![vec![0, 1, 2]], vec![]);
        let nice = make_nice(&td, &g);
        nice.check_structure().unwrap();
        let intro = nice
            .nodes
            .iter()
            .filter(|x| matches!(x.kind, NodeKind::Introduce(_)))
            .count();
        assert_eq!(intro, 3);
        let en = make_edge_nice(&td, &g);
        en.check_structure().unwrap();
        let edges = en
            .nodes
            .iter()
            .filter(|x| matches!(x.kind, NodeKind::IntroduceEdge(..)))
            .count();
        assert_eq!(edges, 3);
        assert_eq!(en.introduced_edges(en.root()), g.edges());
    }

    #[test]
    fn empty_graph_has_no_edge_nodes() {
        let g = Graph::new(2);
        let td = min_fill_decompose(&g);
        let en = make_edge_nice(&td, &g);
        en.check_structure().unwrap();
        assert!(en.nodes.iter().all(|x| !matches!(x.kind, NodeKind::IntroduceEdge(..))));
    }

    #[test]
    fn joins_appear_for_branching_decompositions() {
        let g = graph_core::families::star(3);
        let td = TreeDecomposition::new(
            vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3]],
            vec![(0, 1), (0, 2), (0, 3)],
        );
        let nice = make_nice(&td, &g);
        nice.check_structure().unwrap();
        assert_eq!(nice.nodes.iter().filter(|x| x.kind == NodeKind::Join).count(), 2);
        assert_eq!(nice.width(), 1);
    }
}

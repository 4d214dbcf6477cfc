use graph_core::{bfs_distances, Graph};

use crate::ReductionError;

/// Growing host graph with the small wiring helpers the constructions share.
#[derive(Debug, Default)]
pub(crate) struct Builder {
    pub g: Graph,
}

impl Builder {
    pub fn vertex(&mut self) -> usize {
        self.g.add_vertex()
    }

    pub fn edge(&mut self, u: usize, v: usize) {
        self.g.add_edge(u, v).expect("builder edges join existing vertices");
    }

    /// Hangs a path of `len` new vertices off `from`.
    pub fn tail(&mut self, from: usize, len: u32) -> Vec<usize> {
        let mut prev = from;
        (0..len)
            .map(|_| {
                let v = self.vertex();
                self.edge(prev, v);
                prev = v;
                v
            })
            .collect()
    }

    /// Joins `from` and `to` by a path with `len` edges and returns the
    /// `len - 1` inner vertices, nearest to `from` first.
    pub fn link(&mut self, from: usize, to: usize, len: u32) -> Vec<usize> {
        assert!(len >= 1);
        let inner = self.tail(from, len - 1);
        self.edge(inner.last().copied().unwrap_or(from), to);
        inner
    }

    /// Copies `piece` into the host. Vertices listed in `fixed` are mapped
    /// onto existing host vertices, the rest are created in order.
    pub fn embed(&mut self, piece: &Graph, fixed: &[(usize, usize)]) -> Vec<usize> {
        let mut map = vec![usize::MAX; piece.n()];
        for &(p, h) in fixed {
            map[p] = h;
        }
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = self.vertex();
            }
        }
        for (u, v) in piece.edges() {
            self.edge(map[u], map[v]);
        }
        map
    }
}

fn dist_from(g: &Graph, v: usize) -> Vec<Option<u32>> {
    bfs_distances(g, &[v], None).expect("vertex in range").as_slice().to_vec()
}

fn within(d: Option<u32>, r: u32) -> bool {
    matches!(d, Some(x) if x <= r)
}

/// Gadget tying a top vertex to a bottom path of `2r + 2` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RFrame {
    pub r: u32,
    pub graph: Graph,
    pub top: usize,
    pub bottom: Vec<usize>,
    /// Everything except the top and the bottom path.
    pub body: Vec<usize>,
    /// Index into `bottom` of the vertex the frame keeps away from the top.
    pub avoided: Option<usize>,
}

/// Triangular body of `r` layers under the top; layer `d` has `d + 1`
/// vertices. Each vertex of the last layer sees a window of six bottom
/// vertices, shifted by two per step, and the avoiding variant drops the
/// body edges at the avoided vertex.
pub fn build_r_frame(r: u32, avoided: Option<usize>) -> Result<RFrame, ReductionError> {
    if r < 2 {
        return Err(ReductionError::Radius(r));
    }
    let len = 2 * r as usize + 2;
    if let Some(p) = avoided {
        if p >= len {
            return Err(ReductionError::Parameter(format!("avoided index {p} outside bottom path of {len}")));
        }
    }
    let mut b = Builder::default();
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for d in 0..r as usize {
        let layer: Vec<usize> = (0..=d).map(|_| b.vertex()).collect();
        for x in 0..d {
            b.edge(layer[x], layer[x + 1]);
        }
        if let Some(prev) = layers.last() {
            for (x, &u) in prev.iter().enumerate() {
                b.edge(u, layer[x]);
                b.edge(u, layer[x + 1]);
            }
        }
        layers.push(layer);
    }
    let bottom: Vec<usize> = (0..len).map(|_| b.vertex()).collect();
    for w in bottom.windows(2) {
        b.edge(w[0], w[1]);
    }
    for (y, &u) in layers[r as usize - 1].iter().enumerate() {
        let lo = (2 * y).saturating_sub(1);
        let hi = (2 * y + 4).min(len - 1);
        for (i, &v) in bottom.iter().enumerate().take(hi + 1).skip(lo) {
            if avoided != Some(i) {
                b.edge(u, v);
            }
        }
    }
    let top = layers[0][0];
    let body = layers.iter().flatten().copied().filter(|&v| v != top).collect();
    let frame = RFrame { r, graph: b.g, top, bottom, body, avoided };
    check_frame(&frame).map_err(ReductionError::Contract)?;
    Ok(frame)
}

/// The distance contract: the bottom is a path with `2r + 1` edges, the top
/// reaches every bottom vertex within `r` except the avoided one, which is
/// farther. Every body vertex also reaches every bottom vertex within `r`,
/// so whichever bottom vertex a solution picks covers the whole body.
pub fn check_frame(f: &RFrame) -> Result<(), String> {
    let r = f.r;
    if f.bottom.len() != 2 * r as usize + 2 {
        return Err(format!("bottom path has {} vertices, want {}", f.bottom.len(), 2 * r + 2));
    }
    if let Some(w) = f.bottom.windows(2).find(|w| !f.graph.has_edge(w[0], w[1])) {
        return Err(format!("bottom path broken between {} and {}", w[0], w[1]));
    }
    let top = dist_from(&f.graph, f.top);
    for (i, &b) in f.bottom.iter().enumerate() {
        let close = within(top[b], r);
        if f.avoided == Some(i) && close {
            return Err(format!("avoided bottom vertex {i} is within {r} of the top"));
        }
        if f.avoided != Some(i) && !close {
            return Err(format!("bottom vertex {i} is farther than {r} from the top"));
        }
    }
    for &v in &f.body {
        let d = dist_from(&f.graph, v);
        if let Some(i) = f.bottom.iter().position(|&b| !within(d[b], r)) {
            return Err(format!("body vertex {v} is farther than {r} from bottom vertex {i}"));
        }
    }
    Ok(())
}

/// Tree-like gadget whose leaves all sit at distance `r` from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub r: u32,
    pub graph: Graph,
    pub root: usize,
    pub hub: usize,
    pub leaves: Vec<usize>,
    /// Distance from the root, per vertex.
    pub depth: Vec<u32>,
}

impl Pattern {
    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.graph.n()).filter(|v| !self.leaves.contains(v))
    }
}

/// Root, a stem to the hub, one child of the hub per leaf and a branch from
/// each child down to its leaf. For even `r` the children form a clique and
/// the stem is one shorter than the branches; for odd `r` they match.
pub fn build_pattern(r: u32, m: usize) -> Result<Pattern, ReductionError> {
    if r < 2 {
        return Err(ReductionError::Radius(r));
    }
    if m == 0 {
        return Err(ReductionError::Parameter("a pattern needs at least one leaf".into()));
    }
    let (stem, branch) = if r % 2 == 0 { (r / 2 - 1, r / 2) } else { ((r - 1) / 2, (r - 1) / 2) };
    let mut b = Builder::default();
    let root = b.vertex();
    let hub = b.tail(root, stem).last().copied().unwrap_or(root);
    let mut children = Vec::with_capacity(m);
    let mut leaves = Vec::with_capacity(m);
    for _ in 0..m {
        let c = b.vertex();
        b.edge(hub, c);
        leaves.push(b.tail(c, branch).last().copied().unwrap_or(c));
        children.push(c);
    }
    if r % 2 == 0 {
        for i in 0..m {
            for j in i + 1..m {
                b.edge(children[i], children[j]);
            }
        }
    }
    let depth = dist_from(&b.g, root).into_iter().map(|d| d.expect("pattern is connected")).collect();
    let pat = Pattern { r, graph: b.g, root, hub, leaves, depth };
    check_pattern(&pat).map_err(ReductionError::Contract)?;
    Ok(pat)
}

/// Leaves at distance exactly `r` from the root, each leaf within `r` of
/// every non-leaf vertex and farther than `r` from the other leaves.
pub fn check_pattern(p: &Pattern) -> Result<(), String> {
    let r = p.r;
    let root = dist_from(&p.graph, p.root);
    for &l in &p.leaves {
        if root[l] != Some(r) {
            return Err(format!("leaf {l} at distance {:?} from the root, want {r}", root[l]));
        }
        let d = dist_from(&p.graph, l);
        for v in 0..p.graph.n() {
            let leaf = p.leaves.contains(&v);
            if v != l && leaf && within(d[v], r) {
                return Err(format!("leaves {l} and {v} are within {r}"));
            }
            if !leaf && !within(d[v], r) {
                return Err(format!("leaf {l} is farther than {r} from {v}"));
            }
        }
    }
    Ok(())
}

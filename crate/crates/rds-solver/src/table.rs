use graph_core::{bfs_distances, Graph};

use crate::labeling::{bag_edges, edge_ok, ForgetRule, Layout, ValidityRule};

/// Marker for labelings with no partial solution.
pub const INF: u16 = u16::MAX;

/// Rule set for one run of the labeling program.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rules {
    pub r: u32,
    /// `Signed` also switches positive resolution to signed labels and makes
    /// negative introductions inherit the child entry unchanged.
    pub validity: ValidityRule,
    pub forget: ForgetRule,
}

impl Rules {
    pub fn new(r: u32) -> Self {
        Rules { r, validity: ValidityRule::Magnitude, forget: ForgetRule::Magnitude }
    }
}

/// Minimum partial-solution sizes indexed by labelings of a sorted bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueTable {
    pub bag: Vec<usize>,
    pub layout: Layout,
    pub values: Vec<u16>,
}

impl ValueTable {
    pub fn new(bag: Vec<usize>, r: u32, fill: u16) -> Self {
        let layout = Layout::new(r, bag.len());
        let values = vec![fill; layout.len];
        ValueTable { bag, layout, values }
    }

    pub fn get(&self, labels: &[i32]) -> Option<u16> {
        let v = self.values[self.layout.encode(labels)];
        (v != INF).then_some(v)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Pairs `(c', c)` where `c'` flips one positive label of `c` to negative
    /// and `A[c'] > A[c]`. Single flips suffice: the relation is transitive.
    pub fn ordering_violations(&self) -> usize {
        let lay = &self.layout;
        let mut bad = 0;
        for (c, &val) in self.values.iter().enumerate() {
            for (q, &s) in lay.strides.iter().enumerate() {
                let l = lay.label_at(c, q);
                if l > 0 && self.values[c - 2 * l as usize * s] > val {
                    bad += 1;
                }
            }
        }
        bad
    }
}

fn resolves(rule: ValidityRule, by: i32, target: i32) -> bool {
    match rule {
        ValidityRule::Magnitude => by.abs() == target - 1,
        ValidityRule::Signed => by == target - 1,
    }
}

/// Leaf rule: valid labelings whose positive labels all have a resolving
/// bag neighbour cost their number of zeros; everything else is infeasible.
pub fn leaf_table(bag: &[usize], g: &Graph, rules: &Rules) -> ValueTable {
    let mut t = ValueTable::new(bag.to_vec(), rules.r, INF);
    let edges = bag_edges(bag, g);
    for c in 0..t.len() {
        let labels = t.layout.decode(c);
        let valid = edges.iter().all(|&(i, j)| edge_ok(rules.validity, labels[i], labels[j]));
        let resolved = (0..bag.len()).filter(|&v| labels[v] > 0).all(|v| {
            edges.iter().any(|&(i, j)| {
                (i == v && resolves(rules.validity, labels[j], labels[v]))
                    || (j == v && resolves(rules.validity, labels[i], labels[v]))
            })
        });
        if valid && resolved {
            t.values[c] = labels.iter().filter(|&&l| l == 0).count() as u16;
        }
    }
    t
}

/// Precomputed data for introducing `u` above a child bag.
pub(crate) struct IntroducePlan {
    pub pos: usize,
    child: Layout,
    new_stride: usize,
    adjacent: Vec<bool>,
    /// `Some(d)` when `d_G(u, v) = d_{G[V_i]}(u, v) = d`.
    flip_dist: Vec<Option<u32>>,
    child_edges: Vec<(usize, usize)>,
    rules: Rules,
}

impl IntroducePlan {
    pub fn new(child_bag: &[usize], u: usize, g: &Graph, inside: &[bool], rules: &Rules) -> Self {
        let pos = child_bag.partition_point(|&v| v < u);
        let global = bfs_distances(g, &[u], None).expect("u in range");
        let members: Vec<usize> = (0..g.n()).filter(|&v| inside[v]).collect();
        let local = bfs_distances(g, &[u], Some(&members)).expect("u inside its own subtree");
        let flip_dist = child_bag
            .iter()
            .map(|&v| match (global.get(v), local.get(v)) {
                (Some(a), Some(b)) if a == b => Some(a),
                _ => None,
            })
            .collect();
        let child = Layout::new(rules.r, child_bag.len());
        IntroducePlan {
            pos,
            new_stride: child.strides.get(pos).copied().unwrap_or(child.len),
            adjacent: child_bag.iter().map(|&v| g.has_edge(u, v)).collect(),
            flip_dist,
            child_edges: bag_edges(child_bag, g),
            child,
            rules: *rules,
        }
    }

    /// Index shifts of `phi` for every distance offset `0..=r`, for one child labeling.
    fn flips(&self, labels: &[i32], out: &mut [usize]) {
        out.fill(0);
        for (q, &l) in labels.iter().enumerate() {
            if l <= 0 {
                continue;
            }
            if let Some(k) = self.flip_dist[q] {
                if k as i32 <= l {
                    out[(l - k as i32) as usize] += 2 * l as usize * self.child.strides[q];
                }
            }
        }
    }

    fn new_index(&self, cj: usize, d: i32) -> usize {
        let low = cj % self.new_stride;
        low + (d + self.rules.r as i32) as usize * self.new_stride + (cj - low) * self.child.base
    }

    /// The child labeling and the extra cost for one entry, or `None` when infeasible
    /// regardless of the child table.
    fn source(&self, labels: &[i32], cj: usize, d: i32, sub: &[usize]) -> Option<(usize, u16)> {
        let rule = self.rules.validity;
        let mut resolved = false;
        for (q, &l) in labels.iter().enumerate() {
            if self.adjacent[q] {
                if !edge_ok(rule, l, d) {
                    return None;
                }
                resolved |= d > 0 && resolves(rule, l, d);
            }
        }
        match (d, rule) {
            (0, _) => Some((cj - sub[0], 1)),
            (d, _) if d > 0 => resolved.then(|| (cj - sub[d as usize], 0)),
            (d, ValidityRule::Magnitude) => Some((cj - sub[(-d) as usize], 0)),
            (_, ValidityRule::Signed) => Some((cj, 0)),
        }
    }

    /// Smallest and largest magnitude among child labels adjacent to `u`,
    /// and the set of them as a bit mask.
    fn adjacent_magnitudes(&self, labels: &[i32]) -> (i32, i32, u64) {
        let (mut lo, mut hi, mut mask) = (i32::MAX, -1, 0u64);
        for (q, &l) in labels.iter().enumerate() {
            if self.adjacent[q] {
                let m = l.abs();
                lo = lo.min(m);
                hi = hi.max(m);
                mask |= 1 << m;
            }
        }
        (lo, hi, mask)
    }

    fn child_valid(&self, labels: &[i32]) -> bool {
        self.rules.validity == ValidityRule::Magnitude
            || self
                .child_edges
                .iter()
                .all(|&(i, j)| edge_ok(self.rules.validity, labels[i], labels[j]))
    }

    /// Child labeling feeding entry `ci` of the introduced table.
    pub fn child_of(&self, ci: usize) -> Option<(usize, u16)> {
        let b = self.child.base;
        let s = self.new_stride;
        let d = ((ci / s) % b) as i32 - self.rules.r as i32;
        let cj = ci % s + (ci / (s * b)) * s;
        let labels = self.child.decode(cj);
        if !self.child_valid(&labels) {
            return None;
        }
        let mut sub = vec![0; self.rules.r as usize + 1];
        self.flips(&labels, &mut sub);
        self.source(&labels, cj, d, &sub)
    }
}

/// Introduce rule. `inside` marks the vertices of the subtree including `u`.
pub fn introduce_table(child: &ValueTable, u: usize, g: &Graph, inside: &[bool], rules: &Rules) -> ValueTable {
    let plan = IntroducePlan::new(&child.bag, u, g, inside, rules);
    introduce_with_plan(child, u, &plan)
}

pub(crate) fn introduce_with_plan(child: &ValueTable, u: usize, plan: &IntroducePlan) -> ValueTable {
    let mut bag = child.bag.clone();
    bag.insert(plan.pos, u);
    let r = plan.rules.r as i32;
    let mut out = ValueTable::new(bag, plan.rules.r, INF);
    let lay = &child.layout;
    let mut labels = vec![-r; lay.digits()];
    let mut sub = vec![0usize; r as usize + 1];
    for cj in 0..lay.len {
        if cj > 0 {
            for l in labels.iter_mut() {
                if *l < r {
                    *l += 1;
                    break;
                }
                *l = -r;
            }
        }
        if !plan.child_valid(&labels) {
            continue;
        }
        plan.flips(&labels, &mut sub);
        let first = plan.new_index(cj, -r);
        let mut put = |d: i32, src: usize, add: u16| {
            let v = child.values[src];
            if v != INF {
                out.values[first + (d + r) as usize * plan.new_stride] = v + add;
            }
        };
        if plan.rules.validity == ValidityRule::Magnitude {
            let (lo, hi, mask) = plan.adjacent_magnitudes(&labels);
            for d in -r..=r {
                let m = d.abs();
                if hi > m + 1 || lo < m - 1 {
                    continue;
                }
                match d {
                    0 => put(d, cj - sub[0], 1),
                    d if d > 0 => {
                        if mask >> (d - 1) & 1 == 1 {
                            put(d, cj - sub[d as usize], 0);
                        }
                    }
                    d => put(d, cj - sub[(-d) as usize], 0),
                }
            }
        } else {
            for d in -r..=r {
                if let Some((src, add)) = plan.source(&labels, cj, d, &sub) {
                    put(d, src, add);
                }
            }
        }
    }
    out
}

/// Precomputed data for forgetting `u` from a child bag.
pub(crate) struct ForgetPlan {
    stride: usize,
    parent: Layout,
    dist: Vec<Option<u32>>,
    rules: Rules,
}

impl ForgetPlan {
    pub fn new(child_bag: &[usize], u: usize, g: &Graph, rules: &Rules) -> Self {
        let pos = child_bag.binary_search(&u).expect("forgotten vertex is in the child bag");
        let global = bfs_distances(g, &[u], None).expect("u in range");
        let parent_bag: Vec<usize> = child_bag.iter().copied().filter(|&v| v != u).collect();
        let parent = Layout::new(rules.r, parent_bag.len());
        ForgetPlan {
            stride: parent.strides.get(pos).copied().unwrap_or(parent.len),
            dist: parent_bag.iter().map(|&v| global.get(v)).collect(),
            parent,
            rules: *rules,
        }
    }

    /// Negative labels of `u` that parent position `q` witnesses when it
    /// carries label `l`, as a bit set over magnitudes.
    fn witnessed(&self, q: usize, l: i32) -> u64 {
        let r = self.rules.r as i32;
        let Some(k) = self.dist[q] else { return 0 };
        let m = match self.rules.forget {
            ForgetRule::Magnitude => l.abs() + k as i32,
            ForgetRule::Literal => k as i32 - l,
        };
        if (1..=r).contains(&m) {
            1 << m
        } else {
            0
        }
    }

    /// Child indices admissible for parent labeling `ci`, in increasing order.
    pub fn candidates(&self, ci: usize, out: &mut Vec<usize>) {
        let labels = self.parent.decode(ci);
        let negatives = labels.iter().enumerate().fold(0, |acc, (q, &l)| acc | self.witnessed(q, l));
        let r = self.rules.r as i32;
        let low = ci % self.stride;
        let base_index = low + (ci - low) * self.parent.base;
        out.clear();
        for d in -r..=r {
            if d >= 0 || negatives >> (-d) & 1 == 1 {
                out.push(base_index + (d + r) as usize * self.stride);
            }
        }
    }
}

/// Forget rule: minimum over admissible labels of the forgotten vertex.
pub fn forget_table(child: &ValueTable, u: usize, g: &Graph, rules: &Rules) -> ValueTable {
    let plan = ForgetPlan::new(&child.bag, u, g, rules);
    forget_with_plan(child, u, &plan)
}

pub(crate) fn forget_with_plan(child: &ValueTable, u: usize, plan: &ForgetPlan) -> ValueTable {
    let bag: Vec<usize> = child.bag.iter().copied().filter(|&v| v != u).collect();
    let mut out = ValueTable::new(bag, plan.rules.r, INF);
    let r = plan.rules.r as i32;
    let (base, digits, stride) = (plan.parent.base, plan.parent.digits(), plan.stride);
    let masks: Vec<Vec<u64>> = (0..digits).map(|q| (-r..=r).map(|l| plan.witnessed(q, l)).collect()).collect();
    // Odometer over parent digits; `acc[q]` is the union of the masks of positions q and up.
    let mut digit = vec![0usize; digits];
    let mut acc = vec![0u64; digits + 1];
    for q in (0..digits).rev() {
        acc[q] = masks[q][0] | acc[q + 1];
    }
    let sources: Vec<(usize, u64)> = (-r..=r)
        .map(|d| ((d + r) as usize * stride, if d >= 0 { 0 } else { 1 << -d }))
        .collect();
    for (ci, slot) in out.values.iter_mut().enumerate() {
        if ci > 0 {
            let mut j = 0;
            while digit[j] + 1 == base {
                digit[j] = 0;
                j += 1;
            }
            digit[j] += 1;
            for q in (0..=j).rev() {
                acc[q] = masks[q][digit[q]] | acc[q + 1];
            }
        }
        let low = ci % stride;
        let first = low + (ci - low) * base;
        let mut best = INF;
        for &(shift, need) in &sources {
            if need == 0 || acc[0] & need != 0 {
                best = best.min(child.values[first + shift]);
            }
        }
        *slot = best;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::families::path;

    fn all_inside(n: usize) -> Vec<bool> {
        vec![true; n]
    }

    #[test]
    fn single_vertex_leaf() {
        let t = leaf_table(&[0], &Graph::new(1), &Rules::new(1));
        assert_eq!(t.get(&[0]), Some(1));
        assert_eq!(t.get(&[-1]), Some(0));
        assert_eq!(t.get(&[1]), None);
    }

    #[test]
    fn edge_leaf() {
        let t = leaf_table(&[0, 1], &path(2), &Rules::new(1));
        assert_eq!(t.get(&[1, 0]), Some(1));
        assert_eq!(t.get(&[1, -1]), None);
    }

    #[test]
    fn forget_excludes_unwitnessed_promise() {
        let g = path(2);
        let rules = Rules::new(1);
        let mut child = ValueTable::new(vec![0, 1], 1, INF);
        for (labels, v) in [([0, -1], 7), ([1, -1], 5), ([-1, -1], 2)] {
            child.values[child.layout.encode(&labels)] = v;
        }
        let t = forget_table(&child, 0, &g, &rules);
        assert_eq!(t.get(&[-1]), Some(5));
    }

    #[test]
    fn forget_single_finite_extension() {
        let g = path(2);
        let mut child = ValueTable::new(vec![0, 1], 2, INF);
        child.values[child.layout.encode(&[1, 0])] = 5;
        let t = forget_table(&child, 1, &g, &Rules::new(2));
        assert_eq!(t.get(&[1]), Some(5));
        assert_eq!(t.get(&[2]), None);
    }

    #[test]
    fn introduce_isolated_zero_adds_one() {
        let g = Graph::new(2);
        let rules = Rules::new(1);
        let child = leaf_table(&[0], &g, &rules);
        let t = introduce_table(&child, 1, &g, &all_inside(2), &rules);
        for l in -1..=1 {
            assert_eq!(t.get(&[l, 0]), child.get(&[l]).map(|v| v + 1));
        }
    }

    #[test]
    fn introduce_positive_needs_resolver() {
        let g = path(2);
        let rules = Rules::new(1);
        let child = leaf_table(&[0], &g, &rules);
        let t = introduce_table(&child, 1, &g, &all_inside(2), &rules);
        assert_eq!(t.get(&[0, 1]), Some(1));
        assert_eq!(t.get(&[-1, 1]), None);
        // v = 0 becomes resolved by the new zero at distance 1.
        assert_eq!(t.get(&[1, 0]), Some(1));
    }
}

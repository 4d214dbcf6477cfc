use graph_core::Graph;

/// Which edge condition a labeling must satisfy on every bag edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValidityRule {
    /// `||c(u)| - |c(v)|| <= 1`. Accepts every labeling a real solution induces.
    #[default]
    Magnitude,
    /// `|c(u) - c(v)| <= 1` on signed labels.
    Signed,
}

/// How a negative label on a forgotten vertex may be discharged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ForgetRule {
    /// Some remaining bag vertex `w` has `|c(w)| + d(u, w) = |d|`.
    #[default]
    Magnitude,
    /// Some remaining bag vertex `w` has `c(w) = d + d(u, w)`, any sign.
    Literal,
}

/// Mixed-radix layout of labelings over a sorted bag.
///
/// Labels live in `[-r, r]`; the digit of a label is `label + r` and the
/// first bag vertex is the least significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub r: u32,
    pub base: usize,
    pub strides: Vec<usize>,
    pub len: usize,
}

impl Layout {
    pub fn new(r: u32, bag_len: usize) -> Self {
        let base = 2 * r as usize + 1;
        let mut strides = Vec::with_capacity(bag_len);
        let mut s = 1usize;
        for _ in 0..bag_len {
            strides.push(s);
            s = s.checked_mul(base).expect("labeling space fits in usize");
        }
        Layout { r, base, strides, len: s }
    }

    pub fn digits(&self) -> usize {
        self.strides.len()
    }

    pub fn decode(&self, mut index: usize) -> Vec<i32> {
        let r = self.r as i32;
        (0..self.digits())
            .map(|_| {
                let d = (index % self.base) as i32;
                index /= self.base;
                d - r
            })
            .collect()
    }

    pub fn encode(&self, labels: &[i32]) -> usize {
        labels
            .iter()
            .zip(&self.strides)
            .map(|(&l, &s)| (l + self.r as i32) as usize * s)
            .sum()
    }

    pub fn label_at(&self, index: usize, pos: usize) -> i32 {
        ((index / self.strides[pos]) % self.base) as i32 - self.r as i32
    }

    /// Number of zero labels of every labeling, in index order.
    pub fn zero_counts(&self) -> Vec<u8> {
        let mut z = vec![0u8];
        for _ in 0..self.digits() {
            z = z.iter().flat_map(|&hz| (0..self.base).map(move |d| hz + u8::from(d == self.r as usize))).collect();
        }
        z
    }

    /// Number of zero labels.
    pub fn zeros(&self, index: usize) -> usize {
        let mut count = 0;
        let mut x = index;
        for _ in 0..self.digits() {
            count += usize::from(x % self.base == self.r as usize);
            x /= self.base;
        }
        count
    }
}

/// Pairs of bag positions joined by a graph edge.
pub fn bag_edges(bag: &[usize], g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..bag.len() {
        for j in i + 1..bag.len() {
            if g.has_edge(bag[i], bag[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn edge_ok(rule: ValidityRule, a: i32, b: i32) -> bool {
    match rule {
        ValidityRule::Magnitude => a.abs().abs_diff(b.abs()) <= 1,
        ValidityRule::Signed => a.abs_diff(b) <= 1,
    }
}

/// Does `labels` (ordered like `bag`) satisfy the rule on every edge of `G[bag]`?
pub fn is_locally_valid(labels: &[i32], bag: &[usize], g: &Graph, rule: ValidityRule) -> bool {
    bag_edges(bag, g)
        .into_iter()
        .all(|(i, j)| edge_ok(rule, labels[i], labels[j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::families::path;

    #[test]
    fn encode_decode_round_trip() {
        let lay = Layout::new(2, 3);
        assert_eq!(lay.len, 125);
        for i in 0..lay.len {
            assert_eq!(lay.encode(&lay.decode(i)), i);
        }
        assert_eq!(lay.decode(0), vec![-2, -2, -2]);
        assert_eq!(lay.zeros(lay.encode(&[0, 1, 0])), 2);
        let z = lay.zero_counts();
        assert!((0..lay.len).all(|c| z[c] as usize == lay.zeros(c)));
        assert_eq!(lay.label_at(lay.encode(&[0, 1, -2]), 2), -2);
    }

    #[test]
    fn validity_on_one_edge() {
        let g = path(2);
        let bag = [0, 1];
        let m = ValidityRule::Magnitude;
        assert!(is_locally_valid(&[2, 1], &bag, &g, m));
        assert!(!is_locally_valid(&[2, 0], &bag, &g, m));
        assert!(is_locally_valid(&[-1, -2], &bag, &g, m));
        assert!(is_locally_valid(&[3, -2], &bag, &g, m));
        assert!(!is_locally_valid(&[3, -2], &bag, &g, ValidityRule::Signed));
    }
}

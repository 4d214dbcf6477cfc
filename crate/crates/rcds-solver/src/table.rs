use crate::label::{CutLabel, CutLayout};
use crate::row::{BitRow, ExactRow, Row};
use crate::run::CutCountRun;
use crate::RcdsError;

/// Counts of consistent subcuts for every bag labeling, solution size
/// `0..=k` and total weight `0..width`.
#[derive(Debug, Clone, PartialEq)]
pub struct CutTable<R> {
    pub bag: Vec<usize>,
    pub layout: CutLayout,
    pub k: usize,
    pub width: usize,
    /// Row for labeling `c` and size `t` at `c * (k + 1) + t`.
    pub rows: Vec<R>,
}

pub type ParityTable = CutTable<BitRow>;
pub type ExactTable = CutTable<ExactRow>;

/// How a forgotten vertex may keep a negative label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NegativeForget {
    /// Never: every edge at the vertex is already present, so a missing
    /// closer neighbour is final.
    #[default]
    Reject,
    /// Allowed when some bag vertex `v` has `c(v) = d + dist(u, v)` in the
    /// subgraph built so far.
    DistanceWitness,
}

impl<R: Row> CutTable<R> {
    pub fn zeroed(bag: Vec<usize>, r: u32, k: usize, width: usize) -> Self {
        let layout = CutLayout::new(r, bag.len());
        let rows = vec![R::zero(width); layout.len * (k + 1)];
        CutTable { bag, layout, k, width, rows }
    }

    /// (labelings, sizes, weights).
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.layout.len, self.k + 1, self.width)
    }

    pub fn row(&self, c: usize, t: usize) -> &R {
        &self.rows[c * (self.k + 1) + t]
    }

    pub fn row_mut(&mut self, c: usize, t: usize) -> &mut R {
        &mut self.rows[c * (self.k + 1) + t]
    }

    pub fn get(&self, labels: &[CutLabel], t: usize, w: usize) -> u64 {
        self.row(self.layout.encode(labels), t).get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(R::is_zero)
    }
}

pub fn cc_leaf<R: Row>(r: u32, run: &CutCountRun) -> CutTable<R> {
    let mut t = CutTable::<R>::zeroed(Vec::new(), r, run.k, run.width());
    t.row_mut(0, 0).set(0, 1);
    t
}

/// Splits `index` around digit position `pos` of stride `s`.
fn split(index: usize, s: usize, base: usize) -> (usize, usize, usize) {
    (index % s, (index / s) % base, index / (s * base))
}

pub fn cc_introduce_vertex<R: Row>(child: &CutTable<R>, u: usize, run: &CutCountRun) -> CutTable<R> {
    let pos = child.bag.partition_point(|&x| x < u);
    let mut bag = child.bag.clone();
    bag.insert(pos, u);
    let mut out = CutTable::<R>::zeroed(bag, child.layout.r, child.k, child.width);
    let s = out.layout.strides[pos];
    let wu = run.weights[u] as usize;
    for ci in 0..out.layout.len {
        let (low, d, high) = split(ci, s, out.layout.base);
        let cj = low + high * s;
        match out.layout.from_digit(d) {
            CutLabel::Pos(_) => {}
            CutLabel::Zero2 if u == run.root => {}
            CutLabel::Zero1 | CutLabel::Zero2 => {
                for t in 1..=child.k {
                    out.row_mut(ci, t).add_shifted(child.row(cj, t - 1), wu);
                }
            }
            CutLabel::Neg(_) => {
                for t in 0..=child.k {
                    *out.row_mut(ci, t) = child.row(cj, t).clone();
                }
            }
        }
    }
    out
}

pub fn cc_introduce_edge<R: Row>(child: &CutTable<R>, u: usize, v: usize) -> Result<CutTable<R>, RcdsError> {
    let find = |x: usize| child.bag.binary_search(&x).map_err(|_| RcdsError::NotInBag(x));
    let (pu, pv) = (find(u)?, find(v)?);
    let lay = &child.layout;
    let mut out = CutTable::<R>::zeroed(child.bag.clone(), lay.r, child.k, child.width);
    let copy_from = |out: &mut CutTable<R>, ci: usize, cj: usize| {
        for t in 0..=child.k {
            out.row_mut(ci, t).add(child.row(cj, t));
        }
    };
    for ci in 0..lay.len {
        let (a, b) = (lay.label_at(ci, pu), lay.label_at(ci, pv));
        let (ma, mb) = (a.magnitude(), b.magnitude());
        if ma.abs_diff(mb) > 1 || (a.is_zero() && b.is_zero() && a != b) {
            continue;
        }
        // The endpoint one step further out gains a closer neighbour.
        let far = if ma + 1 == mb {
            Some((pv, b))
        } else if mb + 1 == ma {
            Some((pu, a))
        } else {
            None
        };
        match far {
            None => copy_from(&mut out, ci, ci),
            Some((_, CutLabel::Neg(_))) => {}
            Some((p, CutLabel::Pos(m))) => {
                copy_from(&mut out, ci, ci);
                let unresolved = ci - (2 * m as usize + 1) * lay.strides[p];
                copy_from(&mut out, ci, unresolved);
            }
            Some(_) => unreachable!("a zero is never one step further out"),
        }
    }
    Ok(out)
}

/// `dist` is indexed by vertex and only read under
/// [`NegativeForget::DistanceWitness`].
pub fn cc_forget<R: Row>(
    child: &CutTable<R>,
    u: usize,
    rule: NegativeForget,
    dist: &[Option<u32>],
) -> Result<CutTable<R>, RcdsError> {
    let pos = child.bag.binary_search(&u).map_err(|_| RcdsError::NotInBag(u))?;
    let mut bag = child.bag.clone();
    bag.remove(pos);
    let lay = &child.layout;
    let mut out = CutTable::<R>::zeroed(bag, lay.r, child.k, child.width);
    let s = lay.strides[pos];
    for ci in 0..out.layout.len {
        let (low, high) = (ci % s, ci / s);
        let rest = out.layout.decode(ci);
        for d in 0..lay.base {
            let keep = match lay.from_digit(d) {
                CutLabel::Neg(m) => {
                    rule == NegativeForget::DistanceWitness
                        && out.bag.iter().zip(&rest).any(|(&v, l)| {
                            dist[v].is_some_and(|dv| l.signed() == dv as i64 - m as i64)
                        })
                }
                _ => true,
            };
            if keep {
                let cj = low + d * s + high * s * lay.base;
                for t in 0..=child.k {
                    out.row_mut(ci, t).add(child.row(cj, t));
                }
            }
        }
    }
    Ok(out)
}

/// Adds the `Neg(m)` slice into `Pos(m)` per position (or takes it back out).
fn bar_transform<R: Row>(t: &mut CutTable<R>, inverse: bool) {
    let lay = t.layout.clone();
    let kk = t.k + 1;
    let positions: Vec<usize> = if inverse { (0..lay.digits()).rev().collect() } else { (0..lay.digits()).collect() };
    for q in positions {
        for ci in 0..lay.len {
            if let CutLabel::Pos(m) = lay.label_at(ci, q) {
                let src = ci - (2 * m as usize + 1) * lay.strides[q];
                let (head, tail) = t.rows.split_at_mut(ci * kk);
                for s in 0..kk {
                    let from = &head[src * kk + s];
                    if inverse {
                        tail[s].sub(from);
                    } else {
                        tail[s].add(from);
                    }
                }
            }
        }
    }
}

pub fn forward_bar<R: Row>(t: &CutTable<R>) -> CutTable<R> {
    let mut out = t.clone();
    bar_transform(&mut out, false);
    out
}

pub fn inverse_bar<R: Row>(t: &CutTable<R>) -> CutTable<R> {
    let mut out = t.clone();
    bar_transform(&mut out, true);
    out
}

/// Pointwise product of barred tables with the (size, weight) convolution,
/// discounting the zero-labelled bag vertices both sides contain.
pub fn convolve_bar<R: Row>(a: &CutTable<R>, b: &CutTable<R>, run: &CutCountRun) -> CutTable<R> {
    let lay = &a.layout;
    let mut out = CutTable::<R>::zeroed(a.bag.clone(), lay.r, a.k, a.width);
    for ci in 0..lay.len {
        let mut zeros = 0usize;
        let mut weight = 0u64;
        for (q, &v) in a.bag.iter().enumerate() {
            if lay.label_at(ci, q).is_zero() {
                zeros += 1;
                weight += run.weights[v];
            }
        }
        for t1 in zeros..=a.k {
            if a.row(ci, t1).is_zero() {
                continue;
            }
            for t2 in zeros..=(a.k + zeros - t1) {
                let t = t1 + t2 - zeros;
                out.row_mut(ci, t).add_product(a.row(ci, t1), b.row(ci, t2), -(weight as isize));
            }
        }
    }
    out
}

pub fn cc_join<R: Row>(left: &CutTable<R>, right: &CutTable<R>, run: &CutCountRun) -> Result<CutTable<R>, RcdsError> {
    if left.bag != right.bag || left.k != right.k || left.width != right.width || left.layout != right.layout {
        return Err(RcdsError::BagMismatch);
    }
    let p = convolve_bar(&forward_bar(left), &forward_bar(right), run);
    Ok(inverse_bar(&p))
}

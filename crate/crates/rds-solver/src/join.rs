use crate::labeling::Layout;
use crate::table::{ValueTable, INF};
use crate::RdsError;

/// Largest bag the 64-bit counting tables accept.
pub const MAX_COUNT_BAG: usize = 25;

const EMPTY: i64 = i64::MAX;

/// How join tables store the size axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JoinMode {
    /// Every labeling keeps counts for all sizes `0..=n`.
    Dense,
    /// Every labeling keeps a window starting at the smallest size of its
    /// barred class; the window is as wide as the widest class.
    #[default]
    Sparse,
}

/// Counts per labeling and solution size.
///
/// In a barred table a positive digit `t` stands for the merged label that
/// covers both `t` and `-t`. Labeling `c` owns the size window
/// `offsets[c] .. offsets[c] + width`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub layout: Layout,
    pub barred: bool,
    pub width: usize,
    pub offsets: Vec<i64>,
    pub data: Vec<u64>,
}

impl CountTable {
    /// Dense table with sizes `0..width`.
    pub fn zeroed(layout: Layout, width: usize) -> Self {
        let len = layout.len;
        CountTable { layout, barred: false, width, offsets: vec![0; len], data: vec![0; len * width] }
    }

    /// Count for labeling `c` at absolute size `x`.
    pub fn at(&self, c: usize, x: i64) -> u64 {
        let off = self.offsets[c];
        if off == EMPTY || x < off || x >= off + self.width as i64 {
            return 0;
        }
        self.data[c * self.width + (x - off) as usize]
    }

    fn row(&self, c: usize) -> &[u64] {
        &self.data[c * self.width..(c + 1) * self.width]
    }
}

/// Join bookkeeping.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct JoinStats {
    pub left_width: usize,
    pub right_width: usize,
    /// Labeling entries visited, summed over the indication, transform,
    /// product and extraction passes.
    pub touched: u64,
    /// Size-window cells combined; skips labelings with nothing to add.
    pub cells: u64,
}

fn check_bag(len: usize) -> Result<(), RdsError> {
    if len > MAX_COUNT_BAG {
        return Err(RdsError::BagTooLarge { size: len, max: MAX_COUNT_BAG });
    }
    Ok(())
}

/// Widest span of finite values over the barred classes.
fn widest_class(table: &ValueTable) -> usize {
    // Empty classes keep lo = INF; their hi is never read.
    let mut lo = table.values.clone();
    let mut hi = table.values.clone();
    for_each_pair(&table.layout, false, |c, src| {
        if lo[src] != INF {
            hi[c] = if lo[c] == INF { hi[src] } else { hi[c].max(hi[src]) };
            lo[c] = lo[c].min(lo[src]);
        }
    });
    lo.iter().zip(&hi).filter(|(&l, _)| l != INF).map(|(&l, &h)| (h - l) as usize + 1).max().unwrap_or(1)
}

/// Visits `(c, src)` where `c` has a positive label `t` at a position and
/// `src` is `c` with that label replaced by `-t`; positions ascend, or
/// descend when `reverse` is set.
fn for_each_pair(lay: &Layout, reverse: bool, mut f: impl FnMut(usize, usize)) {
    let r = lay.r as usize;
    let mut order: Vec<usize> = (0..lay.digits()).collect();
    if reverse {
        order.reverse();
    }
    for q in order {
        let s = lay.strides[q];
        let block = s * lay.base;
        for hi in (0..lay.len).step_by(block) {
            for t in 1..=r {
                let c0 = hi + (r + t) * s;
                let shift = 2 * t * s;
                for c in c0..c0 + s {
                    f(c, c - shift);
                }
            }
        }
    }
}

/// Indication table: a single 1 at size `A[c]` for every finite entry.
/// Dense mode uses sizes `0..=max_size`.
pub fn indication_table(table: &ValueTable, mode: JoinMode, max_size: usize) -> Result<CountTable, RdsError> {
    check_bag(table.bag.len())?;
    let lay = table.layout.clone();
    let (offsets, width) = match mode {
        JoinMode::Dense => {
            if let Some(&v) = table.values.iter().filter(|&&v| v != INF).max() {
                if v as usize > max_size {
                    return Err(RdsError::Invariant(format!("value {v} exceeds size bound {max_size}")));
                }
            }
            (vec![0; lay.len], max_size + 1)
        }
        JoinMode::Sparse => {
            let offsets = table.values.iter().map(|&v| if v == INF { EMPTY } else { v as i64 }).collect();
            (offsets, widest_class(table))
        }
    };
    let mut out = CountTable { layout: lay, barred: false, width, offsets, data: vec![0; table.len() * width] };
    for (c, &v) in table.values.iter().enumerate() {
        if v != INF {
            let off = out.offsets[c];
            out.data[c * width + (v as i64 - off) as usize] = 1;
        }
    }
    Ok(out)
}

/// Merges `t` into `t̄` position by position: `N̄[t̄] += N[-t]`.
pub fn forward_transform(table: &CountTable) -> Result<CountTable, RdsError> {
    let mut out = table.clone();
    forward_in_place(&mut out, &mut JoinStats::default())?;
    Ok(out)
}

/// Rows `c` and `src < c` of a table with rows of width `w`.
fn row_pair(data: &mut [u64], w: usize, c: usize, src: usize) -> (&mut [u64], &[u64]) {
    let (lo, hi) = data.split_at_mut(c * w);
    (&mut hi[..w], &lo[src * w..(src + 1) * w])
}

fn forward_in_place(t: &mut CountTable, stats: &mut JoinStats) -> Result<(), RdsError> {
    if t.barred {
        return Err(RdsError::Invariant("table is already barred".into()));
    }
    check_bag(t.layout.digits())?;
    t.barred = true;
    let w = t.width;
    let mut err = None;
    let (offsets, data) = (&mut t.offsets, &mut t.data);
    for_each_pair(&t.layout, false, |c, src| {
        stats.touched += 1;
        let src_off = offsets[src];
        if err.is_some() || src_off == EMPTY {
            return;
        }
        stats.cells += w as u64;
        let (dst, from) = row_pair(data, w, c, src);
        let off = offsets[c];
        if off == EMPTY {
            dst.copy_from_slice(from);
            offsets[c] = src_off;
            return;
        }
        if off == src_off {
            let mut overflow = false;
            for (d, &x) in dst.iter_mut().zip(from) {
                let (s, o) = d.overflowing_add(x);
                *d = s;
                overflow |= o;
            }
            if overflow {
                err = Some(RdsError::Overflow);
            }
            return;
        }
        let new_off = off.min(src_off);
        let lift = (off - new_off) as usize;
        if lift > 0 {
            if lift >= w || dst[w - lift..].iter().any(|&x| x != 0) {
                err = Some(RdsError::Invariant("size window too narrow".into()));
                return;
            }
            dst.copy_within(0..w - lift, lift);
            dst[..lift].fill(0);
            offsets[c] = new_off;
        }
        let shift = (src_off - new_off) as usize;
        if shift >= w {
            if from.iter().any(|&x| x != 0) {
                err = Some(RdsError::Invariant("size window too narrow".into()));
            }
            return;
        }
        if from[w - shift..].iter().any(|&x| x != 0) {
            err = Some(RdsError::Invariant("size window too narrow".into()));
            return;
        }
        let mut overflow = false;
        for (d, &x) in dst[shift..].iter_mut().zip(from) {
            let (s, o) = d.overflowing_add(x);
            *d = s;
            overflow |= o;
        }
        if overflow {
            err = Some(RdsError::Overflow);
        }
    });
    err.map_or(Ok(()), Err)
}

/// Undoes [`forward_transform`], last position first: `N[t] = N̄[t̄] - N[-t]`.
/// A negative result means the input was not a transformed table.
pub fn inverse_transform(table: &CountTable) -> Result<CountTable, RdsError> {
    let mut out = table.clone();
    inverse_in_place(&mut out, &mut JoinStats::default())?;
    Ok(out)
}

fn inverse_in_place(t: &mut CountTable, stats: &mut JoinStats) -> Result<(), RdsError> {
    if !t.barred {
        return Err(RdsError::Invariant("table is not barred".into()));
    }
    t.barred = false;
    let w = t.width as i64;
    let mut err = None;
    let (offsets, data) = (&t.offsets, &mut t.data);
    for_each_pair(&t.layout, true, |c, src| {
        stats.touched += 1;
        let src_off = offsets[src];
        if err.is_some() || src_off == EMPTY {
            return;
        }
        stats.cells += w as u64;
        let (dst, from) = row_pair(data, w as usize, c, src);
        let off = offsets[c];
        if off == src_off {
            let mut negative = false;
            for (d, &x) in dst.iter_mut().zip(from) {
                let (v, o) = d.overflowing_sub(x);
                *d = v;
                negative |= o;
            }
            if negative {
                err = Some(RdsError::Invariant("negative count after inverse transform".into()));
            }
            return;
        }
        // Source slots that land inside the target window.
        let (lo, hi) = if off == EMPTY { (0, 0) } else { ((off - src_off).clamp(0, w), (off + w - src_off).clamp(0, w)) };
        let (lo, hi) = (lo as usize, hi as usize);
        if from[..lo].iter().chain(&from[hi..]).any(|&x| x != 0) {
            err = Some(RdsError::Invariant("subtracted count lies outside the window".into()));
            return;
        }
        if lo == hi {
            return;
        }
        let start = (src_off + lo as i64 - off) as usize;
        let mut negative = false;
        for (d, &x) in dst[start..start + hi - lo].iter_mut().zip(&from[lo..hi]) {
            let (v, o) = d.overflowing_sub(x);
            *d = v;
            negative |= o;
        }
        if negative {
            err = Some(RdsError::Invariant("negative count after inverse transform".into()));
        }
    });
    err.map_or(Ok(()), Err)
}

/// Pointwise product of two barred tables with sizes combined as
/// `x = x1 + x2 - #zeros(c̄)`.
pub fn convolve_join(left: &CountTable, right: &CountTable) -> Result<CountTable, RdsError> {
    convolve_counted(left, right, &mut JoinStats::default())
}

fn convolve_counted(left: &CountTable, right: &CountTable, stats: &mut JoinStats) -> Result<CountTable, RdsError> {
    if left.layout != right.layout || !left.barred || !right.barred {
        return Err(RdsError::Invariant("convolution needs two barred tables over one bag".into()));
    }
    let lay = left.layout.clone();
    let (wa, wb) = (left.width, right.width);
    let w = wa + wb - 1;
    let mut out = CountTable {
        layout: lay.clone(),
        barred: true,
        width: w,
        offsets: vec![EMPTY; lay.len],
        data: vec![0; lay.len * w],
    };
    stats.touched += lay.len as u64;
    let zeros = lay.zero_counts();
    let mut overflow = false;
    for c in 0..lay.len {
        let (oa, ob) = (left.offsets[c], right.offsets[c]);
        if oa == EMPTY || ob == EMPTY {
            continue;
        }
        out.offsets[c] = oa + ob - zeros[c] as i64;
        let (ra, rb) = (left.row(c), right.row(c));
        let dst = &mut out.data[c * w..(c + 1) * w];
        for (i, &a) in ra.iter().enumerate() {
            if a == 0 {
                continue;
            }
            stats.cells += wb as u64;
            for (d, &b) in dst[i..i + wb].iter_mut().zip(rb) {
                let (p, o1) = a.overflowing_mul(b);
                let (s, o2) = d.overflowing_add(p);
                *d = s;
                overflow |= o1 | o2;
            }
        }
    }
    if overflow {
        return Err(RdsError::Overflow);
    }
    Ok(out)
}

/// `A[c] = min { x : N[c][x] > 0 }`.
pub fn extract_min(table: &CountTable, bag: Vec<usize>) -> ValueTable {
    let mut out = ValueTable::new(bag, table.layout.r, INF);
    for c in 0..table.layout.len {
        let off = table.offsets[c];
        if off == EMPTY {
            continue;
        }
        if let Some(i) = table.row(c).iter().position(|&x| x > 0) {
            let x = off + i as i64;
            if x >= 0 && x < INF as i64 {
                out.values[c] = x as u16;
            }
        }
    }
    out
}

/// Join through indication tables, bar transforms and convolution.
pub fn join_table(
    left: &ValueTable,
    right: &ValueTable,
    mode: JoinMode,
    max_size: usize,
) -> Result<(ValueTable, JoinStats), RdsError> {
    if left.bag != right.bag || left.layout != right.layout {
        return Err(RdsError::BagMismatch);
    }
    let mut stats = JoinStats::default();
    let mut a = indication_table(left, mode, max_size)?;
    let mut b = indication_table(right, mode, max_size)?;
    stats.touched += 2 * left.len() as u64;
    (stats.left_width, stats.right_width) = (a.width, b.width);
    forward_in_place(&mut a, &mut stats)?;
    forward_in_place(&mut b, &mut stats)?;
    let mut prod = convolve_counted(&a, &b, &mut stats)?;
    drop((a, b));
    inverse_in_place(&mut prod, &mut stats)?;
    stats.touched += prod.layout.len as u64;
    Ok((extract_min(&prod, left.bag.clone()), stats))
}

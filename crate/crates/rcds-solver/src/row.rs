use std::fmt::Debug;

/// Counts indexed by total weight `0..width`, with the arithmetic the
/// table operations need.
pub trait Row: Clone + Debug + PartialEq + Send + Sync {
    fn zero(width: usize) -> Self;
    fn width(&self) -> usize;
    fn get(&self, w: usize) -> u64;
    fn set(&mut self, w: usize, value: u64);
    fn is_zero(&self) -> bool;
    fn add(&mut self, other: &Self);
    fn sub(&mut self, other: &Self);
    /// `self[w + shift] += other[w]`; anything past the width is dropped.
    fn add_shifted(&mut self, other: &Self, shift: usize);
    /// `self[w1 + w2 + offset] += a[w1] * b[w2]`, out-of-range targets dropped.
    fn add_product(&mut self, a: &Self, b: &Self, offset: isize);
}

/// Counts mod 2, one bit per weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRow {
    width: usize,
    words: Vec<u64>,
}

impl BitRow {
    fn mask_tail(&mut self) {
        let extra = self.words.len() * 64 - self.width;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }

    /// XORs `src` shifted by `shift` bits (negative shifts move down).
    fn xor_shifted(&mut self, src: &BitRow, shift: isize) {
        let n = self.words.len();
        let m = src.words.len() as isize;
        let (q, b) = (shift.div_euclid(64), shift.rem_euclid(64) as u32);
        for i in 0..n as isize {
            let j = i - q;
            let lo = if (0..m).contains(&j) { src.words[j as usize] << b } else { 0 };
            let hi = if b > 0 && (0..m).contains(&(j - 1)) { src.words[(j - 1) as usize] >> (64 - b) } else { 0 };
            self.words[i as usize] ^= lo | hi;
        }
        self.mask_tail();
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut x = w;
            std::iter::from_fn(move || {
                if x == 0 {
                    return None;
                }
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(i * 64 + b)
            })
        })
    }
}

impl Row for BitRow {
    fn zero(width: usize) -> Self {
        BitRow { width, words: vec![0; width.div_ceil(64)] }
    }

    fn width(&self) -> usize {
        self.width
    }

    fn get(&self, w: usize) -> u64 {
        (self.words[w / 64] >> (w % 64)) & 1
    }

    fn set(&mut self, w: usize, value: u64) {
        let bit = 1u64 << (w % 64);
        if value & 1 == 1 {
            self.words[w / 64] |= bit;
        } else {
            self.words[w / 64] &= !bit;
        }
    }

    fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn add(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    fn sub(&mut self, other: &Self) {
        self.add(other);
    }

    fn add_shifted(&mut self, other: &Self, shift: usize) {
        self.xor_shifted(other, shift as isize);
    }

    fn add_product(&mut self, a: &Self, b: &Self, offset: isize) {
        if b.is_zero() {
            return;
        }
        for w1 in a.ones() {
            self.xor_shifted(b, w1 as isize + offset);
        }
    }
}

/// Exact counts. Overflow is treated as a bug and panics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRow {
    data: Vec<u64>,
}

impl Row for ExactRow {
    fn zero(width: usize) -> Self {
        ExactRow { data: vec![0; width] }
    }

    fn width(&self) -> usize {
        self.data.len()
    }

    fn get(&self, w: usize) -> u64 {
        self.data[w]
    }

    fn set(&mut self, w: usize, value: u64) {
        self.data[w] = value;
    }

    fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn add(&mut self, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = a.checked_add(*b).expect("exact count overflow");
        }
    }

    fn sub(&mut self, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = a.checked_sub(*b).expect("exact count went negative");
        }
    }

    fn add_shifted(&mut self, other: &Self, shift: usize) {
        let w = self.data.len();
        for (i, &x) in other.data.iter().enumerate() {
            if i + shift < w {
                self.data[i + shift] = self.data[i + shift].checked_add(x).expect("exact count overflow");
            }
        }
    }

    fn add_product(&mut self, a: &Self, b: &Self, offset: isize) {
        let w = self.data.len() as isize;
        for (i, &x) in a.data.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in b.data.iter().enumerate().filter(|(_, &y)| y != 0) {
                let at = i as isize + j as isize + offset;
                if (0..w).contains(&at) {
                    let p = x.checked_mul(y).expect("exact count overflow");
                    let cell = &mut self.data[at as usize];
                    *cell = cell.checked_add(p).expect("exact count overflow");
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(width: usize, ones: &[usize]) -> BitRow {
        let mut r = BitRow::zero(width);
        for &w in ones {
            r.set(w, 1);
        }
        r
    }

    #[test]
    fn shifts_cross_word_boundaries() {
        let src = bits(200, &[0, 63, 64, 130]);
        let mut dst = BitRow::zero(200);
        dst.add_shifted(&src, 70);
        assert_eq!(dst.ones().collect::<Vec<_>>(), vec![70, 133, 134]);
        let mut down = BitRow::zero(200);
        down.xor_shifted(&src, -64);
        assert_eq!(down.ones().collect::<Vec<_>>(), vec![0, 66]);
    }

    #[test]
    fn product_matches_exact_mod_two() {
        let a = bits(100, &[1, 5, 70]);
        let b = bits(100, &[2, 5, 30]);
        let mut pb = BitRow::zero(100);
        pb.add_product(&a, &b, -3);
        let mut ea = ExactRow::zero(100);
        let mut eb = ExactRow::zero(100);
        for w in a.ones() {
            ea.set(w, 1);
        }
        for w in b.ones() {
            eb.set(w, 1);
        }
        let mut pe = ExactRow::zero(100);
        pe.add_product(&ea, &eb, -3);
        for w in 0..100 {
            assert_eq!(pb.get(w), pe.get(w) % 2, "weight {w}");
        }
    }
}

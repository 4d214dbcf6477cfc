/// Label of a bag vertex in the cut-counting tables.
///
/// Zeros mark solution vertices together with their cut side. A positive
/// label `t` means the vertex is at distance `t` from the solution and an
/// edge to a vertex at distance `t - 1` is already present; `Neg(t)` is the
/// same distance without such an edge yet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CutLabel {
    Neg(u32),
    Zero1,
    Zero2,
    Pos(u32),
}

impl CutLabel {
    pub fn magnitude(self) -> u32 {
        match self {
            CutLabel::Neg(t) | CutLabel::Pos(t) => t,
            CutLabel::Zero1 | CutLabel::Zero2 => 0,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, CutLabel::Zero1 | CutLabel::Zero2)
    }

    /// Signed value with both zeros read as 0.
    pub fn signed(self) -> i64 {
        match self {
            CutLabel::Neg(t) => -(t as i64),
            CutLabel::Pos(t) => t as i64,
            _ => 0,
        }
    }
}

/// Mixed-radix layout over a sorted bag, base `2r + 2`, first vertex least
/// significant.
///
/// Digits: `Neg(t)` is `r - t`, `Zero1` is `r`, `Zero2` is `r + 1` and
/// `Pos(t)` is `r + 1 + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutLayout {
    pub r: u32,
    pub base: usize,
    pub strides: Vec<usize>,
    pub len: usize,
}

impl CutLayout {
    pub fn new(r: u32, bag_len: usize) -> Self {
        let base = 2 * r as usize + 2;
        let mut strides = Vec::with_capacity(bag_len);
        let mut s = 1usize;
        for _ in 0..bag_len {
            strides.push(s);
            s = s.checked_mul(base).expect("labeling space fits in usize");
        }
        CutLayout { r, base, strides, len: s }
    }

    pub fn digits(&self) -> usize {
        self.strides.len()
    }

    pub fn to_digit(&self, l: CutLabel) -> usize {
        let r = self.r as usize;
        match l {
            CutLabel::Neg(t) => r - t as usize,
            CutLabel::Zero1 => r,
            CutLabel::Zero2 => r + 1,
            CutLabel::Pos(t) => r + 1 + t as usize,
        }
    }

    pub fn from_digit(&self, d: usize) -> CutLabel {
        let r = self.r as usize;
        if d < r {
            CutLabel::Neg((r - d) as u32)
        } else if d == r {
            CutLabel::Zero1
        } else if d == r + 1 {
            CutLabel::Zero2
        } else {
            CutLabel::Pos((d - r - 1) as u32)
        }
    }

    pub fn digit_at(&self, index: usize, pos: usize) -> usize {
        (index / self.strides[pos]) % self.base
    }

    pub fn label_at(&self, index: usize, pos: usize) -> CutLabel {
        self.from_digit(self.digit_at(index, pos))
    }

    pub fn decode(&self, index: usize) -> Vec<CutLabel> {
        (0..self.digits()).map(|q| self.label_at(index, q)).collect()
    }

    pub fn encode(&self, labels: &[CutLabel]) -> usize {
        labels.iter().zip(&self.strides).map(|(&l, &s)| self.to_digit(l) * s).sum()
    }

    /// Every label for radius `r`, in digit order.
    pub fn alphabet(&self) -> Vec<CutLabel> {
        (0..self.base).map(|d| self.from_digit(d)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_round_trip() {
        let lay = CutLayout::new(2, 3);
        assert_eq!(lay.base, 6);
        assert_eq!(lay.len, 216);
        assert_eq!(
            lay.alphabet(),
            vec![
                CutLabel::Neg(2),
                CutLabel::Neg(1),
                CutLabel::Zero1,
                CutLabel::Zero2,
                CutLabel::Pos(1),
                CutLabel::Pos(2)
            ]
        );
        for i in 0..lay.len {
            assert_eq!(lay.encode(&lay.decode(i)), i);
        }
    }
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One randomized pass: vertex weights in `1..=2n` and the vertex that
/// must sit on the first cut side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCountRun {
    pub weights: Vec<u64>,
    pub root: usize,
    /// Largest solution size tracked; weights up to `2n * k` are kept.
    pub k: usize,
    pub seed: u64,
    pub rep: u64,
}

impl CutCountRun {
    /// Weights come from the ChaCha stream `(root << 32) | rep` of `seed`, so
    /// they do not depend on `k` and runs can be drawn in any order.
    pub fn new(n: usize, k: usize, seed: u64, root: usize, rep: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(((root as u64) << 32) | (rep & 0xffff_ffff));
        let top = 2 * n.max(1) as u64;
        let weights = (0..n).map(|_| rng.gen_range(1..=top)).collect();
        CutCountRun { weights, root, k, seed, rep }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Number of weight slots, `2nk + 1`.
    pub fn width(&self) -> usize {
        2 * self.n() * self.k + 1
    }
}

/// Weights for root 0, repetition 0.
pub fn sample_weights(n: usize, k: usize, seed: u64) -> CutCountRun {
    CutCountRun::new(n, k, seed, 0, 0)
}

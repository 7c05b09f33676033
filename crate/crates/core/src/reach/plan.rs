//! Level-set decomposition of a firing vector into an ascending chain.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::graph::Digraph;
use crate::vector::{ChipDistribution, FiringVector};

/// A reduced firing vector `f` with a zero entry, split into its level
/// sets `S_j = {v : f(v) >= t - j + 1}` for `j = 1..=t`, where `t` is the
/// largest entry.
///
/// Only the `k <= n` distinct sets are stored, together with the index at
/// which each first occurs. Intermediate positions are computed on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AscendingChainPlan {
    f: FiringVector,
    t: BigInt,
    // distinct sets, smallest first
    sets: Vec<Vec<usize>>,
    // first-occurrence indices a_1..a_k followed by a_{k+1} = t + 1
    starts: Vec<BigInt>,
}

impl AscendingChainPlan {
    /// Builds the plan. `f` must have a zero entry (so every level set is
    /// a proper subset of the vertex set).
    pub fn new(f: FiringVector) -> Self {
        assert!(
            f.entries().iter().any(Zero::is_zero),
            "an ascending chain plan needs a firing vector with a zero entry"
        );
        let t = f.entries().iter().max().cloned().unwrap_or_default();
        let mut levels: Vec<BigInt> = f.entries().iter().filter(|e| e.is_positive()).cloned().collect();
        levels.sort_unstable_by(|a, b| b.cmp(a));
        levels.dedup();

        let mut sets = Vec::with_capacity(levels.len());
        let mut starts = Vec::with_capacity(levels.len() + 1);
        for u in &levels {
            sets.push((0..f.len()).filter(|&v| &f[v] >= u).collect());
            starts.push(&t - u + 1);
        }
        starts.push(&t + 1);
        Self { f, t, sets, starts }
    }

    pub fn firing_vector(&self) -> &FiringVector {
        &self.f
    }

    /// Largest entry of the firing vector, the number of level sets.
    pub fn height(&self) -> &BigInt {
        &self.t
    }

    /// Number of distinct level sets.
    pub fn distinct(&self) -> usize {
        self.sets.len()
    }

    /// The `i`-th distinct set (0-based), ascending vertices.
    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    /// First-occurrence index of the `i`-th distinct set (0-based); for
    /// `i = distinct()` this is `t + 1`.
    pub fn start(&self, i: usize) -> &BigInt {
        &self.starts[i]
    }

    /// How many consecutive level sets equal the `i`-th distinct set.
    pub fn repeat(&self, i: usize) -> BigInt {
        &self.starts[i + 1] - &self.starts[i]
    }

    /// The position after firing `S_1, ..., S_{j-1}` from `x`, for
    /// `1 <= j <= t + 1`, by the closed form.
    pub fn distribution_at(&self, g: &Digraph, x: &ChipDistribution, j: &BigInt) -> Vec<BigInt> {
        assert!(j.is_positive() && *j <= &self.t + 1, "level index out of range");
        let n = g.vertex_count();
        let mut fired = vec![BigInt::zero(); n];
        for i in 0..self.sets.len() {
            if &self.starts[i] >= j {
                break;
            }
            let times = if j < &self.starts[i + 1] {
                j - &self.starts[i]
            } else {
                self.repeat(i)
            };
            for &v in &self.sets[i] {
                fired[v] += &times;
            }
        }
        let delta = g.apply_laplacian(&fired);
        x.entries().iter().zip(delta).map(|(a, d)| a + d).collect()
    }

    /// `S_{a_1} ⊊ ... ⊊ S_{a_k} ⊊ V` with every set nonempty.
    pub fn is_strictly_ascending(&self, n: usize) -> bool {
        let nested = self
            .sets
            .windows(2)
            .all(|w| w[0].len() < w[1].len() && w[0].iter().all(|v| w[1].contains(v)));
        let proper = self.sets.last().is_none_or(|s| s.len() < n);
        nested && proper && self.sets.iter().all(|s| !s.is_empty())
    }

    /// `Σ_j 1_{S_j}`, which must equal the firing vector.
    pub fn level_sum(&self) -> Vec<BigInt> {
        let mut sum = vec![BigInt::zero(); self.f.len()];
        for i in 0..self.sets.len() {
            let r = self.repeat(i);
            for &v in &self.sets[i] {
                sum[v] += &r;
            }
        }
        sum
    }

    pub(crate) fn last_index_of(&self, i: usize) -> BigInt {
        &self.starts[i + 1] - BigInt::one()
    }
}

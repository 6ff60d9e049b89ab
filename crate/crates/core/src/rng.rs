//! Portable deterministic pseudo-random numbers.
//!
//! Everything random in the simulator (UAV coordinates, pair selection,
//! replicate topologies) is drawn from [`SplitMix64`], so any seed produces
//! the same bit pattern on every platform and in every language that
//! implements the same three-line recurrence.

use crate::error::{Error, Result};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 generator with a single word of state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform double in `[0, 1)` built from the top 53 bits.
    pub fn next_uniform(&mut self) -> f64 {
        u64_to_unit(self.next_u64())
    }

    /// Draws `k` distinct indices from `0..n`.
    ///
    /// Candidates are kept in ascending order and removed by position, so
    /// the emission order is part of the contract.
    pub fn sample_without_replacement(&mut self, n: usize, k: usize) -> Result<Vec<usize>> {
        if k > n {
            return Err(Error::InvalidArgument(format!(
                "cannot sample {k} distinct indices from {n}"
            )));
        }
        let mut candidates: Vec<usize> = (0..n).collect();
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            let idx = (self.next_uniform() * candidates.len() as f64) as usize;
            out.push(candidates.remove(idx));
        }
        Ok(out)
    }
}

pub(crate) fn u64_to_unit(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

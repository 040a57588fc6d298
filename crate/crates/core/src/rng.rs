//! Deterministic pseudo-random numbers for shuffles.
//!
//! Every shuffle in the toolkit flows through [`Lcg64`], a 64-bit linear
//! congruential generator with Knuth's MMIX constants
//! (`a = 6364136223846793005`, `c = 1442695040888963407`). The generator is
//! documented here precisely so that results can be reproduced bit-for-bit
//! in other implementations:
//!
//! * `state' = state * a + c  (mod 2^64)`
//! * a draw returns the top 32 bits of the new state,
//! * `next_below(n)` is `draw % n`,
//! * [`Lcg64::shuffle`] is a Fisher-Yates pass from the last index down,
//!   swapping index `i` with `next_below(i + 1)`.

#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Top 32 bits of the advanced state.
    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(MULTIPLIER)
            .wrapping_add(INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish draw in `0..bound`. `bound` must be non-zero.
    pub fn next_below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        self.next_u32() as usize % bound
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.next_below(i + 1);
            xs.swap(i, j);
        }
    }
}

//! Structural operation tally used to compare algorithms independently of
//! machine speed.

use serde::{Deserialize, Serialize};
use std::ops::AddAssign;

/// Counts of the three kinds of work a solve performs.
///
/// `pair_ops` counts brute-force pair probes, `fft_cells` counts transform
/// cells and superset cells touched while hashing, and `bsg_ops` counts
/// operations spent building covers (graph construction, degree and
/// co-degree evaluation, edge removal, biclique sumsets).
///
/// One counter belongs to one solve; all counts only grow.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkCounter {
    pub pair_ops: u64,
    pub fft_cells: u64,
    pub bsg_ops: u64,
}

impl WorkCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn pairs(&mut self, n: u64) {
        self.pair_ops = self.pair_ops.saturating_add(n);
    }

    #[inline]
    pub fn fft(&mut self, n: u64) {
        self.fft_cells = self.fft_cells.saturating_add(n);
    }

    #[inline]
    pub fn bsg(&mut self, n: u64) {
        self.bsg_ops = self.bsg_ops.saturating_add(n);
    }

    pub fn total(&self) -> u64 {
        self.pair_ops
            .saturating_add(self.fft_cells)
            .saturating_add(self.bsg_ops)
    }
}

impl AddAssign for WorkCounter {
    fn add_assign(&mut self, rhs: Self) {
        self.pairs(rhs.pair_ops);
        self.fft(rhs.fft_cells);
        self.bsg(rhs.bsg_ops);
    }
}

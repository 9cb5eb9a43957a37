//! Seeded hash functions for table placement.
//!
//! The pair of functions is modeled as a keyed pseudorandom function over
//! 64-bit seeds, reduced modulo the table size. Fixed seeds give
//! deterministic, repeatable runs; fresh seeds are drawn for every table
//! epoch so probe positions are never correlated across rebuilds.

use crate::LogicalKey;

/// Finalizer with full avalanche; the same mixer splitmix64 uses.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Keyed evaluation: one 64-bit output per (seed, key) pair.
#[inline]
fn prf(seed: u64, key: LogicalKey) -> u64 {
    // Two mixing rounds decorrelate seed and key; one round leaves
    // detectable structure between nearby keys under chi-square tests.
    mix64(mix64(seed ^ 0x243f_6a88_85a3_08d3).wrapping_add(key as u64))
}

/// The two placement functions of a cuckoo table, sharing one cell range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HashPair {
    pub seed1: u64,
    pub seed2: u64,
    /// Cells per sub-table; evaluations land in `[0, range_m)`.
    pub range_m: usize,
}

impl HashPair {
    pub fn new(seed1: u64, seed2: u64, range_m: usize) -> Self {
        assert!(range_m >= 1, "hash range must be positive");
        HashPair {
            seed1,
            seed2,
            range_m,
        }
    }

    /// Position of `key` in the first sub-table.
    #[inline]
    pub fn h1(&self, key: LogicalKey) -> usize {
        (prf(self.seed1, key) % self.range_m as u64) as usize
    }

    /// Position of `key` in the second sub-table.
    #[inline]
    pub fn h2(&self, key: LogicalKey) -> usize {
        (prf(self.seed2, key) % self.range_m as u64) as usize
    }
}

/// Single-function variant used by bucket levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BucketHash {
    pub seed: u64,
    pub buckets: usize,
}

impl BucketHash {
    pub fn new(seed: u64, buckets: usize) -> Self {
        assert!(buckets >= 1);
        BucketHash { seed, buckets }
    }

    #[inline]
    pub fn bucket(&self, key: LogicalKey) -> usize {
        (prf(self.seed, key) % self.buckets as u64) as usize
    }
}

//! Hierarchical oblivious-RAM simulation against an honest-but-curious server.
//!
//! The crate provides the building blocks of a hash-table-hierarchy ORAM and
//! the instrumentation needed to test its privacy claims mechanically:
//!
//! * [`cuckoo`] — two-table cuckoo hash tables with a bounded stash, plus
//!   cuckoo-graph component statistics.
//! * [`osort`] — two data-oblivious sorters: Batcher's odd-even mergesort
//!   (comparator sequence fixed by length) and an external-memory k-way
//!   modular mergesort over a simulated block device that records its I/O
//!   trace.
//! * [`mapreduce`] — a sequential simulator of streaming MapReduce with
//!   message-complexity accounting and a data-oblivious execution mode built
//!   on the oblivious sorters.
//! * [`build`] — parallel-BFS construction of cuckoo tables expressed as a
//!   MapReduce algorithm, assignment-to-table conversion, and the full
//!   data-oblivious build pipeline.
//! * [`oram`] — the hierarchical ORAM client: access phase, rebuild cascade,
//!   dummy counters, potentials, and per-level or shared stashes.
//! * [`server`] — the simulated storage server: encrypted cell store with a
//!   complete access trace and a pluggable probabilistic-encryption boundary.
//!
//! Obliviousness is tested at two boundaries: exact equality of structural
//! traces (see [`trace`]) across equal-length workloads, and chi-square
//! uniformity of the randomized probe positions ([`stats`]).

pub mod build;
pub mod cuckoo;
pub mod hash;
pub mod mapreduce;
pub mod oram;
pub mod osort;
pub mod server;
pub mod stats;
pub mod trace;
pub mod workload;

/// Logical address of a stored cell. Positive keys are real cells; negative
/// keys are dummy items probed to hide where a real lookup stopped.
pub type LogicalKey = i64;

/// Fixed-size payload carried by every logical cell.
pub type Value = u64;

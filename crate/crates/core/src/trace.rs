//! Structural traces: the data-independent skeleton of a computation's
//! server-visible behavior.
//!
//! A skeleton records step kinds, levels and probe counts but never the
//! randomized cell positions those probes hit (positions are exported
//! separately for uniformity testing). Two runs over equal-length workloads
//! must produce byte-identical skeletons; the harness diffs the serialized
//! form directly.

use std::fmt;

/// One data-independent step. Variants cover both the ORAM protocol and the
/// oblivious MapReduce simulation so a single trace can span a pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkeletonEvent {
    /// Start of one logical access.
    AccessBegin,
    /// Exhaustive scan of the top array level: `slots` reads then `slots` writes.
    LevelScan { level: u8, slots: u32 },
    /// Per-level access counter touched (one read, one write).
    CounterTouch { level: u8 },
    /// One bucket probed: `cells` reads then `cells` rewrites.
    BucketProbe { level: u8, cells: u32 },
    /// Cuckoo probe: two table cells plus `stash` stash slots, read then rewritten.
    CuckooProbe { level: u8, stash: u32 },
    /// Shared stash swept: `slots` reads then `slots` rewrites.
    SharedStashSweep { slots: u32 },
    /// New value installed in the top level.
    TopInsert,
    /// Rebuild fired: levels `from..=upto` emptied into `dest` (dest == upto
    /// for the full-hierarchy rebuild), touching `cells_read` + `cells_written`.
    Rebuild {
        from: u8,
        upto: u8,
        dest: u8,
        cells_read: u64,
        cells_written: u64,
    },
    /// Linear pass over `len` simulation slots.
    Scan { len: u64 },
    /// Data-oblivious sort of `len` slots.
    ObliviousSort { len: u64 },
    /// Fixed-fanout emission pass producing `len` slots.
    Emit { len: u64 },
    /// Array cut to its first `len` slots.
    Truncate { len: u64 },
}

impl fmt::Display for SkeletonEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SkeletonEvent::*;
        match self {
            AccessBegin => write!(f, "access"),
            LevelScan { level, slots } => write!(f, "scan-level {level} {slots}"),
            CounterTouch { level } => write!(f, "counter {level}"),
            BucketProbe { level, cells } => write!(f, "bucket {level} {cells}"),
            CuckooProbe { level, stash } => write!(f, "cuckoo {level} {stash}"),
            SharedStashSweep { slots } => write!(f, "shared-stash {slots}"),
            TopInsert => write!(f, "top-insert"),
            Rebuild {
                from,
                upto,
                dest,
                cells_read,
                cells_written,
            } => write!(f, "rebuild {from} {upto} {dest} {cells_read} {cells_written}"),
            Scan { len } => write!(f, "mr-scan {len}"),
            ObliviousSort { len } => write!(f, "mr-sort {len}"),
            Emit { len } => write!(f, "mr-emit {len}"),
            Truncate { len } => write!(f, "mr-cut {len}"),
        }
    }
}

/// Ordered list of skeleton events; equality is exact sequence equality.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructuralTrace {
    pub events: Vec<SkeletonEvent>,
}

impl StructuralTrace {
    pub fn new() -> Self {
        StructuralTrace { events: Vec::new() }
    }

    pub fn push(&mut self, ev: SkeletonEvent) {
        self.events.push(ev);
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Line-per-event serialization, stable across runs.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ev in &self.events {
            out.push_str(&ev.to_string());
            out.push('\n');
        }
        out
    }

    /// Index of the first differing event, or `None` when equal.
    pub fn first_divergence(&self, other: &StructuralTrace) -> Option<usize> {
        let n = self.events.len().min(other.events.len());
        for i in 0..n {
            if self.events[i] != other.events[i] {
                return Some(i);
            }
        }
        if self.events.len() != other.events.len() {
            Some(n)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divergence_points_at_first_mismatch() {
        let mut a = StructuralTrace::new();
        let mut b = StructuralTrace::new();
        for t in [&mut a, &mut b] {
            t.push(SkeletonEvent::AccessBegin);
            t.push(SkeletonEvent::CounterTouch { level: 4 });
        }
        assert_eq!(a.first_divergence(&b), None);
        b.push(SkeletonEvent::TopInsert);
        assert_eq!(a.first_divergence(&b), Some(2));
        a.push(SkeletonEvent::AccessBegin);
        assert_eq!(a.first_divergence(&b), Some(2));
    }

    #[test]
    fn text_is_line_per_event() {
        let mut t = StructuralTrace::new();
        t.push(SkeletonEvent::CuckooProbe { level: 9, stash: 20 });
        t.push(SkeletonEvent::Scan { len: 128 });
        assert_eq!(t.to_text(), "cuckoo 9 20\nmr-scan 128\n");
    }
}

//! Workload files: one operation per line, `R <addr>` or `W <addr> <value>`.

use crate::{LogicalKey, Value};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WorkloadOp {
    Read { addr: LogicalKey },
    Write { addr: LogicalKey, value: Value },
}

impl WorkloadOp {
    pub fn addr(&self) -> LogicalKey {
        match *self {
            WorkloadOp::Read { addr } => addr,
            WorkloadOp::Write { addr, .. } => addr,
        }
    }
}

pub fn parse_workload(text: &str) -> Result<Vec<WorkloadOp>, String> {
    let mut ops = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_ascii_whitespace();
        let kind = it.next().unwrap();
        let addr = it
            .next()
            .ok_or_else(|| format!("line {}: missing address", lineno + 1))?
            .parse::<LogicalKey>()
            .map_err(|e| format!("line {}: bad address: {e}", lineno + 1))?;
        let op = match kind {
            "R" => {
                if it.next().is_some() {
                    return Err(format!("line {}: R takes one field", lineno + 1));
                }
                WorkloadOp::Read { addr }
            }
            "W" => {
                let value = it
                    .next()
                    .ok_or_else(|| format!("line {}: W missing value", lineno + 1))?
                    .parse::<Value>()
                    .map_err(|e| format!("line {}: bad value: {e}", lineno + 1))?;
                if it.next().is_some() {
                    return Err(format!("line {}: W takes two fields", lineno + 1));
                }
                WorkloadOp::Write { addr, value }
            }
            other => return Err(format!("line {}: unknown op {other:?}", lineno + 1)),
        };
        ops.push(op);
    }
    Ok(ops)
}

pub fn format_workload(ops: &[WorkloadOp]) -> String {
    let mut out = String::new();
    for op in ops {
        match op {
            WorkloadOp::Read { addr } => out.push_str(&format!("R {addr}\n")),
            WorkloadOp::Write { addr, value } => out.push_str(&format!("W {addr} {value}\n")),
        }
    }
    out
}

/// Seeded mixed read/write workload over addresses `1..=n`.
pub fn random_workload(n: u64, ops: usize, seed: u64) -> Vec<WorkloadOp> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..ops)
        .map(|_| {
            let addr = rng.gen_range(1..=n) as LogicalKey;
            if rng.gen_bool(0.5) {
                WorkloadOp::Read { addr }
            } else {
                WorkloadOp::Write {
                    addr,
                    value: rng.gen(),
                }
            }
        })
        .collect()
}

//! Simulated honest-but-curious storage server.
//!
//! The server holds flat arrays of equal-length opaque blobs, one array per
//! hierarchy level, and records every cell it is asked to touch. It never
//! interprets blob contents; the trace carries metadata only. Confidentiality
//! of the contents is the job of [`CipherBox`], a pluggable probabilistic
//! encryption boundary.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::collections::BTreeMap;
use thiserror::Error;

use crate::hash::mix64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ServerError {
    #[error("level {0} does not exist")]
    NoSuchLevel(u8),
    #[error("cell {idx} out of range for level {level} (size {size})")]
    OutOfRange { level: u8, idx: usize, size: usize },
}

/// Direction of one physical touch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOp {
    Read,
    Write,
}

/// One record of the server-visible access sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEntry {
    pub seq: u64,
    pub level: u8,
    pub idx: u32,
    pub op: TraceOp,
}

/// Per-level encrypted cell store with full access-trace recording.
///
/// `record_entries` controls whether individual [`TraceEntry`] records are
/// retained; exact read/write counts are kept either way so long runs can
/// still reconcile totals without holding tens of millions of entries.
pub struct ServerStore {
    levels: BTreeMap<u8, Vec<Vec<u8>>>,
    trace: Vec<TraceEntry>,
    seq: u64,
    reads: u64,
    writes: u64,
    record_entries: bool,
}

impl ServerStore {
    pub fn new(record_entries: bool) -> Self {
        ServerStore {
            levels: BTreeMap::new(),
            trace: Vec::new(),
            seq: 0,
            reads: 0,
            writes: 0,
            record_entries,
        }
    }

    /// Create (or recreate) a level as `cells` copies of `blob`.
    /// Installation is not traced; levels come into being rebuilt, and the
    /// rebuild itself is what touches cells through read/write.
    pub fn install_level(&mut self, level: u8, cells: usize, blob: Vec<u8>) {
        self.levels.insert(level, vec![blob; cells]);
    }

    pub fn level_size(&self, level: u8) -> Option<usize> {
        self.levels.get(&level).map(|v| v.len())
    }

    pub fn read_cell(&mut self, level: u8, idx: usize) -> Result<Vec<u8>, ServerError> {
        let cells = self.levels.get(&level).ok_or(ServerError::NoSuchLevel(level))?;
        let blob = cells
            .get(idx)
            .ok_or(ServerError::OutOfRange {
                level,
                idx,
                size: cells.len(),
            })?
            .clone();
        self.log(level, idx, TraceOp::Read);
        Ok(blob)
    }

    pub fn write_cell(&mut self, level: u8, idx: usize, blob: Vec<u8>) -> Result<(), ServerError> {
        let cells = self
            .levels
            .get_mut(&level)
            .ok_or(ServerError::NoSuchLevel(level))?;
        let size = cells.len();
        let slot = cells
            .get_mut(idx)
            .ok_or(ServerError::OutOfRange { level, idx, size })?;
        *slot = blob;
        self.log(level, idx, TraceOp::Write);
        Ok(())
    }

    fn log(&mut self, level: u8, idx: usize, op: TraceOp) {
        match op {
            TraceOp::Read => self.reads += 1,
            TraceOp::Write => self.writes += 1,
        }
        if self.record_entries {
            self.trace.push(TraceEntry {
                seq: self.seq,
                level,
                idx: idx as u32,
                op,
            });
        }
        self.seq += 1;
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    pub fn trace_len(&self) -> u64 {
        self.seq
    }

    pub fn read_count(&self) -> u64 {
        self.reads
    }

    pub fn write_count(&self) -> u64 {
        self.writes
    }

    /// Touch counts per level, reconcilable against report totals.
    pub fn per_level_counts(&self) -> BTreeMap<u8, u64> {
        let mut m = BTreeMap::new();
        for e in &self.trace {
            *m.entry(e.level).or_insert(0) += 1;
        }
        m
    }

    /// Line-delimited `<seq> <level> <idx> <R|W>` records.
    pub fn export_trace(&self) -> String {
        let mut out = String::new();
        for e in &self.trace {
            let op = match e.op {
                TraceOp::Read => 'R',
                TraceOp::Write => 'W',
            };
            out.push_str(&format!("{} {} {} {}\n", e.seq, e.level, e.idx, op));
        }
        out
    }
}

/// Parse one exported server trace. Inverse of [`ServerStore::export_trace`].
pub fn parse_trace(text: &str) -> Result<Vec<TraceEntry>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_ascii_whitespace();
        let parse = |tok: Option<&str>, what: &str| -> Result<&str, String> {
            tok.ok_or_else(|| format!("line {}: missing {}", lineno + 1, what))
        };
        let seq = parse(it.next(), "seq")?
            .parse::<u64>()
            .map_err(|e| format!("line {}: bad seq: {e}", lineno + 1))?;
        let level = parse(it.next(), "level")?
            .parse::<u8>()
            .map_err(|e| format!("line {}: bad level: {e}", lineno + 1))?;
        let idx = parse(it.next(), "idx")?
            .parse::<u32>()
            .map_err(|e| format!("line {}: bad idx: {e}", lineno + 1))?;
        let op = match parse(it.next(), "op")? {
            "R" => TraceOp::Read,
            "W" => TraceOp::Write,
            other => return Err(format!("line {}: bad op {other:?}", lineno + 1)),
        };
        if it.next().is_some() {
            return Err(format!("line {}: trailing tokens", lineno + 1));
        }
        out.push(TraceEntry { seq, level, idx, op });
    }
    Ok(out)
}

/// Probabilistic encryption boundary: keystream XOR under a fresh 96-bit
/// nonce per encryption. Re-encrypting a value almost surely changes the
/// blob, and all blobs of one box have equal length, so the server learns
/// nothing from contents. The interface admits real ciphers; this default
/// keeps runs reproducible without external dependencies.
pub struct CipherBox {
    master: u64,
    plain_len: usize,
    nonce_rng: ChaCha12Rng,
}

impl CipherBox {
    pub fn new(master_seed: u64, plain_len: usize) -> Self {
        CipherBox {
            master: master_seed,
            plain_len,
            nonce_rng: ChaCha12Rng::seed_from_u64(master_seed ^ 0x5bf0_3635),
        }
    }

    pub fn blob_len(&self) -> usize {
        12 + self.plain_len
    }

    pub fn plain_len(&self) -> usize {
        self.plain_len
    }

    fn keystream_word(&self, nonce: &[u8; 12], block: usize) -> u64 {
        let lo = u64::from_le_bytes(nonce[0..8].try_into().unwrap());
        let hi = u32::from_le_bytes(nonce[8..12].try_into().unwrap()) as u64;
        mix64(self.master ^ mix64(lo ^ (hi << 17) ^ block as u64))
    }

    pub fn encrypt(&mut self, plain: &[u8]) -> Vec<u8> {
        assert_eq!(plain.len(), self.plain_len, "fixed-width plaintexts only");
        let mut nonce = [0u8; 12];
        self.nonce_rng.fill_bytes(&mut nonce);
        let mut blob = Vec::with_capacity(self.blob_len());
        blob.extend_from_slice(&nonce);
        for (i, chunk) in plain.chunks(8).enumerate() {
            let ks = self.keystream_word(&nonce, i).to_le_bytes();
            for (j, &b) in chunk.iter().enumerate() {
                blob.push(b ^ ks[j]);
            }
        }
        blob
    }

    pub fn decrypt(&self, blob: &[u8]) -> Vec<u8> {
        assert_eq!(blob.len(), self.blob_len(), "blob length mismatch");
        let nonce: [u8; 12] = blob[0..12].try_into().unwrap();
        let mut plain = Vec::with_capacity(self.plain_len);
        for (i, chunk) in blob[12..].chunks(8).enumerate() {
            let ks = self.keystream_word(&nonce, i).to_le_bytes();
            for (j, &b) in chunk.iter().enumerate() {
                plain.push(b ^ ks[j]);
            }
        }
        plain
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_roundtrip_and_trace_counts() {
        let mut s = ServerStore::new(true);
        s.install_level(3, 8, vec![0u8; 4]);
        s.write_cell(3, 5, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(s.read_cell(3, 5).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(s.trace_len(), 2);
        assert_eq!(s.read_count(), 1);
        assert_eq!(s.write_count(), 1);
        assert_eq!(s.trace().len(), 2);
    }

    #[test]
    fn out_of_range_and_missing_level() {
        let mut s = ServerStore::new(true);
        s.install_level(1, 2, vec![0u8; 1]);
        assert_eq!(s.read_cell(2, 0), Err(ServerError::NoSuchLevel(2)));
        assert!(matches!(
            s.read_cell(1, 7),
            Err(ServerError::OutOfRange { .. })
        ));
        // Failed touches are not part of the access sequence.
        assert_eq!(s.trace_len(), 0);
    }

    #[test]
    fn thousand_random_ops_trace_thousand() {
        let mut s = ServerStore::new(true);
        s.install_level(0, 64, vec![0u8; 2]);
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for i in 0..1000u64 {
            let idx = (rng.next_u32() % 64) as usize;
            if i % 2 == 0 {
                s.read_cell(0, idx).unwrap();
            } else {
                s.write_cell(0, idx, vec![i as u8; 2]).unwrap();
            }
        }
        assert_eq!(s.trace_len(), 1000);
        assert_eq!(s.per_level_counts()[&0], 1000);
    }

    #[test]
    fn export_parse_roundtrip() {
        let mut s = ServerStore::new(true);
        s.install_level(5, 4, vec![0u8; 1]);
        s.read_cell(5, 1).unwrap();
        s.write_cell(5, 3, vec![9]).unwrap();
        let text = s.export_trace();
        let parsed = parse_trace(&text).unwrap();
        assert_eq!(parsed, s.trace());
        assert_eq!(parse_trace("").unwrap(), vec![]);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_trace("1 2 3").is_err());
        assert!(parse_trace("1 2 3 X").is_err());
        assert!(parse_trace("a 2 3 R").is_err());
        assert!(parse_trace("1 2 3 R extra").is_err());
    }

    #[test]
    fn cipherbox_contract() {
        let mut cb = CipherBox::new(42, 24);
        let mut prev: Option<Vec<u8>> = None;
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let mut plain = vec![0u8; 24];
            rng.fill_bytes(&mut plain);
            let blob = cb.encrypt(&plain);
            assert_eq!(blob.len(), cb.blob_len());
            assert_eq!(cb.decrypt(&blob), plain);
            prev = Some(blob.clone());
            let blob2 = cb.encrypt(&plain);
            assert_ne!(blob2, blob, "fresh nonce must change the ciphertext");
            let _ = prev.take();
        }
    }
}

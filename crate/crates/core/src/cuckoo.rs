//! Two-table cuckoo hashing with a bounded stash.
//!
//! A stored key `x` lives at `t1[h1(x)]`, `t2[h2(x)]`, or in the stash.
//! Lookups probe exactly those `2 + s` slots whatever the outcome, so the
//! probed positions are a function of `(x, seeds)` alone. Inserts run the
//! usual eviction chain, bounded by `c0 * ceil(log2(max_keys + 2))` moves,
//! after which the displaced key drops into the stash; a full stash is the
//! caller's signal to rebuild with fresh seeds.
//!
//! The module also exposes cuckoo-graph component statistics (cells as
//! vertices, keys as edges) used by the placement feasibility arguments and
//! their empirical tests.

use crate::hash::HashPair;
use crate::LogicalKey;
use thiserror::Error;

/// Default eviction-cutoff constant; chains longer than
/// `c0 * ceil(log2(max_keys + 2))` spill to the stash.
pub const DEFAULT_C0: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CuckooError {
    #[error("stash full: rebuild with fresh seeds")]
    StashOverflow,
    #[error("key already present")]
    DuplicateKey,
    #[error("table at declared capacity")]
    CapacityExceeded,
    #[error("key not found")]
    NotFound,
    #[error("epsilon must lie strictly between 0 and 1")]
    BadEpsilon,
}

#[derive(Debug, Clone)]
pub struct CuckooTable<V> {
    t1: Vec<Option<(LogicalKey, V)>>,
    t2: Vec<Option<(LogicalKey, V)>>,
    stash: Vec<(LogicalKey, V)>,
    stash_cap: usize,
    hashes: HashPair,
    count: usize,
    max_keys: usize,
    evict_bound: usize,
}

impl<V: Clone> CuckooTable<V> {
    /// Empty table with `m` cells per sub-table and room for
    /// `floor((1 - epsilon) * m)` keys.
    pub fn new(
        m: usize,
        stash_cap: usize,
        hashes: HashPair,
        epsilon: f64,
    ) -> Result<Self, CuckooError> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(CuckooError::BadEpsilon);
        }
        assert!(m >= 1, "need at least one cell per sub-table");
        assert_eq!(hashes.range_m, m, "hash range must match table size");
        let max_keys = ((1.0 - epsilon) * m as f64).floor() as usize;
        let evict_bound = DEFAULT_C0 * ((max_keys + 2) as f64).log2().ceil() as usize;
        Ok(CuckooTable {
            t1: vec![None; m],
            t2: vec![None; m],
            stash: Vec::with_capacity(stash_cap),
            stash_cap,
            hashes,
            count: 0,
            max_keys,
            evict_bound,
        })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn max_keys(&self) -> usize {
        self.max_keys
    }

    pub fn cells_per_table(&self) -> usize {
        self.t1.len()
    }

    pub fn stash_capacity(&self) -> usize {
        self.stash_cap
    }

    pub fn stash_len(&self) -> usize {
        self.stash.len()
    }

    pub fn hashes(&self) -> HashPair {
        self.hashes
    }

    /// The two cell positions any lookup of `key` probes.
    pub fn probe_positions(&self, key: LogicalKey) -> (usize, usize) {
        (self.hashes.h1(key), self.hashes.h2(key))
    }

    /// Constant-shape lookup: both cells and every stash slot are examined
    /// with no early exit.
    pub fn lookup(&self, key: LogicalKey) -> Option<&V> {
        let (i1, i2) = self.probe_positions(key);
        let mut found = None;
        if let Some((k, v)) = &self.t1[i1] {
            if *k == key {
                found = Some(v);
            }
        }
        if let Some((k, v)) = &self.t2[i2] {
            if *k == key {
                found = Some(v);
            }
        }
        for (k, v) in &self.stash {
            if *k == key {
                found = Some(v);
            }
        }
        found
    }

    pub fn insert(&mut self, key: LogicalKey, value: V) -> Result<(), CuckooError> {
        if self.lookup(key).is_some() {
            return Err(CuckooError::DuplicateKey);
        }
        if self.count >= self.max_keys {
            return Err(CuckooError::CapacityExceeded);
        }
        let mut cur = (key, value);
        // Start at t1, alternating tables along the eviction chain.
        let mut into_t1 = true;
        for _ in 0..self.evict_bound.max(1) {
            let (slot, _other) = if into_t1 {
                (&mut self.t1[self.hashes.h1(cur.0)], ())
            } else {
                (&mut self.t2[self.hashes.h2(cur.0)], ())
            };
            match slot.replace(cur) {
                None => {
                    self.count += 1;
                    return Ok(());
                }
                Some(evicted) => {
                    cur = evicted;
                    into_t1 = !into_t1;
                }
            }
        }
        if self.stash.len() < self.stash_cap {
            self.stash.push(cur);
            self.count += 1;
            Ok(())
        } else {
            // Undo is unnecessary: the displaced chain already sits in valid
            // cells; only `cur` has no home. Put the original key's identity
            // back in play by failing loudly - the caller rebuilds anyway.
            self.stash.push(cur);
            self.count += 1;
            self.remove(key).expect("inserted key must be present");
            Err(CuckooError::StashOverflow)
        }
    }

    pub fn remove(&mut self, key: LogicalKey) -> Result<V, CuckooError> {
        let (i1, i2) = self.probe_positions(key);
        if matches!(&self.t1[i1], Some((k, _)) if *k == key) {
            let (_, v) = self.t1[i1].take().unwrap();
            self.count -= 1;
            return Ok(v);
        }
        if matches!(&self.t2[i2], Some((k, _)) if *k == key) {
            let (_, v) = self.t2[i2].take().unwrap();
            self.count -= 1;
            return Ok(v);
        }
        if let Some(pos) = self.stash.iter().position(|(k, _)| *k == key) {
            let (_, v) = self.stash.remove(pos);
            self.count -= 1;
            return Ok(v);
        }
        Err(CuckooError::NotFound)
    }

    /// All stored pairs: both sub-tables then the stash.
    pub fn iter(&self) -> impl Iterator<Item = (&LogicalKey, &V)> {
        self.t1
            .iter()
            .chain(self.t2.iter())
            .filter_map(|s| s.as_ref())
            .map(|(k, v)| (k, v))
            .chain(self.stash.iter().map(|(k, v)| (k, v)))
    }

    pub fn stash_entries(&self) -> &[(LogicalKey, V)] {
        &self.stash
    }

    /// Slot view of `t1 ++ t2` as one concatenated cell array.
    pub fn cell(&self, idx: usize) -> Option<&(LogicalKey, V)> {
        let m = self.t1.len();
        if idx < m {
            self.t1[idx].as_ref()
        } else {
            self.t2[idx - m].as_ref()
        }
    }

    /// Build directly from a concatenated cell layout plus stash entries.
    /// `cells[i]` for `i < m` populates `t1[i]`, the rest `t2[i - m]`.
    pub fn from_layout(
        cells: Vec<Option<(LogicalKey, V)>>,
        stash: Vec<(LogicalKey, V)>,
        stash_cap: usize,
        hashes: HashPair,
    ) -> Self {
        let m = hashes.range_m;
        assert_eq!(cells.len(), 2 * m, "layout must cover both sub-tables");
        assert!(stash.len() <= stash_cap);
        let mut it = cells.into_iter();
        let t1: Vec<_> = it.by_ref().take(m).collect();
        let t2: Vec<_> = it.collect();
        let count = t1.iter().chain(t2.iter()).filter(|s| s.is_some()).count() + stash.len();
        let max_keys = count.max(1);
        let evict_bound = DEFAULT_C0 * ((max_keys + 2) as f64).log2().ceil() as usize;
        CuckooTable {
            t1,
            t2,
            stash,
            stash_cap,
            hashes,
            count,
            max_keys,
            evict_bound,
        }
    }

    /// Placement validity: every stored key sits at one of its two hash
    /// cells or in the stash, and no key appears twice.
    pub fn validate_placement(&self) -> Result<(), String> {
        let mut seen = std::collections::HashSet::new();
        for (i, slot) in self.t1.iter().enumerate() {
            if let Some((k, _)) = slot {
                if self.hashes.h1(*k) != i {
                    return Err(format!("key {k} misplaced in t1[{i}]"));
                }
                if !seen.insert(*k) {
                    return Err(format!("key {k} stored twice"));
                }
            }
        }
        for (i, slot) in self.t2.iter().enumerate() {
            if let Some((k, _)) = slot {
                if self.hashes.h2(*k) != i {
                    return Err(format!("key {k} misplaced in t2[{i}]"));
                }
                if !seen.insert(*k) {
                    return Err(format!("key {k} stored twice"));
                }
            }
        }
        for (k, _) in &self.stash {
            if !seen.insert(*k) {
                return Err(format!("key {k} stored twice"));
            }
        }
        if seen.len() != self.count {
            return Err(format!(
                "count {} disagrees with stored keys {}",
                self.count,
                seen.len()
            ));
        }
        Ok(())
    }
}

/// Connected-component decomposition of the cuckoo graph: vertices are the
/// `2m` cells, each key contributes the edge `(h1(x), m + h2(x))`, parallel
/// edges included.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComponentHistogram {
    /// Edge count per component (multiset, ascending).
    pub sizes: Vec<usize>,
    /// Cyclomatic excess `edges - vertices + 1` per component (ascending,
    /// aligned with nothing - it is a multiset).
    pub excess_counts: Vec<usize>,
    /// Vertex count per component, index-aligned with `sizes` before either
    /// is sorted; kept aligned here so survival curves can weight by vertex.
    pub vertex_counts: Vec<usize>,
}

impl ComponentHistogram {
    /// Minimum stash any placement of these keys needs:
    /// `sum over components of max(0, edges - vertices)`.
    pub fn min_stash(&self) -> usize {
        self.sizes
            .iter()
            .zip(&self.vertex_counts)
            .map(|(&e, &v)| e.saturating_sub(v))
            .sum()
    }

    /// `P(|C_v| >= k)` over vertices, for k = 1..=max component edge count.
    pub fn survival_curve(&self) -> Vec<(usize, f64)> {
        let total_vertices: usize = self.vertex_counts.iter().sum();
        if total_vertices == 0 {
            return Vec::new();
        }
        let max_size = self.sizes.iter().copied().max().unwrap_or(0);
        (1..=max_size)
            .map(|k| {
                let at_least: usize = self
                    .sizes
                    .iter()
                    .zip(&self.vertex_counts)
                    .filter(|(&e, _)| e >= k)
                    .map(|(_, &v)| v)
                    .sum();
                (k, at_least as f64 / total_vertices as f64)
            })
            .collect()
    }
}

/// Exact component statistics for `keys` under `hashes`.
pub fn component_stats(keys: &[LogicalKey], hashes: &HashPair) -> ComponentHistogram {
    let m = hashes.range_m;
    let mut uf = UnionFind::new(2 * m);
    let mut touched = vec![false; 2 * m];
    for &k in keys {
        let u = hashes.h1(k);
        let w = m + hashes.h2(k);
        touched[u] = true;
        touched[w] = true;
        uf.union(u, w);
    }
    let mut edges = std::collections::HashMap::new();
    let mut verts = std::collections::HashMap::new();
    for &k in keys {
        let root = uf.find(hashes.h1(k));
        *edges.entry(root).or_insert(0usize) += 1;
    }
    for v in 0..2 * m {
        if touched[v] {
            *verts.entry(uf.find(v)).or_insert(0usize) += 1;
        }
    }
    let mut sizes = Vec::new();
    let mut vertex_counts = Vec::new();
    let mut excess_counts = Vec::new();
    let mut roots: Vec<_> = edges.keys().copied().collect();
    roots.sort_unstable();
    for root in roots {
        let e = edges[&root];
        let v = verts[&root];
        sizes.push(e);
        vertex_counts.push(v);
        excess_counts.push((e + 1).saturating_sub(v));
    }
    ComponentHistogram {
        sizes,
        excess_counts,
        vertex_counts,
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut cur = x;
        while self.parent[cur] != r {
            let next = self.parent[cur];
            self.parent[cur] = r;
            cur = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

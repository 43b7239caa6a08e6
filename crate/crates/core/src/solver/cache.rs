//! Shared transposition table from canonical component keys to game values,
//! with a plain-text file format.

use crate::graph::CanonicalKey;
use std::collections::HashMap;
use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::RwLock;
use std::time::{SystemTime, UNIX_EPOCH};
use thiserror::Error;

pub const CACHE_HEADER: &str = "slowcolor-cache v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] io::Error),
    #[error("cache line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("cache version mismatch: expected `{CACHE_HEADER}`, found `{found}`")]
    VersionMismatch { found: String },
}

/// Values of connected graphs keyed by canonical form. Lookups take a read
/// lock; inserts are idempotent, so concurrent solvers may race on the same
/// key harmlessly.
#[derive(Debug)]
pub struct SolverCache {
    map: RwLock<HashMap<CanonicalKey, u32>>,
    created_unix: u64,
}

impl Default for SolverCache {
    fn default() -> Self {
        Self::new()
    }
}

impl SolverCache {
    pub fn new() -> Self {
        let created_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        SolverCache { map: RwLock::new(HashMap::new()), created_unix }
    }

    pub fn created_unix(&self) -> u64 {
        self.created_unix
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<u32> {
        self.map.read().expect("cache lock poisoned").get(key).copied()
    }

    pub fn insert(&self, key: CanonicalKey, value: u32) {
        let mut map = self.map.write().expect("cache lock poisoned");
        let old = *map.entry(key).or_insert(value);
        debug_assert_eq!(old, value, "conflicting values for one canonical key");
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.map.write().expect("cache lock poisoned").clear();
    }

    /// All entries sorted by key.
    pub fn entries(&self) -> Vec<(CanonicalKey, u32)> {
        let mut v: Vec<_> = self
            .map
            .read()
            .expect("cache lock poisoned")
            .iter()
            .map(|(k, &v)| (k.clone(), v))
            .collect();
        v.sort();
        v
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{CACHE_HEADER}")?;
        writeln!(w, "# created {}", self.created_unix)?;
        for (k, v) in self.entries() {
            writeln!(w, "{} {v}", k.to_hex())?;
        }
        w.flush()
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self, CacheError> {
        let mut lines = r.lines();
        let header = match lines.next() {
            Some(line) => line?,
            None => return Err(CacheError::Malformed { line: 1, msg: "missing header".into() }),
        };
        let header = header.trim_end();
        if header != CACHE_HEADER {
            if header.starts_with("slowcolor-cache ") {
                return Err(CacheError::VersionMismatch { found: header.to_string() });
            }
            return Err(CacheError::Malformed { line: 1, msg: format!("bad header `{header}`") });
        }
        let mut cache = SolverCache::new();
        let map = cache.map.get_mut().expect("fresh lock");
        for (i, line) in lines.enumerate() {
            let line_no = i + 2;
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                if let Some(ts) = meta.trim().strip_prefix("created ") {
                    cache.created_unix = ts.trim().parse().map_err(|_| CacheError::Malformed {
                        line: line_no,
                        msg: "bad creation time".into(),
                    })?;
                }
                continue;
            }
            let bad = |msg: &str| CacheError::Malformed { line: line_no, msg: msg.to_string() };
            let mut parts = line.split_whitespace();
            let (Some(k), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(bad("expected `<key> <value>`"));
            };
            let key = CanonicalKey::from_hex(k).ok_or_else(|| bad("bad canonical key"))?;
            let value: u32 = v.parse().map_err(|_| bad("bad value"))?;
            if map.insert(key, value).is_some_and(|old| old != value) {
                return Err(bad("conflicting duplicate key"));
            }
        }
        Ok(cache)
    }

    /// Writes to a sibling temporary file and renames it into place, so an
    /// interrupted save never leaves a truncated cache behind.
    pub fn save(&self, path: &Path) -> Result<(), CacheError> {
        let tmp = path.with_extension("tmp");
        self.write_to(BufWriter::new(fs::File::create(&tmp)?))?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, CacheError> {
        Self::read_from(BufReader::new(fs::File::open(path)?))
    }

    /// Loads `path` if it exists, otherwise starts empty.
    pub fn load_or_new(path: &Path) -> Result<Self, CacheError> {
        if path.exists() {
            Self::load(path)
        } else {
            Ok(Self::new())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_key, non_isomorphic_graphs};

    fn sample(count: usize) -> SolverCache {
        let cache = SolverCache::new();
        let graphs = (0..=6).flat_map(non_isomorphic_graphs);
        for (i, g) in graphs.take(count).enumerate() {
            cache.insert(canonical_key(&g), i as u32);
        }
        cache
    }

    fn roundtrip(cache: &SolverCache) -> SolverCache {
        let mut buf = Vec::new();
        cache.write_to(&mut buf).unwrap();
        SolverCache::read_from(&buf[..]).unwrap()
    }

    #[test]
    fn hundred_entries_roundtrip() {
        let cache = sample(100);
        assert_eq!(cache.len(), 100);
        let back = roundtrip(&cache);
        assert_eq!(back.entries(), cache.entries());
        assert_eq!(back.created_unix(), cache.created_unix());
    }

    #[test]
    fn empty_roundtrip() {
        let back = roundtrip(&SolverCache::new());
        assert!(back.is_empty());
    }

    #[test]
    fn corrupted_line_is_named() {
        let cache = sample(5);
        let mut buf = Vec::new();
        cache.write_to(&mut buf).unwrap();
        let mut text = String::from_utf8(buf).unwrap();
        text.push_str("zz 4\n");
        match SolverCache::read_from(text.as_bytes()) {
            Err(CacheError::Malformed { line, .. }) => assert_eq!(line, 8),
            other => panic!("expected malformed, got {other:?}"),
        }
    }

    #[test]
    fn version_mismatch() {
        let err = SolverCache::read_from("slowcolor-cache v9\n".as_bytes()).unwrap_err();
        assert!(matches!(err, CacheError::VersionMismatch { .. }));
        let err = SolverCache::read_from("hello\n".as_bytes()).unwrap_err();
        assert!(matches!(err, CacheError::Malformed { line: 1, .. }));
    }

    #[test]
    fn save_and_load_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("values.cache");
        let cache = sample(20);
        cache.save(&path).unwrap();
        assert_eq!(SolverCache::load(&path).unwrap().entries(), cache.entries());
        assert!(SolverCache::load_or_new(&dir.path().join("absent")).unwrap().is_empty());
    }
}

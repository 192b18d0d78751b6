//! On-disk memo of per-block homology data.
//!
//! Each Koszul strand is stored as one JSON-lines file with one record per
//! block. Files are written whole (temporary file plus rename), so a file
//! that exists is complete.

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

/// Environment variable that overrides any configured cache directory.
pub const CACHE_DIR_ENV: &str = "BETTI_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache i/o error at {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cache record could not be encoded: {0}")]
    Encode(#[from] serde_json::Error),
}

/// One cached block: the three space dimensions around the middle term and
/// the ranks of the two differentials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub algebra: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
    pub p: u32,
    pub q: u32,
    pub bidegree: [u32; 2],
    pub weight: Vec<i32>,
    pub dims: [usize; 3],
    pub rank_in: usize,
    pub rank_out: usize,
    pub field: String,
    pub engine: String,
}

impl BlockRecord {
    pub fn homology(&self) -> usize {
        self.dims[1] - self.rank_in - self.rank_out
    }
}

/// Identifies one strand's file.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrandKey {
    /// Algebra and parameters, e.g. `segre-3-4`.
    pub algebra: String,
    pub p: u32,
    pub q: u32,
    pub field: String,
    pub engine: String,
}

impl StrandKey {
    pub fn file_name(&self) -> String {
        format!("{}-p{}-q{}-{}-{}.jsonl", self.algebra, self.p, self.q, self.field, self.engine)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CacheStats {
    pub files: usize,
    pub records: usize,
    pub bytes: u64,
}

#[derive(Debug)]
pub struct BlockCache {
    dir: PathBuf,
    memory: Mutex<HashMap<StrandKey, Arc<Vec<BlockRecord>>>>,
}

impl BlockCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into(), memory: Mutex::new(HashMap::new()) }
    }

    /// Uses `$BETTI_CACHE_DIR` if set, else `configured`; `None` means no cache.
    pub fn from_env_or(configured: Option<&Path>) -> Option<Self> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Some(Self::new(PathBuf::from(dir))),
            _ => configured.map(Self::new),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Returns the cached strand, or computes, stores and returns it.
    ///
    /// The lock is not held while computing; if two callers race on the same
    /// key, the first stored result wins and both return it.
    pub fn get_or_insert_with<E>(
        &self,
        key: &StrandKey,
        compute: impl FnOnce() -> Result<Vec<BlockRecord>, E>,
    ) -> Result<Arc<Vec<BlockRecord>>, E>
    where
        E: From<CacheError>,
    {
        if let Some(hit) = self.memory.lock().unwrap().get(key) {
            return Ok(hit.clone());
        }
        let path = self.dir.join(key.file_name());
        if let Some(records) = read_records(&path) {
            let rec = Arc::new(records);
            return Ok(self.memory.lock().unwrap().entry(key.clone()).or_insert(rec).clone());
        }
        let records = compute()?;
        write_records(&self.dir, &path, &records)?;
        let rec = Arc::new(records);
        Ok(self.memory.lock().unwrap().entry(key.clone()).or_insert(rec).clone())
    }

    /// Deletes all strand files and forgets in-memory entries. Returns the number of files removed.
    pub fn clear(&self) -> Result<usize, CacheError> {
        self.memory.lock().unwrap().clear();
        let mut removed = 0;
        for path in self.strand_files()? {
            fs::remove_file(&path).map_err(|source| CacheError::Io { path, source })?;
            removed += 1;
        }
        Ok(removed)
    }

    pub fn stats(&self) -> Result<CacheStats, CacheError> {
        let mut stats = CacheStats::default();
        for path in self.strand_files()? {
            let meta = fs::metadata(&path).map_err(|source| CacheError::Io { path: path.clone(), source })?;
            stats.files += 1;
            stats.bytes += meta.len();
            stats.records += read_records(&path).map_or(0, |r| r.len());
        }
        Ok(stats)
    }

    fn strand_files(&self) -> Result<Vec<PathBuf>, CacheError> {
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(source) => return Err(CacheError::Io { path: self.dir.clone(), source }),
        };
        let mut files: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
            .collect();
        files.sort();
        Ok(files)
    }
}

fn read_records(path: &Path) -> Option<Vec<BlockRecord>> {
    let file = fs::File::open(path).ok()?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.ok()?;
        if line.trim().is_empty() {
            continue;
        }
        // a corrupt file counts as a miss and gets rewritten
        out.push(serde_json::from_str(&line).ok()?);
    }
    Some(out)
}

fn write_records(dir: &Path, path: &Path, records: &[BlockRecord]) -> Result<(), CacheError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CacheError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = std::io::BufWriter::new(fs::File::create(&tmp).map_err(io(&tmp))?);
        for r in records {
            serde_json::to_writer(&mut f, r)?;
            f.write_all(b"\n").map_err(io(&tmp))?;
        }
        f.flush().map_err(io(&tmp))?;
    }
    fs::rename(&tmp, path).map_err(io(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(p: u32) -> BlockRecord {
        BlockRecord {
            algebra: "segre".into(),
            a: Some(1),
            b: Some(1),
            e: None,
            c: None,
            p,
            q: 1,
            bidegree: [1, 1],
            weight: vec![1, 1],
            dims: [0, 3, 2],
            rank_in: 0,
            rank_out: 2,
            field: "gf32003".into(),
            engine: "full".into(),
        }
    }

    fn key(p: u32) -> StrandKey {
        StrandKey { algebra: "segre-1-1".into(), p, q: 1, field: "gf32003".into(), engine: "full".into() }
    }

    #[test]
    fn insert_then_hit() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BlockCache::new(dir.path());
        let mut calls = 0;
        let got = cache
            .get_or_insert_with::<CacheError>(&key(1), || {
                calls += 1;
                Ok(vec![record(1)])
            })
            .unwrap();
        assert_eq!(got[0].homology(), 1);
        let fresh = BlockCache::new(dir.path());
        let again = fresh
            .get_or_insert_with::<CacheError>(&key(1), || panic!("should be cached"))
            .unwrap();
        assert_eq!(*again, vec![record(1)]);
        assert_eq!(calls, 1);
        let stats = fresh.stats().unwrap();
        assert_eq!((stats.files, stats.records), (1, 1));
        assert_eq!(fresh.clear().unwrap(), 1);
        assert_eq!(fresh.stats().unwrap().files, 0);
    }

    #[test]
    fn corrupt_file_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(key(2).file_name()), "{not json\n").unwrap();
        let cache = BlockCache::new(dir.path());
        let got = cache.get_or_insert_with::<CacheError>(&key(2), || Ok(vec![record(2)])).unwrap();
        assert_eq!(got.len(), 1);
    }
}

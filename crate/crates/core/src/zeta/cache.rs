//! Persistent value cache: one JSON object per line.
//!
//! Records carry the high word of the double-double value as a shortest
//! round-trip decimal string plus the low word, so a value read back is
//! bit-identical to the one written. Unparseable lines and records from
//! another format version are reported, never skipped.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};
use crate::index::Index;
use crate::real::RealValue;

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_FILE: &str = "zeta-cache.jsonl";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaCacheEntry {
    pub index: Index,
    pub variant: String,
    pub value: String,
    pub value_lo: f64,
    pub error: f64,
    pub algo: String,
    pub version: u32,
}

impl ZetaCacheEntry {
    pub fn new(index: Index, variant: &str, value: &RealValue, algo: &str) -> Self {
        let (hi, lo) = value.words();
        ZetaCacheEntry {
            index,
            variant: variant.to_string(),
            value: format!("{hi:?}"),
            value_lo: lo,
            error: value.error(),
            algo: algo.to_string(),
            version: CACHE_VERSION,
        }
    }

    pub fn real_value(&self) -> Option<RealValue> {
        let hi: f64 = self.value.parse().ok()?;
        RealValue::from_words(hi, self.value_lo, self.error)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub path: String,
    pub entries: usize,
    pub bytes: u64,
}

/// Cache directory: `MZV_CACHE_DIR`, else `$HOME/.cache/mzv`, else `.mzv-cache`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os("MZV_CACHE_DIR") {
        return PathBuf::from(dir);
    }
    if let Some(home) = std::env::var_os("HOME") {
        return Path::new(&home).join(".cache").join("mzv");
    }
    PathBuf::from(".mzv-cache")
}

type Key = (Index, String);

pub struct ZetaCache {
    path: PathBuf,
    entries: RwLock<HashMap<Key, ZetaCacheEntry>>,
    writer: Mutex<()>,
}

impl ZetaCache {
    /// Open (or lazily create) the cache in `dir`.
    pub fn open(dir: &Path) -> Result<Self> {
        let path = dir.join(CACHE_FILE);
        let mut entries = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for (n, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let corrupt = |reason: String| MzvError::CacheCorrupt {
                    path: path.display().to_string(),
                    line: n + 1,
                    reason,
                };
                let raw: serde_json::Value =
                    serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
                let version = raw.get("version").and_then(serde_json::Value::as_u64);
                match version {
                    Some(v) if v == CACHE_VERSION as u64 => {}
                    Some(v) => {
                        return Err(MzvError::CacheVersion {
                            found: v as u32,
                            expected: CACHE_VERSION,
                        })
                    }
                    None => return Err(corrupt("missing version".into())),
                }
                let entry: ZetaCacheEntry =
                    serde_json::from_value(raw).map_err(|e| corrupt(e.to_string()))?;
                if entry.real_value().is_none() {
                    return Err(corrupt(format!("bad value `{}`", entry.value)));
                }
                entries.insert((entry.index.clone(), entry.variant.clone()), entry);
            }
        }
        Ok(ZetaCache {
            path,
            entries: RwLock::new(entries),
            writer: Mutex::new(()),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, index: &Index, variant: &str) -> Option<ZetaCacheEntry> {
        self.entries
            .read()
            .expect("cache lock")
            .get(&(index.clone(), variant.to_string()))
            .cloned()
    }

    /// Append a record. Later records for the same key win on reload.
    pub fn put(&self, entry: ZetaCacheEntry) -> Result<()> {
        let line = serde_json::to_string(&entry)?;
        {
            let _guard = self.writer.lock().expect("cache writer lock");
            if let Some(parent) = self.path.parent() {
                fs::create_dir_all(parent)?;
            }
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&self.path)?;
            writeln!(f, "{line}")?;
        }
        self.entries
            .write()
            .expect("cache lock")
            .insert((entry.index.clone(), entry.variant.clone()), entry);
        Ok(())
    }

    pub fn stats(&self) -> Result<CacheStats> {
        let bytes = match fs::metadata(&self.path) {
            Ok(m) => m.len(),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => 0,
            Err(e) => return Err(e.into()),
        };
        Ok(CacheStats {
            path: self.path.display().to_string(),
            entries: self.entries.read().expect("cache lock").len(),
            bytes,
        })
    }
}

/// Remove the cache file in `dir`; returns whether one existed.
pub fn clear_cache(dir: &Path) -> Result<bool> {
    let path = dir.join(CACHE_FILE);
    match fs::remove_file(&path) {
        Ok(()) => Ok(true),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(false),
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::ring::CoefficientRing;

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let idx: Index = "2".parse().unwrap();
        let v = RealValue::from_rational(&rat(5, 3)).with_extra_error(3.25e-31);
        {
            let cache = ZetaCache::open(dir.path()).unwrap();
            assert!(cache.get(&idx, "plain").is_none());
            cache
                .put(ZetaCacheEntry::new(idx.clone(), "plain", &v, "holder"))
                .unwrap();
        }
        let cache = ZetaCache::open(dir.path()).unwrap();
        let e = cache.get(&idx, "plain").unwrap();
        assert_eq!(e.real_value().unwrap(), v);
        assert_eq!(e.value, format!("{:?}", v.words().0));
        assert_eq!(cache.stats().unwrap().entries, 1);
    }

    #[test]
    fn corruption_and_version_are_reported() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(CACHE_FILE), "{not json\n").unwrap();
        assert!(matches!(
            ZetaCache::open(dir.path()),
            Err(MzvError::CacheCorrupt { line: 1, .. })
        ));

        let v = RealValue::one();
        let mut e = ZetaCacheEntry::new("3".parse().unwrap(), "plain", &v, "holder");
        e.version = 99;
        fs::write(
            dir.path().join(CACHE_FILE),
            serde_json::to_string(&e).unwrap() + "\n",
        )
        .unwrap();
        assert!(matches!(
            ZetaCache::open(dir.path()),
            Err(MzvError::CacheVersion {
                found: 99,
                expected: CACHE_VERSION
            })
        ));

        assert!(clear_cache(dir.path()).unwrap());
        assert!(!clear_cache(dir.path()).unwrap());
        assert!(ZetaCache::open(dir.path()).is_ok());
    }
}

//! On-disk cache of computed sequences.
//!
//! Each entry is one JSON file holding its key, the payload as a string
//! and the SHA-256 of that string. Writes go to a temporary file in the
//! same directory and are renamed into place, so concurrent runs sharing a
//! directory only ever see complete entries. Entries whose checksum does
//! not match are treated as missing.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub const CACHE_ENV: &str = "APERYLAB_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    /// What is stored, e.g. `seqpair`.
    pub kind: String,
    /// Variety label or `N`.
    pub subject: String,
    pub n_max: usize,
}

impl CacheKey {
    pub fn new(kind: &str, subject: &str, n_max: usize) -> Self {
        CacheKey {
            kind: kind.to_string(),
            subject: subject.to_string(),
            n_max,
        }
    }

    fn stem(&self) -> String {
        format!("{}-{}-", sanitize(&self.kind), sanitize(&self.subject))
    }

    fn file_name(&self) -> String {
        format!("{}{}.json", self.stem(), self.n_max)
    }
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: CacheKey,
    pub payload: String,
    pub checksum: String,
}

impl CacheEntry {
    pub fn new(key: CacheKey, payload: String) -> Self {
        let checksum = checksum(&payload);
        CacheEntry {
            key,
            payload,
            checksum,
        }
    }

    pub fn is_valid(&self) -> bool {
        checksum(&self.payload) == self.checksum
    }
}

pub fn checksum(payload: &str) -> String {
    hex::encode(Sha256::digest(payload.as_bytes()))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        Ok(Cache { dir })
    }

    /// The directory from `--cache-dir`, else from `APERYLAB_CACHE_DIR`.
    pub fn from_config(dir: Option<&Path>) -> Result<Option<Self>> {
        match dir {
            Some(d) => Cache::open(d).map(Some),
            None => match std::env::var_os(CACHE_ENV) {
                Some(d) if !d.is_empty() => Cache::open(PathBuf::from(d)).map(Some),
                _ => Ok(None),
            },
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn read_entry(&self, path: &Path, key: &CacheKey) -> Option<CacheEntry> {
        let text = fs::read_to_string(path).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == *key && entry.is_valid()).then_some(entry)
    }

    fn decode<T: DeserializeOwned>(entry: &CacheEntry) -> Option<T> {
        serde_json::from_str(&entry.payload).ok()
    }

    pub fn get<T: DeserializeOwned>(&self, key: &CacheKey) -> Option<T> {
        let entry = self.read_entry(&self.dir.join(key.file_name()), key)?;
        Cache::decode(&entry)
    }

    /// The smallest valid entry of the same kind and subject with at least
    /// `key.n_max` terms, with its length.
    pub fn get_at_least<T: DeserializeOwned>(&self, key: &CacheKey) -> Option<(usize, T)> {
        let stem = key.stem();
        let mut lengths: Vec<usize> = fs::read_dir(&self.dir)
            .ok()?
            .filter_map(|e| {
                let name = e.ok()?.file_name().into_string().ok()?;
                name.strip_prefix(&stem)?
                    .strip_suffix(".json")?
                    .parse::<usize>()
                    .ok()
            })
            .filter(|&n| n >= key.n_max)
            .collect();
        lengths.sort_unstable();
        lengths.into_iter().find_map(|n| {
            let k = CacheKey {
                n_max: n,
                ..key.clone()
            };
            self.get(&k).map(|v| (n, v))
        })
    }

    pub fn put<T: Serialize>(&self, key: &CacheKey, value: &T) -> Result<()> {
        let entry = CacheEntry::new(key.clone(), serde_json::to_string(value)?);
        let text = serde_json::to_string(&entry)?;
        let target = self.dir.join(key.file_name());
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            key.file_name(),
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, text).map_err(|e| CliError::io(&tmp, e))?;
        fs::rename(&tmp, &target).map_err(|e| {
            let _ = fs::remove_file(&tmp);
            CliError::io(&target, e)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checksum_is_sha256_hex() {
        assert_eq!(
            checksum("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn tampered_entry_is_rejected() {
        let e = CacheEntry::new(CacheKey::new("x", "y", 3), "[1,2]".into());
        assert!(e.is_valid());
        let bad = CacheEntry {
            payload: "[1,3]".into(),
            ..e
        };
        assert!(!bad.is_valid());
    }

    #[test]
    fn concurrent_writers_leave_one_valid_entry() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = CacheKey::new("seqpair", "V12", 7);
        std::thread::scope(|s| {
            for t in 0..8u32 {
                let (cache, key) = (&cache, &key);
                s.spawn(move || {
                    for _ in 0..20 {
                        cache.put(key, &vec![t; 64]).unwrap();
                    }
                });
            }
        });
        let v: Vec<u32> = cache.get(&key).unwrap();
        assert!(v.len() == 64 && v.iter().all(|&x| x == v[0]));
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn longer_prefixes_serve_shorter_requests() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        cache.put(&CacheKey::new("s", "V10", 30), &30u32).unwrap();
        cache.put(&CacheKey::new("s", "V10", 50), &50u32).unwrap();
        cache.put(&CacheKey::new("s", "V100", 40), &0u32).unwrap();
        let hit = cache.get_at_least::<u32>(&CacheKey::new("s", "V10", 35));
        assert_eq!(hit, Some((50, 50)));
        assert_eq!(
            cache.get_at_least::<u32>(&CacheKey::new("s", "V10", 51)),
            None
        );
    }
}

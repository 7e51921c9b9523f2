//! On-disk cache for canonical basis elements.
//!
//! The format is JSON lines: a header record carrying the format version,
//! the root system label and the record count, then one record per cached
//! canonical basis element. A count that does not match the number of
//! records means a truncated or hand-edited file and is rejected rather
//! than silently partially loaded. Records identify group elements by their
//! canonical reduced words, so files are portable across runs and stay
//! byte-identical under load/save round trips (all orderings in this crate
//! are deterministic).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CacheHeader {
    pub version: u32,
    pub label: String,
    pub records: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CacheTerm {
    /// Canonical reduced word of the standard basis element.
    pub x: Vec<usize>,
    /// Laurent coefficient as (exponent, coefficient) pairs, ascending.
    pub c: Vec<(i32, i64)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CacheEntry {
    /// "H" for the Hecke algebra, "N" for the antispherical module.
    pub basis: String,
    pub w: Vec<usize>,
    pub terms: Vec<CacheTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheFile {
    pub label: String,
    pub entries: Vec<CacheEntry>,
}

impl CacheFile {
    pub fn new(label: &str, entries: Vec<CacheEntry>) -> CacheFile {
        CacheFile {
            label: label.to_string(),
            entries,
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let header = CacheHeader {
            version: CACHE_VERSION,
            label: self.label.clone(),
            records: self.entries.len(),
        };
        let mut body = serde_json::to_string(&header)
            .map_err(|e| Error::Cache(format!("serialize: {e}")))?;
        for entry in &self.entries {
            body.push('\n');
            body.push_str(
                &serde_json::to_string(entry)
                    .map_err(|e| Error::Cache(format!("serialize: {e}")))?,
            );
        }
        body.push('\n');
        fs::write(path, body)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<CacheFile> {
        let body = fs::read_to_string(path)?;
        let mut lines = body.lines().filter(|l| !l.trim().is_empty());
        let first = lines
            .next()
            .ok_or_else(|| Error::Cache("empty cache file".to_string()))?;
        let header: CacheHeader =
            serde_json::from_str(first).map_err(|e| Error::Cache(format!("header: {e}")))?;
        if header.version != CACHE_VERSION {
            return Err(Error::Cache(format!(
                "unsupported cache version {}",
                header.version
            )));
        }
        let entries = lines
            .map(|l| serde_json::from_str(l).map_err(|e| Error::Cache(format!("record: {e}"))))
            .collect::<Result<Vec<CacheEntry>>>()?;
        if header.records != entries.len() {
            return Err(Error::Cache(format!(
                "record count {} does not match {} records (truncated file?)",
                header.records,
                entries.len()
            )));
        }
        Ok(CacheFile {
            label: header.label,
            entries,
        })
    }
}

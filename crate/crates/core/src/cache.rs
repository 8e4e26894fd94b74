//! On-disk cache of computed constants.
//!
//! One CSV file, `constants.csv`, with header
//! `kind,k,q,P,value,vanished,reducible,schema_version`. Rows are matched on
//! `(kind, k, q, P, schema_version)` exactly; rows from other schema versions
//! are ignored. Each new row goes out in a single append.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;
pub const CACHE_FILE: &str = "constants.csv";
pub const CACHE_HEADER: &str = "kind,k,q,P,value,vanished,reducible,schema_version";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstantKind {
    /// Hardy–Littlewood `C_{2r}`.
    #[serde(rename = "hl")]
    HardyLittlewood,
    #[serde(rename = "gamma")]
    Gamma,
    /// Adjusted pair constant `C^k_{2r}`.
    #[serde(rename = "C")]
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub kind: ConstantKind,
    pub k: u32,
    pub q: i64,
    pub bound: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CachedValue {
    pub value: f64,
    pub vanished: bool,
    pub reducible: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    kind: ConstantKind,
    k: u32,
    q: i64,
    #[serde(rename = "P")]
    bound: u64,
    value: f64,
    vanished: bool,
    reducible: bool,
    schema_version: u32,
}

#[derive(Debug)]
pub struct ConstantCache {
    path: PathBuf,
    entries: RwLock<HashMap<CacheKey, CachedValue>>,
    append: Mutex<()>,
}

impl ConstantCache {
    /// Opens (creating if needed) the cache in `dir` and loads its rows.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        let path = dir.join(CACHE_FILE);
        let mut entries = HashMap::new();
        let fresh = !path.exists() || fs::metadata(&path)?.len() == 0;
        if fresh {
            fs::write(&path, format!("{CACHE_HEADER}\n"))?;
        } else {
            let mut reader = csv::Reader::from_path(&path)?;
            for row in reader.deserialize::<Row>() {
                // torn or foreign rows are skipped, not fatal
                let Ok(row) = row else { continue };
                if row.schema_version != SCHEMA_VERSION {
                    continue;
                }
                entries.insert(
                    CacheKey { kind: row.kind, k: row.k, q: row.q, bound: row.bound },
                    CachedValue { value: row.value, vanished: row.vanished, reducible: row.reducible },
                );
            }
        }
        Ok(ConstantCache { path, entries: RwLock::new(entries), append: Mutex::new(()) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &CacheKey) -> Option<CachedValue> {
        self.entries.read().unwrap().get(key).copied()
    }

    /// Records a value; already-present keys are left alone.
    pub fn insert(&self, key: CacheKey, value: CachedValue) -> Result<()> {
        let _guard = self.append.lock().unwrap();
        if self.entries.read().unwrap().contains_key(&key) {
            return Ok(());
        }
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.serialize(Row {
            kind: key.kind,
            k: key.k,
            q: key.q,
            bound: key.bound,
            value: value.value,
            vanished: value.vanished,
            reducible: value.reducible,
            schema_version: SCHEMA_VERSION,
        })?;
        let line = w.into_inner().map_err(|e| e.into_error())?;
        let mut file = OpenOptions::new().append(true).open(&self.path)?;
        file.write_all(&line)?;
        self.entries.write().unwrap().insert(key, value);
        Ok(())
    }
}

//! On-disk cache of rendered results.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::model::Levels;

/// Part of every cache key, so that algorithm changes invalidate old entries.
pub const ENGINE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "/graded-completion-1");

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

/// A directory of results keyed by a content hash of the complex, the
/// levels, the kind of computation and [`ENGINE_VERSION`].
///
/// Entries are written to a temporary file and renamed into place, so a
/// reader never sees a partial entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(ResultCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hex SHA-256 key. `kind` should name the computation and every option
    /// that affects its output.
    pub fn key(complex: &SimplicialComplex, levels: &Levels, kind: &str) -> String {
        Self::key_for(&[&complex.to_json(), &format!("{:?}", levels.as_slice()), kind])
    }

    /// Key for a computation with no single input complex, such as a table.
    pub fn key_for(parts: &[&str]) -> String {
        let mut h = Sha256::new();
        for part in std::iter::once(&ENGINE_VERSION).chain(parts) {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.out"))
    }

    pub fn get(&self, key: &str) -> Result<Option<String>> {
        match fs::read_to_string(self.path(key)) {
            Ok(s) => Ok(Some(s)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    pub fn put(&self, key: &str, value: &str) -> Result<()> {
        let tmp = self.dir.join(format!(
            ".{key}.{}.{}.tmp",
            std::process::id(),
            TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(value.as_bytes())?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, self.path(key))?;
        Ok(())
    }

    /// The cached value for `key`, or the result of `compute`, stored first.
    pub fn get_or_insert_with<F>(&self, key: &str, compute: F) -> Result<String>
    where
        F: FnOnce() -> Result<String>,
    {
        if let Some(s) = self.get(key)? {
            return Ok(s);
        }
        let s = compute()?;
        self.put(key, &s)?;
        Ok(s)
    }
}

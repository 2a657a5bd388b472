//! Analysis records cached on disk, keyed by a hash of the group file.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use gds_core::{analyze, AnalysisRecord, PermutationGroup, SCHEMA_VERSION};
use sha2::{Digest, Sha256};

use crate::corpus::GroupFile;

pub const CACHE_ENV: &str = "GDS_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// `$GDS_CACHE_DIR`, or `gds-cache` under the system temp directory.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("gds-cache"));
        Cache { dir: Some(dir) }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn key(file: &GroupFile) -> String {
        let mut h = Sha256::new();
        h.update(SCHEMA_VERSION.to_le_bytes());
        h.update(file.to_json().as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, file: &GroupFile) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", Self::key(file))))
    }

    pub fn get(&self, file: &GroupFile) -> Option<AnalysisRecord> {
        let text = fs::read_to_string(self.path(file)?).ok()?;
        serde_json::from_str::<AnalysisRecord>(&text)
            .ok()
            .filter(|r| r.schema_version == SCHEMA_VERSION && r.name == file.name)
    }

    pub fn put(&self, file: &GroupFile, record: &AnalysisRecord) -> Result<()> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(file)) else {
            return Ok(());
        };
        fs::create_dir_all(dir).with_context(|| format!("cannot create cache directory {}", dir.display()))?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(record)?)?;
        fs::rename(&tmp, &path).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(())
    }

    /// Cached record, or a fresh analysis that is then stored.
    pub fn analyze(&self, file: &GroupFile, group: &PermutationGroup) -> Result<AnalysisRecord> {
        if let Some(r) = self.get(file) {
            return Ok(r);
        }
        let record = analyze(group).with_context(|| format!("analysing {}", file.name))?;
        self.put(file, &record)?;
        Ok(record)
    }
}

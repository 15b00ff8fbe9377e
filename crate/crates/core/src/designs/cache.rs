//! On-disk JSON cache of generated designs.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::{validate_design, BlockDesign};
use crate::error::Result;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "GROOMING_DESIGN_CACHE";

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    #[serde(rename = "type")]
    kind: String,
    points: usize,
    groups: Vec<Vec<usize>>,
    blocks: Vec<Vec<usize>>,
    construction_name: String,
}

/// Directory of cached designs keyed by a canonical type string.
///
/// Writes are serialized within a process and land atomically via rename.
/// Entries that fail validation on load are rebuilt.
#[derive(Clone, Debug)]
pub struct DesignCache {
    dir: PathBuf,
    write_lock: Arc<Mutex<()>>,
}

impl DesignCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DesignCache { dir: dir.into(), write_lock: Arc::new(Mutex::new(())) }
    }

    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, key: &str) -> PathBuf {
        let name: String = key.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
        self.dir.join(format!("{name}.json"))
    }

    pub fn load(&self, key: &str) -> Option<BlockDesign> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        if entry.kind != key {
            return None;
        }
        let block_size = entry.blocks.first().map_or(0, Vec::len);
        let design = BlockDesign::new(entry.points, entry.groups, entry.blocks, block_size, entry.construction_name);
        validate_design(&design).ok()?;
        Some(design)
    }

    pub fn store(&self, key: &str, design: &BlockDesign) -> Result<()> {
        let entry = CacheEntry {
            kind: key.to_string(),
            points: design.points(),
            groups: design.groups().to_vec(),
            blocks: design.blocks().to_vec(),
            construction_name: design.construction().to_string(),
        };
        let _guard = self.write_lock.lock().unwrap_or_else(|e| e.into_inner());
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(key);
        let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn get_or_build(&self, key: &str, build: impl FnOnce() -> Result<BlockDesign>) -> Result<BlockDesign> {
        if let Some(d) = self.load(key) {
            return Ok(d);
        }
        let design = build()?;
        self.store(key, &design)?;
        Ok(design)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::steiner_triple_system;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DesignCache::new(dir.path());
        let sts = steiner_triple_system(9).unwrap();
        let got = cache.get_or_build("sts 9", || Ok(sts.clone())).unwrap();
        assert_eq!(got, sts);
        assert_eq!(cache.load("sts 9"), Some(sts.clone()));
        fs::write(cache.path_for("sts 9"), "{\"type\":\"sts 9\",\"points\":9,\"groups\":[],\"blocks\":[],\"construction_name\":\"x\"}").unwrap();
        assert_eq!(cache.load("sts 9"), None);
        let rebuilt = cache.get_or_build("sts 9", || Ok(sts.clone())).unwrap();
        assert_eq!(rebuilt, sts);
    }
}

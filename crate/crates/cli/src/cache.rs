//! Content-addressed store for character tables.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bumped whenever the quotient computation changes its output.
pub const ALGORITHM_VERSION: &str = "quotient-v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedCharacter {
    pub version: String,
    pub depth: usize,
    /// `(α-content, multiplicity)` for every nonzero weight space.
    pub entries: Vec<(Vec<usize>, usize)>,
}

pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: PathBuf) -> Self {
        Cache { root }
    }

    pub fn key(algebra_json: &str, weight: &str) -> String {
        let mut h = Sha256::new();
        h.update(ALGORITHM_VERSION.as_bytes());
        h.update([0]);
        h.update(algebra_json.as_bytes());
        h.update([0]);
        h.update(weight.as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.root.join(format!("character-{key}.json"))
    }

    /// A cached table covering at least `depth`, truncated to `depth`.
    pub fn load(&self, key: &str, depth: usize) -> Option<Vec<(Vec<usize>, usize)>> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: CachedCharacter = serde_json::from_str(&text).ok()?;
        if entry.version != ALGORITHM_VERSION || entry.depth < depth {
            return None;
        }
        Some(entry.entries.into_iter().filter(|(c, _)| c.iter().sum::<usize>() <= depth).collect())
    }

    /// Writes through a temporary file so readers never see a partial entry.
    pub fn store(&self, key: &str, depth: usize, entries: &[(Vec<usize>, usize)]) -> std::io::Result<()> {
        fs::create_dir_all(&self.root)?;
        let entry = CachedCharacter { version: ALGORITHM_VERSION.to_string(), depth, entries: entries.to_vec() };
        let path = self.path(key);
        let tmp = tmp_path(&path);
        fs::write(&tmp, serde_json::to_string(&entry).expect("cache entry serializes"))?;
        fs::rename(tmp, path)
    }
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().expect("file name").to_os_string();
    name.push(format!(".{}.tmp", std::process::id()));
    path.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_truncation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().to_path_buf());
        let key = Cache::key("{}", "[1]");
        assert!(cache.load(&key, 1).is_none());
        let entries = vec![(vec![0, 0], 1), (vec![1, 0], 1), (vec![1, 1], 2)];
        cache.store(&key, 2, &entries).unwrap();
        assert_eq!(cache.load(&key, 2).unwrap(), entries);
        assert_eq!(cache.load(&key, 1).unwrap(), entries[..2].to_vec());
        assert!(cache.load(&key, 3).is_none());
        assert_ne!(key, Cache::key("{}", "[2]"));
    }
}

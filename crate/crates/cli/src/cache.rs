//! One JSON document per key under the cache directory. Writes go through a
//! temporary file and a rename, so readers never see a partial entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::{CliError, SCHEMA};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub command: String,
    pub class: String,
    pub size: u64,
    pub statistic: String,
    pub schema: String,
}

impl CacheKey {
    pub fn new(command: &str, class: &str, size: u64, statistic: &str) -> Self {
        Self {
            command: command.into(),
            class: class.into(),
            size,
            statistic: statistic.into(),
            schema: SCHEMA.into(),
        }
    }

    pub fn file_name(&self) -> String {
        let schema = self.schema.replace('/', "-");
        format!(
            "{}_{}_{}_{}_{}.json",
            self.command, self.class, self.size, self.statistic, schema
        )
    }
}

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    key: CacheKey,
    value: T,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn open(dir: Option<&Path>) -> Result<Self, CliError> {
        let Some(dir) = dir else {
            return Ok(Self::disabled());
        };
        fs::create_dir_all(dir).map_err(|e| CliError::Cache(format!("{}: {e}", dir.display())))?;
        Ok(Self {
            dir: Some(dir.to_path_buf()),
        })
    }

    pub fn path(&self, key: &CacheKey) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(key.file_name()))
    }

    /// Stored value for `key`. Unreadable or mismatched entries count as misses.
    pub fn get<T: DeserializeOwned>(&self, key: &CacheKey) -> Option<T> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        let entry: Entry<T> = serde_json::from_str(&text).ok()?;
        (entry.key == *key).then_some(entry.value)
    }

    pub fn put<T: Serialize>(&self, key: &CacheKey, value: &T) -> Result<(), CliError> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(key)) else {
            return Ok(());
        };
        let err = |e: &dyn std::fmt::Display| CliError::Cache(format!("{}: {e}", path.display()));
        let entry = Entry {
            key: key.clone(),
            value,
        };
        let text = serde_json::to_string_pretty(&entry).map_err(|e| err(&e))?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| err(&e))?;
        tmp.write_all(text.as_bytes()).map_err(|e| err(&e))?;
        tmp.persist(&path).map_err(|e| err(&e.error))?;
        Ok(())
    }

    pub fn get_or_compute<T, F>(&self, key: &CacheKey, compute: F) -> Result<T, CliError>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T, CliError>,
    {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = compute()?;
        self.put(key, &v)?;
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_key_check() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(Some(dir.path())).unwrap();
        let key = CacheKey::new("refine", "asm", 4, "first-column");
        assert_eq!(cache.get::<Vec<String>>(&key), None);
        cache.put(&key, &vec!["7".to_string()]).unwrap();
        assert_eq!(cache.get::<Vec<String>>(&key), Some(vec!["7".to_string()]));

        // an entry copied under another key's file name is a miss
        let other = CacheKey::new("refine", "asm", 5, "first-column");
        fs::copy(cache.path(&key).unwrap(), cache.path(&other).unwrap()).unwrap();
        assert_eq!(cache.get::<Vec<String>>(&other), None);
    }

    #[test]
    fn corrupt_entry_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(Some(dir.path())).unwrap();
        let key = CacheKey::new("table", "vsasm", 2, "none");
        fs::write(cache.path(&key).unwrap(), "{ not json").unwrap();
        let v: u32 = cache.get_or_compute(&key, || Ok(3)).unwrap();
        assert_eq!(v, 3);
        assert_eq!(cache.get::<u32>(&key), Some(3));
    }

    #[test]
    fn disabled_cache_always_computes() {
        let cache = Cache::disabled();
        let key = CacheKey::new("enumerate", "asm", 3, "none");
        cache.put(&key, &1u32).unwrap();
        assert_eq!(cache.get::<u32>(&key), None);
    }
}

//! On-disk cache of enumeration results, guarded by a SHA-256 checksum.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use alcove::permissibility::EnumerationResult;

#[derive(Serialize, Deserialize)]
struct Entry {
    checksum: String,
    payload: String,
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub struct DiskCache {
    dir: PathBuf,
}

/// Outcome of a lookup.
#[derive(Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit(EnumerationResult),
    Miss,
    /// The entry existed but failed its checksum or did not parse.
    Corrupt,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", digest(key)))
    }

    pub fn get(&self, key: &str) -> Lookup {
        let Ok(text) = fs::read_to_string(self.path(key)) else {
            return Lookup::Miss;
        };
        let Ok(entry) = serde_json::from_str::<Entry>(&text) else {
            return Lookup::Corrupt;
        };
        if digest(&entry.payload) != entry.checksum {
            return Lookup::Corrupt;
        }
        match serde_json::from_str(&entry.payload) {
            Ok(r) => Lookup::Hit(r),
            Err(_) => Lookup::Corrupt,
        }
    }

    pub fn put(&self, key: &str, result: &EnumerationResult) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let payload = serde_json::to_string(result).map_err(std::io::Error::other)?;
        let entry = Entry { checksum: digest(&payload), payload };
        let tmp = self.path(key).with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&entry).map_err(std::io::Error::other)?)?;
        fs::rename(tmp, self.path(key))
    }

    /// Remove every cache entry; returns how many were deleted.
    pub fn clear(&self) -> std::io::Result<usize> {
        let Ok(rd) = fs::read_dir(&self.dir) else {
            return Ok(0);
        };
        let mut n = 0;
        for e in rd {
            let p = e?.path();
            if p.extension().is_some_and(|x| x == "json" || x == "tmp") {
                fs::remove_file(p)?;
                n += 1;
            }
        }
        Ok(n)
    }
}

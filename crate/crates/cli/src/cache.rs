//! Content-addressed result cache. Each entry is a sha256 line followed by
//! the JSON body; a bad checksum means the entry is ignored.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

fn sha_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// What a lookup found.
#[derive(Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit(String),
    Miss,
    Corrupt,
}

impl Cache {
    pub fn new(dir: &Path) -> std::io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    /// File name for `(kind, params, code version)`.
    pub fn key(kind: &str, params: &str, version: &str) -> String {
        sha_hex(format!("{kind}\n{params}\n{version}").as_bytes())
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Lookup {
        let Ok(text) = std::fs::read_to_string(self.path(key)) else {
            return Lookup::Miss;
        };
        let Some((sum, body)) = text.split_once('\n') else {
            return Lookup::Corrupt;
        };
        if sha_hex(body.as_bytes()) == sum {
            Lookup::Hit(body.to_string())
        } else {
            Lookup::Corrupt
        }
    }

    /// Writes to a temporary file in the same directory, then renames.
    pub fn put(&self, key: &str, body: &str) -> std::io::Result<()> {
        let n = TMP_COUNTER.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!(".{key}.{}.{n}.tmp", std::process::id()));
        std::fs::write(&tmp, format!("{}\n{body}", sha_hex(body.as_bytes())))?;
        std::fs::rename(&tmp, self.path(key))
    }
}

//! Result cache: one JSON file per key, with a SHA-256 checksum of the
//! stored outcome. Unreadable, mismatched or corrupted entries are misses.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::report::Outcome;

/// Bumped whenever stored results could change meaning.
pub const ARTIFACT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    artifact_version: u32,
    outcome: Outcome,
    checksum: String,
}

fn checksum(outcome: &Outcome) -> String {
    let body = serde_json::to_string(outcome).expect("outcome serializes");
    hex::encode(Sha256::digest(body.as_bytes()))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Cache { dir: dir.to_path_buf() }
    }

    fn path(&self, key: &str) -> PathBuf {
        let name: String =
            key.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect();
        self.dir.join(format!("{name}.json"))
    }

    pub fn load(&self, key: &str) -> Option<Outcome> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        let valid = entry.key == key
            && entry.artifact_version == ARTIFACT_VERSION
            && entry.checksum == checksum(&entry.outcome);
        valid.then_some(entry.outcome)
    }

    /// Stores an outcome. Failures to write are ignored: the cache is an
    /// optimization only.
    pub fn store(&self, key: &str, outcome: &Outcome) {
        let entry = Entry {
            key: key.to_string(),
            artifact_version: ARTIFACT_VERSION,
            outcome: outcome.clone(),
            checksum: checksum(outcome),
        };
        if fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let tmp = self.path(key).with_extension("json.tmp");
        let body = serde_json::to_string_pretty(&entry).expect("entry serializes");
        if fs::write(&tmp, body).is_ok() {
            let _ = fs::rename(&tmp, self.path(key));
        }
    }
}

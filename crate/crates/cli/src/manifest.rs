//! Run manifests: what was run, on which bytes, with which settings.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliResult;
use crate::output::write_atomic;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub command: String,
    pub input_digests: Vec<InputDigest>,
    pub config: BTreeMap<String, String>,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input_digests: Vec::new(),
            config: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed: None,
        }
    }

    /// Records an input once, keyed by the path as given.
    pub fn add_input(&mut self, path: &str, bytes: &[u8]) {
        if self.input_digests.iter().any(|d| d.path == path) {
            return;
        }
        self.input_digests.push(InputDigest {
            path: path.to_string(),
            sha256: sha256_hex(bytes),
        });
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.config.insert(key.to_string(), value.to_string());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        write_atomic(path, self.to_json().as_bytes())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Where the manifest goes: next to `-o`, inside `--out-dir`, or in the
/// working directory.
pub fn manifest_path(
    explicit: Option<&Path>,
    output: Option<&Path>,
    out_dir: Option<&Path>,
) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    if let Some(o) = output {
        let mut name = o.as_os_str().to_owned();
        name.push(".manifest.json");
        return PathBuf::from(name);
    }
    match out_dir {
        Some(d) => d.join("run_manifest.json"),
        None => PathBuf::from("run_manifest.json"),
    }
}

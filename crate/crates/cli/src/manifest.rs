//! Run manifests: what a run read, wrote and printed, with content hashes,
//! so that a seeded run can be replayed and compared byte for byte.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Arguments after the program name.
    pub argv: Vec<String>,
    pub seed: Option<u64>,
    pub version: String,
    pub threads: Option<usize>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub stdout_sha256: String,
    pub exit_code: u8,
    pub wall_time_ms: u128,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// File traffic of one run.
#[derive(Debug, Default)]
pub struct Session {
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub seed: Option<u64>,
}

impl Session {
    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
        self.inputs.push(FileDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
        });
        String::from_utf8(bytes).map_err(|_| CliError::Usage(format!("{}: not valid UTF-8", path.display())))
    }

    /// Reads and parses a file, attaching the path to parse errors.
    pub fn load<T>(&mut self, path: &Path, parse: fn(&str) -> orl_core::Result<T>) -> Result<T, CliError> {
        let text = self.read(path)?;
        parse(&text).map_err(|e| CliError::in_file(path, e))
    }

    pub fn write(&mut self, path: &Path, content: &str) -> Result<(), CliError> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
        fs::write(path, content).map_err(|e| CliError::io(path, e))?;
        self.outputs.push(FileDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(content.as_bytes()),
        });
        Ok(())
    }

    pub fn first_output(&self) -> Option<PathBuf> {
        self.outputs.first().map(|d| PathBuf::from(&d.path))
    }
}

/// `<first output>.manifest.json`.
pub fn default_manifest_path(first_output: &Path) -> PathBuf {
    let mut name = first_output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

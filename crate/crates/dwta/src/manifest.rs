//! Run manifests. Every command that writes a file also writes
//! `<output>.manifest.json` recording its arguments, parameters and the
//! SHA-256 of each input and output, so the run can be replayed.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: PathBuf,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        Ok(Self {
            path: path.to_path_buf(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Command-line arguments after the program name.
    pub args: Vec<String>,
    pub params: serde_json::Value,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

impl RunManifest {
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    pub fn write_for(&self, output: &Path) -> Result<PathBuf> {
        let path = Self::path_for(output);
        let text = serde_json::to_string_pretty(self)? + "\n";
        fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Fails if any recorded input changed since the manifest was written.
    pub fn verify_inputs(&self) -> Result<()> {
        for input in &self.inputs {
            let now = FileDigest::of(&input.path)?;
            if now.sha256 != input.sha256 {
                return Err(Error::Invalid(format!(
                    "input {} changed since the manifest was written",
                    input.path.display()
                )));
            }
        }
        Ok(())
    }

    /// The recorded arguments, with the `--output` value replaced when
    /// `output` is given.
    pub fn replay_args(&self, output: Option<&Path>) -> Vec<String> {
        let Some(output) = output else {
            return self.args.clone();
        };
        let out = output.display().to_string();
        let mut args = Vec::with_capacity(self.args.len());
        let mut iter = self.args.iter();
        while let Some(a) = iter.next() {
            if a == "--output" {
                args.push(a.clone());
                iter.next();
                args.push(out.clone());
            } else if a.starts_with("--output=") {
                args.push(format!("--output={out}"));
            } else {
                args.push(a.clone());
            }
        }
        args
    }
}

//! Permutation fixtures: one line per hash, K space-separated 1-based
//! indices. Used to pin the samples instead of drawing them.

use std::fs;
use std::path::Path;

use dwta_core::{IndexSample, SampleSet};

use crate::error::{Error, Result};

pub fn parse(text: &str, dim: usize, path: &Path) -> Result<SampleSet> {
    let mut samples = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse {
            path: path.to_path_buf(),
            line: n + 1,
            msg,
        };
        let indices = line
            .split_whitespace()
            .map(|f| {
                f.parse::<usize>()
                    .map_err(|_| err(format!("bad index {f:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        samples.push(IndexSample::new(dim, indices).map_err(|e| err(e.to_string()))?);
    }
    Ok(SampleSet::from_samples(samples)?)
}

pub fn read(path: &Path, dim: usize) -> Result<SampleSet> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse(&text, dim, path)
}

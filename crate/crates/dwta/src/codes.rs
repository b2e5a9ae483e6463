//! Code files.
//!
//! CSV: one code vector per row, comma-separated unsigned integers.
//!
//! Binary: `b"DWTA"`, version `u8`, `n_hashes` as `u32`, range `R` (0 when
//! unreduced) as `u32`, then the codes row-major as `u32`; all integers
//! little-endian. The row count follows from the file length.

use std::fs;
use std::path::Path;

use dwta_core::CodeVector;

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"DWTA";
pub const VERSION: u8 = 1;
const HEADER_LEN: usize = 4 + 1 + 4 + 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeFormat {
    Csv,
    Binary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFile {
    pub n_hashes: usize,
    pub range: Option<u32>,
    pub rows: Vec<CodeVector>,
}

impl CodeFile {
    pub fn new(n_hashes: usize, range: Option<u32>, rows: Vec<CodeVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != n_hashes) {
            return Err(Error::Invalid(format!(
                "row has {} codes, expected {n_hashes}",
                bad.len()
            )));
        }
        Ok(Self {
            n_hashes,
            range,
            rows,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.rows.len() * self.n_hashes * 3);
        for row in &self.rows {
            let mut first = true;
            for v in row.values() {
                if !first {
                    out.push(',');
                }
                first = false;
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn to_binary(&self) -> Result<Vec<u8>> {
        let n = u32::try_from(self.n_hashes)
            .map_err(|_| Error::Invalid("too many hashes for the binary format".into()))?;
        let mut out = Vec::with_capacity(HEADER_LEN + 4 * self.rows.len() * self.n_hashes);
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&n.to_le_bytes());
        out.extend_from_slice(&self.range.unwrap_or(0).to_le_bytes());
        for row in &self.rows {
            for v in row.values() {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
        Ok(out)
    }

    pub fn encode(&self, format: CodeFormat) -> Result<Vec<u8>> {
        match format {
            CodeFormat::Csv => Ok(self.to_csv().into_bytes()),
            CodeFormat::Binary => self.to_binary(),
        }
    }

    pub fn parse_csv(text: &str, range: Option<u32>, path: &Path) -> Result<Self> {
        let mut rows = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let values = line
                .split(',')
                .map(|f| f.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    path: path.to_path_buf(),
                    line: n + 1,
                    msg: e.to_string(),
                })?;
            rows.push(CodeVector::new(values));
        }
        let n_hashes = rows.first().map_or(0, CodeVector::len);
        Self::new(n_hashes, range, rows)
    }

    pub fn parse_binary(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
            return Err(Error::Invalid("not a DWTA code file".into()));
        }
        if bytes[4] != VERSION {
            return Err(Error::Invalid(format!(
                "unsupported code file version {}",
                bytes[4]
            )));
        }
        let word = |at: usize| u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap());
        let n_hashes = word(5) as usize;
        let range = match word(9) {
            0 => None,
            r => Some(r),
        };
        let payload = &bytes[HEADER_LEN..];
        if n_hashes == 0 {
            if !payload.is_empty() {
                return Err(Error::Invalid("payload present with zero hashes".into()));
            }
            return Self::new(0, range, Vec::new());
        }
        if !payload.len().is_multiple_of(4 * n_hashes) {
            return Err(Error::Invalid(format!(
                "payload of {} bytes is not a whole number of {n_hashes}-code rows",
                payload.len()
            )));
        }
        let rows = payload
            .chunks_exact(4 * n_hashes)
            .map(|row| {
                CodeVector::new(
                    row.chunks_exact(4)
                        .map(|w| u32::from_le_bytes(w.try_into().unwrap()))
                        .collect(),
                )
            })
            .collect();
        Self::new(n_hashes, range, rows)
    }

    /// Reads either format, recognizing the binary one by its magic bytes.
    pub fn read(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        if bytes.starts_with(MAGIC) {
            Self::parse_binary(&bytes)
        } else {
            let text = String::from_utf8(bytes)
                .map_err(|_| Error::Invalid(format!("{}: not UTF-8 CSV", path.display())))?;
            Self::parse_csv(&text, None, path)
        }
    }

    pub fn write(&self, path: &Path, format: CodeFormat) -> Result<()> {
        fs::write(path, self.encode(format)?).map_err(|e| Error::io(path, e))
    }
}

/// Labels file: one integer per line.
pub fn read_labels(path: &Path) -> Result<Vec<i64>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            l.trim().parse().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line: n + 1,
                msg: format!("bad label {l:?}"),
            })
        })
        .collect()
}

pub fn render_labels(labels: &[i64]) -> String {
    labels.iter().map(|l| format!("{l}\n")).collect()
}

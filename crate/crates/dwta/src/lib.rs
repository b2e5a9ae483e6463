//! File formats and command-line tooling around `dwta-core`.
//!
//! * [`libsvm`]: sparse dataset reader/writer;
//! * [`codes`]: code files (CSV and the little-endian `DWTA` binary layout);
//! * [`fixture`]: explicit permutation fixtures;
//! * [`report`]: JSON/CSV renderings of kernel reports, stats and PR curves;
//! * [`manifest`]: run manifests written next to every output;
//! * [`cli`]: the `dwta` command.

pub mod cli;
pub mod codes;
pub mod error;
pub mod fixture;
pub mod libsvm;
pub mod manifest;
pub mod report;

pub use error::{Error, Result};

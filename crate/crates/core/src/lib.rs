//! Winner-take-all (WTA) and densified WTA (DWTA) hashing for sparse vectors.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`sparse`]: sparse vectors, datasets, the sparsity statistic and the
//!   analytic probability that a K-sample is empty;
//! * [`permute`]: seeded, counter-based partial Fisher-Yates samples;
//! * [`wta`]: vanilla WTA with explicit empty detection;
//! * [`densify`]: cyclic-right densification and mod-R range reduction;
//! * [`kernel`]: empirical collision estimates and exact kernels by
//!   enumeration over rationals;
//! * [`features`]: one-hot random kernel features;
//! * [`index`]: Hamming ranking and precision/recall evaluation;
//! * [`synth`]: planted-cluster sparse datasets.
//!
//! File formats, the command line and anything touching the OS live in the
//! companion `dwta` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod densify;
pub mod error;
pub mod features;
pub mod index;
pub mod kernel;
pub mod permute;
pub mod sparse;
pub mod synth;
pub mod wta;

pub use densify::{densify, dwta_codes, range_reduce, CodeVector, DensifyParams};
pub use error::{Error, Result};
pub use features::{to_features, FeatureVector};
pub use index::{hamming, precision_recall, query_topk, CodeIndex, IndexMetadata, PrCurve};
pub use kernel::{
    estimate_collision, exact_dwta_collision, exact_kernels, kendall_check, KernelReport,
};
pub use permute::{gather, sample_indices, IndexSample, SampleScheme, SampleSet};
pub use sparse::{empty_sample_probability, sparsity, Dataset, SparseVector, ValueMode};
pub use synth::{generate, SynthConfig, ValueDistribution};
pub use wta::{empty_ratio, vanilla_codes, wta_hash_vector, wta_raw, RawCode, RawCodeVector};

//! Seeded K-attribute samples: the first K positions of a uniform random
//! permutation of `[1, dim]`, one independent permutation per hash index.
//!
//! Samples come from a counter-based generator keyed on
//! `(seed, hash_index, step)`, so any hash can be produced without
//! generating the ones before it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sparse::SparseVector;

/// Configuration of a family of K-samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SampleScheme {
    dim: usize,
    k: usize,
    n_hashes: usize,
    seed: u64,
}

impl SampleScheme {
    pub fn new(dim: usize, k: usize, n_hashes: usize, seed: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if k == 0 || k > dim {
            return Err(Error::InvalidArgs(format!(
                "K must be in [1, {dim}], got {k}"
            )));
        }
        if n_hashes == 0 {
            return Err(Error::InvalidArgs("n_hashes must be positive".into()));
        }
        Ok(Self {
            dim,
            k,
            n_hashes,
            seed,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_hashes(&self) -> usize {
        self.n_hashes
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// K distinct 1-based attribute indices in sample order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSample {
    dim: usize,
    indices: Vec<usize>,
}

impl IndexSample {
    /// Validates an explicit sample, e.g. one read from a fixture file.
    pub fn new(dim: usize, indices: Vec<usize>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if indices.is_empty() || indices.len() > dim {
            return Err(Error::InvalidArgs(format!(
                "sample length must be in [1, {dim}], got {}",
                indices.len()
            )));
        }
        for (j, &index) in indices.iter().enumerate() {
            if index == 0 || index > dim {
                return Err(Error::IndexOutOfRange { index, dim });
            }
            if indices[..j].contains(&index) {
                return Err(Error::DuplicateIndex(index));
            }
        }
        Ok(Self { dim, indices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stateless 64-bit draw for the given key and counters.
#[inline]
pub(crate) fn keyed_u64(seed: u64, stream: u64, step: u64, attempt: u64) -> u64 {
    let mut h = mix64(seed.wrapping_add(GOLDEN));
    h = mix64(
        h ^ stream
            .wrapping_mul(0xd6e8_feb8_6659_fd93)
            .wrapping_add(GOLDEN),
    );
    h = mix64(
        h ^ step
            .wrapping_mul(0xa076_1d64_78bd_642f)
            .wrapping_add(GOLDEN),
    );
    mix64(
        h ^ attempt
            .wrapping_mul(0xe703_7ed1_a0b4_28db)
            .wrapping_add(GOLDEN),
    )
}

/// Uniform draw from `[0, bound)` (Lemire's multiply-shift with rejection;
/// rejected draws advance the `attempt` counter).
pub(crate) fn keyed_below(seed: u64, stream: u64, step: u64, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let threshold = bound.wrapping_neg() % bound;
    let mut attempt = 0;
    loop {
        let m = u128::from(keyed_u64(seed, stream, step, attempt)) * u128::from(bound);
        if (m as u64) >= threshold {
            return (m >> 64) as u64;
        }
        attempt += 1;
    }
}

/// First `k` entries of a partial Fisher-Yates shuffle of `[1, dim]`.
/// Only the touched slots are materialized, so cost is O(k log k)
/// independent of `dim`.
pub(crate) fn partial_shuffle(
    dim: usize,
    k: usize,
    mut draw_below: impl FnMut(u64, u64) -> u64,
) -> Vec<usize> {
    let mut displaced: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out = Vec::with_capacity(k);
    for step in 0..k {
        let r = step + draw_below(step as u64, (dim - step) as u64) as usize;
        let at_r = displaced.get(&r).copied().unwrap_or(r);
        let at_step = displaced.get(&step).copied().unwrap_or(step);
        displaced.insert(r, at_step);
        out.push(at_r + 1);
    }
    out
}

/// The K-sample used by hash `hash_index` (1-based).
pub fn sample_indices(scheme: &SampleScheme, hash_index: usize) -> Result<IndexSample> {
    if hash_index == 0 || hash_index > scheme.n_hashes {
        return Err(Error::HashIndexOutOfRange {
            index: hash_index,
            n_hashes: scheme.n_hashes,
        });
    }
    let indices = partial_shuffle(scheme.dim, scheme.k, |step, bound| {
        keyed_below(scheme.seed, hash_index as u64, step, bound)
    });
    Ok(IndexSample {
        dim: scheme.dim,
        indices,
    })
}

/// Values of `x` at the sampled attributes, in sample order.
pub fn gather(x: &SparseVector, s: &IndexSample) -> Result<Vec<f64>> {
    if x.dim() != s.dim {
        return Err(Error::DimensionMismatch {
            expected: s.dim,
            actual: x.dim(),
        });
    }
    Ok(s.indices.iter().map(|&i| x.get(i)).collect())
}

/// Same result as [`gather`], computed by walking the nonzeros of `x` and
/// testing membership in the sample. Cheaper when `nnz` is small.
pub fn gather_by_support(x: &SparseVector, s: &IndexSample) -> Result<Vec<f64>> {
    if x.dim() != s.dim {
        return Err(Error::DimensionMismatch {
            expected: s.dim,
            actual: x.dim(),
        });
    }
    let mut out = alloc::vec![0.0; s.k()];
    for &(i, v) in x.entries() {
        if let Some(pos) = s.indices.iter().position(|&j| j == i) {
            out[pos] = v;
        }
    }
    Ok(out)
}

/// An explicit, ordered list of samples sharing one dimension and K.
///
/// Either generated from a [`SampleScheme`] or supplied directly (fixture
/// permutations).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    dim: usize,
    k: usize,
    samples: Vec<IndexSample>,
}

impl SampleSet {
    pub fn generate(scheme: &SampleScheme) -> Self {
        let samples = (1..=scheme.n_hashes)
            .map(|i| sample_indices(scheme, i).expect("hash index within range"))
            .collect();
        Self {
            dim: scheme.dim,
            k: scheme.k,
            samples,
        }
    }

    pub fn from_samples(samples: Vec<IndexSample>) -> Result<Self> {
        let first = samples.first().ok_or(Error::EmptyInput)?;
        let (dim, k) = (first.dim(), first.k());
        for s in &samples {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: s.dim(),
                });
            }
            if s.k() != k {
                return Err(Error::WrongLength {
                    expected: k,
                    actual: s.k(),
                });
            }
        }
        Ok(Self { dim, k, samples })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_hashes(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[IndexSample] {
        &self.samples
    }
}

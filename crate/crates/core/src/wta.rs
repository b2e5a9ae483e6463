//! Vanilla winner-take-all hashing.

use alloc::vec::Vec;

use crate::densify::CodeVector;
use crate::error::{Error, Result};
use crate::permute::{gather, sample_indices, SampleScheme, SampleSet};
use crate::sparse::SparseVector;

/// Outcome of one WTA hash before any empty-sample handling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RawCode {
    /// 1-based position of the maximum within the K-sample.
    Argmax(u32),
    /// Every sampled value was zero.
    Empty,
}

impl RawCode {
    pub fn is_empty(self) -> bool {
        matches!(self, RawCode::Empty)
    }

    pub fn argmax(self) -> Option<u32> {
        match self {
            RawCode::Argmax(p) => Some(p),
            RawCode::Empty => None,
        }
    }
}

/// Raw outcomes of all hashes for one vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawCodeVector {
    pub codes: Vec<RawCode>,
}

impl RawCodeVector {
    pub fn new(codes: Vec<RawCode>) -> Self {
        Self { codes }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn empty_count(&self) -> usize {
        self.codes.iter().filter(|c| c.is_empty()).count()
    }

    pub fn all_empty(&self) -> bool {
        self.codes.iter().all(|c| c.is_empty())
    }
}

/// WTA on one gathered sample: the position of the maximum, earliest
/// position on ties, or `Empty` when every value is zero.
pub fn wta_raw(values: &[f64], k: usize) -> Result<RawCode> {
    if values.len() != k || k == 0 {
        return Err(Error::WrongLength {
            expected: k,
            actual: values.len(),
        });
    }
    if values.iter().all(|&v| v == 0.0) {
        return Ok(RawCode::Empty);
    }
    let mut best = 0;
    for (j, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = j;
        }
    }
    Ok(RawCode::Argmax(best as u32 + 1))
}

/// Hashes `x` with every sample of `scheme`, generating samples on the fly.
pub fn wta_hash_vector(x: &SparseVector, scheme: &SampleScheme) -> Result<RawCodeVector> {
    if x.dim() != scheme.dim() {
        return Err(Error::DimensionMismatch {
            expected: scheme.dim(),
            actual: x.dim(),
        });
    }
    let codes = (1..=scheme.n_hashes())
        .map(|i| {
            let s = sample_indices(scheme, i)?;
            wta_raw(&gather(x, &s)?, scheme.k())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RawCodeVector { codes })
}

/// Hashes `x` with a precomputed (or fixture) sample set.
pub fn wta_hash_with(x: &SparseVector, samples: &SampleSet) -> Result<RawCodeVector> {
    if x.dim() != samples.dim() {
        return Err(Error::DimensionMismatch {
            expected: samples.dim(),
            actual: x.dim(),
        });
    }
    let codes = samples
        .samples()
        .iter()
        .map(|s| wta_raw(&gather(x, s)?, samples.k()))
        .collect::<Result<Vec<_>>>()?;
    Ok(RawCodeVector { codes })
}

/// Vanilla coding: empty samples become 1.
pub fn vanilla_codes(rc: &RawCodeVector) -> CodeVector {
    CodeVector::new(rc.codes.iter().map(|c| c.argmax().unwrap_or(1)).collect())
}

/// Fraction of empty outcomes across all codes of all vectors.
pub fn empty_ratio(rcs: &[RawCodeVector]) -> Result<f64> {
    let total: usize = rcs.iter().map(RawCodeVector::len).sum();
    if total == 0 {
        return Err(Error::EmptyInput);
    }
    let empty: usize = rcs.iter().map(RawCodeVector::empty_count).sum();
    Ok(empty as f64 / total as f64)
}

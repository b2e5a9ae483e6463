//! One-hot random kernel features built from code vectors.
//!
//! Hash `i` owns the block `[i*R, (i+1)*R)` and activates `i*R + code`, so the
//! inner product of two feature vectors counts colliding hash positions.

use alloc::vec::Vec;

use crate::densify::{range_reduce, CodeVector};

/// Binary sparse vector with exactly one active (0-based) index per hash.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FeatureVector {
    dim: usize,
    active: Vec<usize>,
}

impl FeatureVector {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Active 0-based indices, ascending.
    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn l0(&self) -> usize {
        self.active.len()
    }

    /// Inner product with another feature vector.
    pub fn dot(&self, other: &Self) -> usize {
        let (mut i, mut j, mut hits) = (0, 0, 0);
        while i < self.active.len() && j < other.active.len() {
            match self.active[i].cmp(&other.active[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    hits += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        hits
    }
}

/// Encodes `cv` as one-hot blocks of width `r`. Values `>= r` are reduced
/// modulo `r` first.
pub fn to_features(cv: &CodeVector, r: u32) -> FeatureVector {
    assert!(r >= 2, "range must be at least 2");
    let reduced;
    let cv = if cv.values().iter().any(|&v| v >= r) {
        reduced = range_reduce(cv, r);
        &reduced
    } else {
        cv
    };
    let width = r as usize;
    FeatureVector {
        dim: cv.len() * width,
        active: cv
            .values()
            .iter()
            .enumerate()
            .map(|(i, &v)| i * width + v as usize)
            .collect(),
    }
}

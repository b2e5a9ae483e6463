//! Sparse vectors, datasets and the sparsity statistics that drive the
//! empty-sample behaviour of WTA hashing.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Which values a [`SparseVector`] may hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValueMode {
    /// All stored values are strictly positive. An all-zero K-sample is then
    /// exactly a sample whose maximum is zero.
    #[default]
    Strict,
    /// Negative values are accepted. A sample is empty iff none of its
    /// indices is in the support.
    Permissive,
}

/// A vector over `dim` attributes stored as `(index, value)` pairs with
/// 1-based indices in strictly ascending order. Absent indices are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    dim: usize,
    entries: Vec<(usize, f64)>,
}

impl SparseVector {
    /// Builds a vector in [`ValueMode::Strict`].
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        Self::with_mode(dim, entries, ValueMode::Strict)
    }

    /// Builds a vector, sorting the entries and dropping explicit zeros.
    pub fn with_mode(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, f64)>,
        mode: ValueMode,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut entries: Vec<(usize, f64)> = entries.into_iter().collect();
        for &(index, value) in &entries {
            if index == 0 || index > dim {
                return Err(Error::IndexOutOfRange { index, dim });
            }
            if !value.is_finite() {
                return Err(Error::NonFiniteValue(index));
            }
        }
        entries.sort_by_key(|&(index, _)| index);
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateIndex(w[0].0));
        }
        entries.retain(|&(_, value)| value != 0.0);
        if mode == ValueMode::Strict {
            if let Some(&(index, value)) = entries.iter().find(|&&(_, v)| v < 0.0) {
                return Err(Error::NegativeValueInStrictMode { index, value });
            }
        }
        Ok(Self { dim, entries })
    }

    /// Builds a vector from a dense slice; position `j` becomes index `j + 1`.
    pub fn from_dense(values: &[f64]) -> Result<Self> {
        Self::from_dense_with_mode(values, ValueMode::Strict)
    }

    pub fn from_dense_with_mode(values: &[f64], mode: ValueMode) -> Result<Self> {
        Self::with_mode(
            values.len(),
            values.iter().enumerate().map(|(j, &v)| (j + 1, v)),
            mode,
        )
    }

    /// The all-zero vector.
    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(dim, [])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when every stored value is non-negative, i.e. the vector would
    /// also be accepted in strict mode.
    pub fn is_strict(&self) -> bool {
        self.entries.iter().all(|&(_, v)| v > 0.0)
    }

    /// Value at a 1-based index, zero when absent or out of range.
    pub fn get(&self, index: usize) -> f64 {
        match self.entries.binary_search_by_key(&index, |&(i, _)| i) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0.0,
        }
    }

    /// Dense copy of the vector.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.dim];
        for &(i, v) in &self.entries {
            out[i - 1] = v;
        }
        out
    }

    /// The same vector embedded in `dim + extra` dimensions; the new
    /// attributes are zero.
    pub fn pad_zeros(&self, extra: usize) -> Self {
        Self {
            dim: self.dim + extra,
            entries: self.entries.clone(),
        }
    }
}

/// A collection of vectors sharing one dimension, with optional labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    dim: usize,
    vectors: Vec<SparseVector>,
    labels: Option<Vec<i64>>,
}

impl Dataset {
    pub fn new(dim: usize, vectors: Vec<SparseVector>, labels: Option<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: v.dim(),
            });
        }
        if let Some(labels) = &labels {
            if labels.len() != vectors.len() {
                return Err(Error::LengthMismatch {
                    left: vectors.len(),
                    right: labels.len(),
                });
            }
        }
        Ok(Self {
            dim,
            vectors,
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[SparseVector] {
        &self.vectors
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    pub fn total_nnz(&self) -> usize {
        self.vectors.iter().map(SparseVector::nnz).sum()
    }

    pub fn into_parts(self) -> (usize, Vec<SparseVector>, Option<Vec<i64>>) {
        (self.dim, self.vectors, self.labels)
    }
}

/// Fraction of zero cells in the `n x d` data matrix.
pub fn sparsity(ds: &Dataset) -> Result<f64> {
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let cells = ds.len() as f64 * ds.dim() as f64;
    let zeros = cells - ds.total_nnz() as f64;
    Ok(zeros / cells)
}

/// Probability that a uniformly random K-subset of `dim` attributes misses
/// all `nnz` nonzeros: `C(dim - nnz, K) / C(dim, K)`.
pub fn empty_sample_probability(nnz: usize, dim: usize, k: usize) -> Result<f64> {
    if k == 0 || k > dim || nnz > dim {
        return Err(Error::InvalidArgs(format!(
            "need 0 <= nnz <= dim and 1 <= K <= dim (nnz={nnz}, dim={dim}, K={k})"
        )));
    }
    let zeros = dim - nnz;
    if zeros < k {
        return Ok(0.0);
    }
    // C(z, K) / C(d, K) = prod_{j<K} (z - j) / (d - j)
    Ok((0..k).fold(1.0, |p, j| p * (zeros - j) as f64 / (dim - j) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn choose(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
    }

    #[test]
    fn four_attribute_vector() {
        let x = SparseVector::new(4, [(1, 10.0), (2, 12.0), (3, 9.0), (4, 23.0)]).unwrap();
        assert_eq!(x.to_dense(), vec![10.0, 12.0, 9.0, 23.0]);
    }

    #[test]
    fn worked_second_vector_and_empty_vector() {
        let x = SparseVector::new(9, [(3, 1.0)]).unwrap();
        assert_eq!(x.to_dense(), vec![0., 0., 1., 0., 0., 0., 0., 0., 0.]);
        let z = SparseVector::new(5, []).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.dim(), 5);
    }

    #[test]
    fn construction_sorts_and_drops_zeros() {
        let x = SparseVector::new(6, [(5, 2.0), (2, 0.0), (1, 3.0)]).unwrap();
        assert_eq!(x.entries(), &[(1, 3.0), (5, 2.0)]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            SparseVector::new(3, [(4, 1.0)]),
            Err(Error::IndexOutOfRange { index: 4, dim: 3 })
        );
        assert_eq!(
            SparseVector::new(3, [(0, 1.0)]),
            Err(Error::IndexOutOfRange { index: 0, dim: 3 })
        );
        assert_eq!(
            SparseVector::new(3, [(2, 1.0), (2, 5.0)]),
            Err(Error::DuplicateIndex(2))
        );
        assert!(matches!(
            SparseVector::new(3, [(2, -1.0)]),
            Err(Error::NegativeValueInStrictMode { index: 2, .. })
        ));
        assert!(SparseVector::with_mode(3, [(2, -1.0)], ValueMode::Permissive).is_ok());
        assert_eq!(SparseVector::new(0, []), Err(Error::ZeroDimension));
    }

    #[test]
    fn sparsity_examples() {
        let zero = Dataset::new(7, vec![SparseVector::zeros(7).unwrap()], None).unwrap();
        assert_eq!(sparsity(&zero).unwrap(), 1.0);
        let dense = Dataset::new(
            3,
            vec![SparseVector::from_dense(&[1.0, 2.0, 3.0]).unwrap()],
            None,
        )
        .unwrap();
        assert_eq!(sparsity(&dense).unwrap(), 0.0);
        let x1 = SparseVector::from_dense(&[0., 0., 5., 0., 0., 7., 6., 0., 0.]).unwrap();
        let x2 = SparseVector::from_dense(&[0., 0., 1., 0., 0., 0., 0., 0., 0.]).unwrap();
        let worked = Dataset::new(9, vec![x1, x2], None).unwrap();
        assert_eq!(sparsity(&worked).unwrap(), 14.0 / 18.0);
        let empty = Dataset::new(3, vec![], None).unwrap();
        assert_eq!(sparsity(&empty), Err(Error::EmptyDataset));
    }

    #[test]
    fn dataset_validation() {
        let v = SparseVector::zeros(3).unwrap();
        assert!(matches!(
            Dataset::new(4, vec![v.clone()], None),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            Dataset::new(3, vec![v], Some(vec![1, 2])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    /// Counts the K-subsets of [1, dim] that avoid a given support.
    fn enumerate_empty_subsets(support: &[usize], dim: usize, k: usize) -> (u64, u64) {
        let mut empty = 0;
        let mut total = 0;
        for mask in 0u32..(1 << dim) {
            if mask.count_ones() as usize != k {
                continue;
            }
            total += 1;
            if support.iter().all(|&i| mask & (1 << (i - 1)) == 0) {
                empty += 1;
            }
        }
        (empty, total)
    }

    #[test]
    fn empty_probability_matches_subset_enumeration_on_worked_pair() {
        // x1 = (0,0,5,0,0,7,6,0,0), x2 = (0,0,1,0,0,0,0,0,0)
        assert_eq!(enumerate_empty_subsets(&[3, 6, 7], 9, 3), (20, 84));
        assert_eq!(enumerate_empty_subsets(&[3], 9, 3), (56, 84));
        let p1 = empty_sample_probability(3, 9, 3).unwrap();
        let p2 = empty_sample_probability(1, 9, 3).unwrap();
        assert!((p1 - 20.0 / 84.0).abs() < 1e-15);
        assert!((p2 - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn empty_probability_matches_binomials() {
        for dim in 1..=12u64 {
            for k in 1..=dim {
                for nnz in 0..=dim {
                    let want = choose(dim - nnz, k) as f64 / choose(dim, k) as f64;
                    let got =
                        empty_sample_probability(nnz as usize, dim as usize, k as usize).unwrap();
                    assert!((got - want).abs() < 1e-12, "d={dim} k={k} z={nnz}");
                }
            }
        }
    }

    #[test]
    fn empty_probability_edge_cases() {
        assert_eq!(empty_sample_probability(0, 50, 4).unwrap(), 1.0);
        assert_eq!(empty_sample_probability(50, 50, 1).unwrap(), 0.0);
        assert!(empty_sample_probability(0, 5, 0).is_err());
        assert!(empty_sample_probability(0, 5, 6).is_err());
        assert!(empty_sample_probability(6, 5, 2).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn empty_probability_monotone(dim in 1usize..200, k in 1usize..8, nnz in 0usize..200) {
                prop_assume!(k <= dim && nnz < dim);
                let p = empty_sample_probability(nnz, dim, k).unwrap();
                let p_more = empty_sample_probability(nnz + 1, dim, k).unwrap();
                prop_assert!(p_more <= p);
                if k < dim {
                    let p_k = empty_sample_probability(nnz, dim, k + 1).unwrap();
                    prop_assert!(p_k <= p + 1e-15);
                }
            }

            #[test]
            fn sparsity_invariant_under_reordering(
                rows in proptest::collection::vec(proptest::collection::btree_set(1usize..=20, 0..20), 1..8),
                shift in 0usize..20,
            ) {
                let make = |rows: &[std::collections::BTreeSet<usize>], shift: usize| {
                    let vs = rows.iter().map(|s| {
                        SparseVector::new(20, s.iter().map(|&i| ((i - 1 + shift) % 20 + 1, 1.0))).unwrap()
                    }).collect::<Vec<_>>();
                    Dataset::new(20, vs, None).unwrap()
                };
                let base = sparsity(&make(&rows, 0)).unwrap();
                let mut rev = rows.clone();
                rev.reverse();
                prop_assert_eq!(base, sparsity(&make(&rev, 0)).unwrap());
                prop_assert_eq!(base, sparsity(&make(&rows, shift)).unwrap());
            }
        }
    }
}

//! Hamming ranking over code vectors and precision/recall evaluation.

use alloc::string::String;
use alloc::vec::Vec;

use crate::densify::CodeVector;
use crate::error::{Error, Result};

/// Describes how the indexed codes were produced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexMetadata {
    pub scheme_fingerprint: String,
    pub densified: bool,
    pub range: Option<u32>,
}

/// Immutable collection of equal-length code vectors with labels.
#[derive(Debug, Clone)]
pub struct CodeIndex {
    codes: Vec<CodeVector>,
    labels: Vec<i64>,
    metadata: IndexMetadata,
    code_len: usize,
}

impl CodeIndex {
    pub fn build(
        codes: Vec<CodeVector>,
        labels: Vec<i64>,
        metadata: IndexMetadata,
    ) -> Result<Self> {
        if codes.is_empty() {
            return Err(Error::EmptyIndex);
        }
        if codes.len() != labels.len() {
            return Err(Error::LengthMismatch {
                left: codes.len(),
                right: labels.len(),
            });
        }
        let code_len = codes[0].len();
        if codes.iter().any(|c| c.len() != code_len) {
            return Err(Error::InconsistentCodeLength);
        }
        Ok(Self {
            codes,
            labels,
            metadata,
            code_len,
        })
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn code_len(&self) -> usize {
        self.code_len
    }

    pub fn codes(&self) -> &[CodeVector] {
        &self.codes
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn metadata(&self) -> &IndexMetadata {
        &self.metadata
    }
}

/// Number of positions at which the codes differ.
pub fn hamming(c1: &CodeVector, c2: &CodeVector) -> Result<usize> {
    if c1.len() != c2.len() {
        return Err(Error::LengthMismatch {
            left: c1.len(),
            right: c2.len(),
        });
    }
    Ok(hamming_unchecked(c1.values(), c2.values()))
}

#[inline]
fn hamming_unchecked(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// The `k` nearest codes as `(id, distance)`, ascending by distance and then
/// by id.
pub fn query_topk(index: &CodeIndex, q: &CodeVector, k: usize) -> Result<Vec<(usize, usize)>> {
    if q.len() != index.code_len {
        return Err(Error::LengthMismatch {
            left: index.code_len,
            right: q.len(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidArgs("k must be at least 1".into()));
    }
    let mut ranked: Vec<(usize, usize)> = index
        .codes
        .iter()
        .enumerate()
        .map(|(id, c)| (id, hamming_unchecked(c.values(), q.values())))
        .collect();
    let key = |&(id, d): &(usize, usize)| (d, id);
    if k < ranked.len() {
        ranked.select_nth_unstable_by_key(k - 1, key);
        ranked.truncate(k);
    }
    ranked.sort_unstable_by_key(key);
    Ok(ranked)
}

/// Averaged precision and recall at one ranking depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrPoint {
    pub depth: usize,
    pub recall: f64,
    pub precision: f64,
}

/// Precision/recall at every depth `1..=index.len()`, averaged over queries.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PrCurve {
    pub points: Vec<PrPoint>,
}

impl PrCurve {
    pub fn at_depth(&self, depth: usize) -> Option<&PrPoint> {
        self.points.get(depth.checked_sub(1)?)
    }

    /// Point-wise mean of several curves of equal length (e.g. over runs).
    pub fn mean(curves: &[PrCurve]) -> Result<PrCurve> {
        let first = curves.first().ok_or(Error::EmptyInput)?;
        if curves.iter().any(|c| c.points.len() != first.points.len()) {
            return Err(Error::InconsistentCodeLength);
        }
        let n = curves.len() as f64;
        let points = (0..first.points.len())
            .map(|j| PrPoint {
                depth: first.points[j].depth,
                recall: curves.iter().map(|c| c.points[j].recall).sum::<f64>() / n,
                precision: curves.iter().map(|c| c.points[j].precision).sum::<f64>() / n,
            })
            .collect();
        Ok(PrCurve { points })
    }
}

/// Ranks the whole index for every query; an item is relevant when its
/// label equals the query label.
pub fn precision_recall(
    index: &CodeIndex,
    queries: &[CodeVector],
    query_labels: &[i64],
) -> Result<PrCurve> {
    if queries.len() != query_labels.len() {
        return Err(Error::LengthMismatch {
            left: queries.len(),
            right: query_labels.len(),
        });
    }
    if queries.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = index.len();
    let mut recall = alloc::vec![0.0f64; n];
    let mut precision = alloc::vec![0.0f64; n];
    for (q, &label) in queries.iter().zip(query_labels) {
        let relevant = index.labels.iter().filter(|&&l| l == label).count();
        if relevant == 0 {
            return Err(Error::UnknownLabel(label));
        }
        let ranking = query_topk(index, q, n)?;
        let mut hits = 0usize;
        for (t, &(id, _)) in ranking.iter().enumerate() {
            hits += usize::from(index.labels[id] == label);
            recall[t] += hits as f64 / relevant as f64;
            precision[t] += hits as f64 / (t + 1) as f64;
        }
    }
    let m = queries.len() as f64;
    Ok(PrCurve {
        points: (0..n)
            .map(|t| PrPoint {
                depth: t + 1,
                recall: recall[t] / m,
                precision: precision[t] / m,
            })
            .collect(),
    })
}

/// Mean precision among the top `depth` results, averaged over queries.
/// Equivalent to `precision_recall(..).at_depth(depth).precision` but only
/// ranks the prefix.
pub fn mean_precision_at(
    index: &CodeIndex,
    queries: &[CodeVector],
    query_labels: &[i64],
    depth: usize,
) -> Result<f64> {
    if queries.len() != query_labels.len() {
        return Err(Error::LengthMismatch {
            left: queries.len(),
            right: query_labels.len(),
        });
    }
    if queries.is_empty() {
        return Err(Error::EmptyInput);
    }
    let depth = depth.min(index.len());
    let mut total = 0.0;
    for (q, &label) in queries.iter().zip(query_labels) {
        let top = query_topk(index, q, depth)?;
        let hits = top
            .iter()
            .filter(|&&(id, _)| index.labels[id] == label)
            .count();
        total += hits as f64 / depth as f64;
    }
    Ok(total / queries.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn cv(v: &[u32]) -> CodeVector {
        CodeVector::new(v.to_vec())
    }

    fn index(codes: &[&[u32]], labels: &[i64]) -> CodeIndex {
        CodeIndex::build(
            codes.iter().map(|c| cv(c)).collect(),
            labels.to_vec(),
            IndexMetadata::default(),
        )
        .unwrap()
    }

    #[test]
    fn build_validation() {
        let idx = index(&[&[1, 2], &[2, 2], &[3, 1]], &[0, 1, 2]);
        assert_eq!(idx.len(), 3);
        assert!(matches!(
            CodeIndex::build(
                vec![cv(&[1, 2]), cv(&[1])],
                vec![0, 0],
                IndexMetadata::default()
            ),
            Err(Error::InconsistentCodeLength)
        ));
        assert!(matches!(
            CodeIndex::build(vec![], vec![], IndexMetadata::default()),
            Err(Error::EmptyIndex)
        ));
        assert!(matches!(
            CodeIndex::build(vec![cv(&[1])], vec![], IndexMetadata::default()),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(
            hamming(&cv(&[1, 2, 1, 1, 2, 1]), &cv(&[1, 2, 1, 1, 3, 1])).unwrap(),
            1
        );
        assert_eq!(
            hamming(&cv(&[6, 2, 1, 6, 2, 10]), &cv(&[6, 2, 11, 7, 3, 10])).unwrap(),
            3
        );
        assert_eq!(hamming(&cv(&[4, 4]), &cv(&[4, 4])).unwrap(), 0);
        assert!(hamming(&cv(&[4]), &cv(&[4, 4])).is_err());
    }

    #[test]
    fn topk_ordering() {
        let idx = index(&[&[9, 9, 9], &[1, 2, 3], &[1, 0, 0]], &[0, 0, 1]);
        let top = query_topk(&idx, &cv(&[1, 2, 3]), 1).unwrap();
        assert_eq!(top, vec![(1, 0)]);
        let all = query_topk(&idx, &cv(&[1, 2, 0]), 10).unwrap();
        assert_eq!(all, vec![(1, 1), (2, 1), (0, 3)]);
        let two = index(&[&[0, 0, 0], &[1, 1, 0]], &[0, 0]);
        assert_eq!(
            query_topk(&two, &cv(&[1, 0, 0]), 2).unwrap(),
            vec![(0, 1), (1, 1)]
        );
        let two = index(&[&[5, 5, 5], &[1, 1, 0]], &[0, 0]);
        assert_eq!(
            query_topk(&two, &cv(&[1, 0, 0]), 2).unwrap(),
            vec![(1, 1), (0, 3)]
        );
        assert!(query_topk(&idx, &cv(&[1]), 1).is_err());
    }

    #[test]
    fn pr_perfect_unique_labels() {
        let idx = index(&[&[1, 1], &[2, 2], &[3, 3]], &[10, 20, 30]);
        let curve = precision_recall(
            &idx,
            &[cv(&[1, 1]), cv(&[2, 2]), cv(&[3, 3])],
            &[10, 20, 30],
        )
        .unwrap();
        let p = curve.at_depth(1).unwrap();
        assert_eq!((p.recall, p.precision), (1.0, 1.0));
    }

    #[test]
    fn pr_perfect_ranking() {
        let idx = index(
            &[&[1, 1], &[1, 2], &[1, 1], &[5, 5], &[6, 6]],
            &[0, 0, 0, 1, 1],
        );
        let curve = precision_recall(&idx, &[cv(&[1, 1])], &[0]).unwrap();
        let p = curve.at_depth(3).unwrap();
        assert_eq!((p.recall, p.precision), (1.0, 1.0));
        assert!(curve.points.windows(2).all(|w| w[0].recall <= w[1].recall));
        assert_eq!(
            mean_precision_at(&idx, &[cv(&[1, 1])], &[0], 3).unwrap(),
            1.0
        );
    }

    #[test]
    fn pr_unknown_label() {
        let idx = index(&[&[1, 1]], &[0]);
        assert_eq!(
            precision_recall(&idx, &[cv(&[1, 1])], &[7]),
            Err(Error::UnknownLabel(7))
        );
    }

    #[test]
    fn random_codes_give_class_prior_precision() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let n = 400;
        let classes = 4;
        let codes: Vec<CodeVector> = (0..n)
            .map(|_| CodeVector::new((0..16).map(|_| rng.random_range(0..4)).collect()))
            .collect();
        let labels: Vec<i64> = (0..n).map(|i| (i % classes) as i64).collect();
        let idx = CodeIndex::build(codes, labels, IndexMetadata::default()).unwrap();
        let m = 200;
        let queries: Vec<CodeVector> = (0..m)
            .map(|_| CodeVector::new((0..16).map(|_| rng.random_range(0..4)).collect()))
            .collect();
        let qlabels: Vec<i64> = (0..m).map(|i| (i % classes) as i64).collect();
        let curve = precision_recall(&idx, &queries, &qlabels).unwrap();
        let depth = 20;
        let p = curve.at_depth(depth).unwrap().precision;
        let prior = 1.0 / classes as f64;
        // Hypergeometric-ish; bound with the binomial variance.
        let se = (prior * (1.0 - prior) / (depth * m) as f64).sqrt();
        assert!((p - prior).abs() <= 3.0 * se, "p={p} prior={prior} se={se}");
        assert!((curve.points.last().unwrap().recall - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mean_of_curves() {
        let a = PrCurve {
            points: vec![PrPoint {
                depth: 1,
                recall: 0.0,
                precision: 1.0,
            }],
        };
        let b = PrCurve {
            points: vec![PrPoint {
                depth: 1,
                recall: 1.0,
                precision: 0.0,
            }],
        };
        let m = PrCurve::mean(&[a, b]).unwrap();
        assert_eq!(m.points[0].recall, 0.5);
        assert_eq!(m.points[0].precision, 0.5);
    }

    proptest! {
        #[test]
        fn hamming_is_a_metric(
            a in proptest::collection::vec(0u32..4, 12),
            b in proptest::collection::vec(0u32..4, 12),
            c in proptest::collection::vec(0u32..4, 12),
        ) {
            let (a, b, c) = (cv(&a), cv(&b), cv(&c));
            let ab = hamming(&a, &b).unwrap();
            prop_assert_eq!(ab, hamming(&b, &a).unwrap());
            prop_assert!(hamming(&a, &c).unwrap() <= ab + hamming(&b, &c).unwrap());
            prop_assert_eq!(ab == 0, a == b);
        }

        #[test]
        fn topk_consistent_with_hamming(
            codes in proptest::collection::vec(proptest::collection::vec(0u32..3, 8), 1..30),
            q in proptest::collection::vec(0u32..3, 8),
            k in 1usize..40,
        ) {
            let n = codes.len();
            let idx = CodeIndex::build(
                codes.iter().map(|c| cv(c)).collect(), vec![0; n], IndexMetadata::default()).unwrap();
            let q = cv(&q);
            let top = query_topk(&idx, &q, k).unwrap();
            let mut brute: Vec<(usize, usize)> = idx.codes().iter().enumerate()
                .map(|(i, c)| (i, hamming(c, &q).unwrap())).collect();
            brute.sort_by_key(|&(i, d)| (d, i));
            brute.truncate(k);
            prop_assert_eq!(top, brute);
        }
    }
}

//! Densified WTA: every empty sample borrows the code of the nearest
//! non-empty sample to its cyclic right, offset by `C` times the distance.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::permute::{SampleScheme, SampleSet};
use crate::sparse::SparseVector;
use crate::wta::{wta_hash_vector, wta_hash_with, RawCode, RawCodeVector};

/// Default range used when codes are reduced to one byte each.
pub const DEFAULT_RANGE: u32 = 256;

/// Final integer hash values for one vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CodeVector {
    values: Vec<u32>,
}

impl CodeVector {
    pub fn new(values: Vec<u32>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }
}

impl From<Vec<u32>> for CodeVector {
    fn from(values: Vec<u32>) -> Self {
        Self { values }
    }
}

/// Offset constant `C` (must exceed K) and optional output range `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensifyParams {
    k: u32,
    c: u32,
    r: Option<u32>,
}

impl DensifyParams {
    pub fn new(k: usize, c: u32, r: Option<u32>) -> Result<Self> {
        let k = u32::try_from(k).map_err(|_| Error::InvalidArgs(format!("K too large: {k}")))?;
        if k == 0 {
            return Err(Error::InvalidArgs("K must be positive".into()));
        }
        if c <= k {
            return Err(Error::InvalidArgs(format!(
                "C must exceed K (C={c}, K={k})"
            )));
        }
        if let Some(r) = r {
            if r < 2 {
                return Err(Error::InvalidArgs(format!("R must be at least 2, got {r}")));
            }
        }
        Ok(Self { k, c, r })
    }

    /// `C = K + 1`, no range reduction.
    pub fn smallest(k: usize) -> Result<Self> {
        Self::new(k, k as u32 + 1, None)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn r(&self) -> Option<u32> {
        self.r
    }

    pub fn with_range(self, r: Option<u32>) -> Result<Self> {
        Self::new(self.k as usize, self.c, r)
    }
}

/// Fills every empty position `i` with `p + C * d`, where `p` is the argmax
/// at the nearest non-empty position `d >= 1` steps to the cyclic right.
/// Non-empty positions keep their argmax. No range reduction is applied.
pub fn densify(rc: &RawCodeVector, params: &DensifyParams) -> Result<CodeVector> {
    let n = rc.codes.len();
    let first = rc
        .codes
        .iter()
        .position(|c| !c.is_empty())
        .ok_or(Error::AllEmpty)?;
    let mut values = alloc::vec![0u32; n];
    // Nearest non-empty position at or after the current one, unwrapped past n.
    let mut next = first + n;
    for i in (0..n).rev() {
        match rc.codes[i] {
            RawCode::Argmax(p) => {
                if p > params.k {
                    return Err(Error::InvalidArgs(format!(
                        "argmax {p} exceeds K={}",
                        params.k
                    )));
                }
                values[i] = p;
                next = i;
            }
            RawCode::Empty => {
                let distance = u32::try_from(next - i).map_err(|_| Error::CodeOverflow)?;
                let borrowed = rc.codes[next % n]
                    .argmax()
                    .expect("nearest position is non-empty");
                values[i] = params
                    .c
                    .checked_mul(distance)
                    .and_then(|o| o.checked_add(borrowed))
                    .ok_or(Error::CodeOverflow)?;
            }
        }
    }
    Ok(CodeVector { values })
}

/// Reduces every value modulo `r`.
pub fn range_reduce(cv: &CodeVector, r: u32) -> CodeVector {
    assert!(r >= 2, "range must be at least 2");
    CodeVector {
        values: cv.values.iter().map(|v| v % r).collect(),
    }
}

fn finish(rc: &RawCodeVector, params: &DensifyParams) -> Result<CodeVector> {
    let cv = densify(rc, params)?;
    Ok(match params.r {
        Some(r) => range_reduce(&cv, r),
        None => cv,
    })
}

/// WTA followed by densification and, when `R` is set, range reduction.
pub fn dwta_codes(
    x: &SparseVector,
    scheme: &SampleScheme,
    params: &DensifyParams,
) -> Result<CodeVector> {
    check_k(scheme.k(), params)?;
    finish(&wta_hash_vector(x, scheme)?, params)
}

/// [`dwta_codes`] over an explicit sample set.
pub fn dwta_codes_with(
    x: &SparseVector,
    samples: &SampleSet,
    params: &DensifyParams,
) -> Result<CodeVector> {
    check_k(samples.k(), params)?;
    finish(&wta_hash_with(x, samples)?, params)
}

fn check_k(k: usize, params: &DensifyParams) -> Result<()> {
    if k as u32 != params.k {
        return Err(Error::InvalidArgs(format!(
            "densify parameters built for K={}, scheme has K={k}",
            params.k
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permute::IndexSample;
    use crate::wta::vanilla_codes;
    use alloc::vec;
    use RawCode::{Argmax, Empty};

    fn worked_raw() -> (RawCodeVector, RawCodeVector) {
        (
            RawCodeVector::new(vec![Empty, Argmax(2), Argmax(1), Empty, Argmax(2), Empty]),
            RawCodeVector::new(vec![Empty, Argmax(2), Empty, Empty, Argmax(3), Empty]),
        )
    }

    #[test]
    fn densified_rows_for_several_c() {
        let (r1, r2) = worked_raw();
        for c in 4..12u32 {
            let p = DensifyParams::new(3, c, None).unwrap();
            assert_eq!(
                densify(&r1, &p).unwrap().values(),
                &[2 + c, 2, 1, 2 + c, 2, 2 + 2 * c]
            );
            assert_eq!(
                densify(&r2, &p).unwrap().values(),
                &[2 + c, 2, 3 + 2 * c, 3 + c, 3, 2 + 2 * c]
            );
        }
    }

    #[test]
    fn densified_with_c4_end_to_end() {
        let rows = [
            [2, 1, 8],
            [5, 3, 9],
            [6, 2, 4],
            [8, 9, 1],
            [1, 7, 3],
            [2, 4, 5],
        ];
        let set = SampleSet::from_samples(
            rows.iter()
                .map(|r| IndexSample::new(9, r.to_vec()).unwrap())
                .collect(),
        )
        .unwrap();
        let x1 = SparseVector::from_dense(&[0., 0., 5., 0., 0., 7., 6., 0., 0.]).unwrap();
        let x2 = SparseVector::from_dense(&[0., 0., 1., 0., 0., 0., 0., 0., 0.]).unwrap();
        let p = DensifyParams::new(3, 4, None).unwrap();
        assert_eq!(
            dwta_codes_with(&x1, &set, &p).unwrap().values(),
            &[6, 2, 1, 6, 2, 10]
        );
        assert_eq!(
            dwta_codes_with(&x2, &set, &p).unwrap().values(),
            &[6, 2, 11, 7, 3, 10]
        );
    }

    #[test]
    fn dense_codes_unchanged() {
        let rc = RawCodeVector::new(vec![Argmax(1), Argmax(3), Argmax(2)]);
        let p = DensifyParams::smallest(3).unwrap();
        assert_eq!(densify(&rc, &p).unwrap(), vanilla_codes(&rc));
    }

    #[test]
    fn all_empty_is_an_error() {
        let rc = RawCodeVector::new(vec![Empty; 4]);
        let p = DensifyParams::smallest(3).unwrap();
        assert_eq!(densify(&rc, &p), Err(Error::AllEmpty));
    }

    #[test]
    fn single_non_empty_wraps_around() {
        let rc = RawCodeVector::new(vec![Empty, Empty, Argmax(2), Empty]);
        let p = DensifyParams::new(2, 3, None).unwrap();
        // distances: 2, 1, 0, 3 (wrapping to position 3)
        assert_eq!(densify(&rc, &p).unwrap().values(), &[8, 5, 2, 11]);
    }

    #[test]
    fn params_validation() {
        assert!(DensifyParams::new(3, 3, None).is_err());
        assert!(DensifyParams::new(3, 4, Some(1)).is_err());
        assert!(DensifyParams::new(0, 4, None).is_err());
        assert_eq!(DensifyParams::smallest(4).unwrap().c(), 5);
    }

    #[test]
    fn scheme_k_must_match_params() {
        let scheme = SampleScheme::new(10, 3, 4, 0).unwrap();
        let p = DensifyParams::smallest(4).unwrap();
        let x = SparseVector::from_dense(&[1.; 10]).unwrap();
        assert!(dwta_codes(&x, &scheme, &p).is_err());
    }

    #[test]
    fn range_reduce_examples() {
        let cv = CodeVector::new(vec![7, 2, 1]);
        assert_eq!(range_reduce(&cv, 4).values(), &[3, 2, 1]);
        assert_eq!(range_reduce(&cv, 8), cv);
        assert_eq!(
            range_reduce(&CodeVector::new(vec![9; 5]), 4).values(),
            &[1; 5]
        );
    }

    #[test]
    fn reduced_pipeline_stays_in_range() {
        let scheme = SampleScheme::new(200, 4, 128, 9).unwrap();
        let p = DensifyParams::new(4, 5, Some(16)).unwrap();
        let x = SparseVector::new(200, [(5, 1.0), (77, 2.0), (150, 0.5)]).unwrap();
        let cv = dwta_codes(&x, &scheme, &p).unwrap();
        assert!(cv.values().iter().all(|&v| v < 16));
        let full = dwta_codes(&x, &scheme, &p.with_range(None).unwrap()).unwrap();
        assert_eq!(range_reduce(&full, 16), cv);
    }

    /// Direct transcription of the cyclic-right rule, O(n^2).
    fn densify_by_scanning(rc: &[RawCode], c: u32) -> Vec<u32> {
        let n = rc.len();
        (0..n)
            .map(|i| match rc[i] {
                Argmax(p) => p,
                Empty => {
                    let d = (1..n).find(|d| !rc[(i + d) % n].is_empty()).unwrap();
                    rc[(i + d) % n].argmax().unwrap() + c * d as u32
                }
            })
            .collect()
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn raw_codes(k: u32) -> impl Strategy<Value = Vec<RawCode>> {
            proptest::collection::vec(prop_oneof![Just(Empty), (1..=k).prop_map(Argmax)], 1..40)
                .prop_filter("needs a non-empty sample", |v| {
                    v.iter().any(|c| !c.is_empty())
                })
        }

        proptest! {
            #[test]
            fn single_pass_matches_scan(codes in raw_codes(4), c in 5u32..20) {
                let p = DensifyParams::new(4, c, None).unwrap();
                let got = densify(&RawCodeVector::new(codes.clone()), &p).unwrap();
                let want = densify_by_scanning(&codes, c);
                prop_assert_eq!(got.values(), want.as_slice());
            }

            #[test]
            fn value_structure(codes in raw_codes(4), c in 5u32..20) {
                let p = DensifyParams::new(4, c, None).unwrap();
                let cv = densify(&RawCodeVector::new(codes.clone()), &p).unwrap();
                for (raw, &v) in codes.iter().zip(cv.values()) {
                    match raw {
                        Argmax(q) => prop_assert_eq!(v, *q),
                        Empty => {
                            prop_assert!(v > c);
                            let base = (v - 1) % c + 1;
                            prop_assert!((1..=4).contains(&base));
                        }
                    }
                }
            }

            #[test]
            fn one_sided_empty_never_collides(a in raw_codes(3), b in raw_codes(3), c in 4u32..10) {
                let n = a.len().min(b.len());
                let (a, b) = (a[..n].to_vec(), b[..n].to_vec());
                prop_assume!(a.iter().any(|x| !x.is_empty()) && b.iter().any(|x| !x.is_empty()));
                let p = DensifyParams::new(3, c, None).unwrap();
                let da = densify(&RawCodeVector::new(a.clone()), &p).unwrap();
                let db = densify(&RawCodeVector::new(b.clone()), &p).unwrap();
                for i in 0..n {
                    if a[i].is_empty() != b[i].is_empty() {
                        prop_assert_ne!(da.values()[i], db.values()[i]);
                    }
                }
            }

            #[test]
            fn densify_is_identity_on_dense(codes in proptest::collection::vec((1u32..=4).prop_map(Argmax), 1..30)) {
                let rc = RawCodeVector::new(codes);
                let p = DensifyParams::smallest(4).unwrap();
                prop_assert_eq!(densify(&rc, &p).unwrap(), vanilla_codes(&rc));
            }
        }
    }
}

//! Collision estimates from codes, and exact kernels by enumeration.
//!
//! A WTA hash reads only the first K entries of its permutation, so the
//! sample space for one hash is the set of ordered K-tuples of distinct
//! attributes, each equally likely. Every exact quantity here is a ratio of
//! counts over that space (or over its n-fold product for densified codes)
//! and is returned as an arbitrary-precision rational.
//!
//! Conventions for the exact kernels:
//!
//! * `a` is the probability that both samples are empty;
//! * `k_bad` / `k_good` condition the collision event on `a`'s event being
//!   true / false, and are `None` when that event has probability zero;
//! * `k_wta`, `k_good` and `k_bad` treat an empty sample as its own symbol,
//!   so a sample that is empty for one vector only never collides;
//! * `k_wta_vanilla` is the kernel of the Empty-to-1 coding actually emitted
//!   by vanilla WTA, and `spurious` is the extra mass it picks up from
//!   one-sided empties whose non-empty argmax is 1.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::densify::{densify, CodeVector, DensifyParams};
use crate::error::{Error, Result};
use crate::permute::{gather, IndexSample};
use crate::sparse::SparseVector;
use crate::wta::{wta_raw, RawCode, RawCodeVector};

/// Fraction of positions at which two code vectors agree.
pub fn estimate_collision(c1: &CodeVector, c2: &CodeVector) -> Result<f64> {
    if c1.len() != c2.len() {
        return Err(Error::LengthMismatch {
            left: c1.len(),
            right: c2.len(),
        });
    }
    if c1.is_empty() {
        return Err(Error::EmptyInput);
    }
    let same = c1
        .values()
        .iter()
        .zip(c2.values())
        .filter(|(a, b)| a == b)
        .count();
    Ok(same as f64 / c1.len() as f64)
}

/// Caps on the size of the enumerated sample spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of ordered K-tuples, `d! / (d - K)!`.
    pub max_tuples: u128,
    /// Maximum size of the joint space `tuples^n` for densified codes.
    pub max_joint: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            // d = 10, K = 4
            max_tuples: 10 * 9 * 8 * 7,
            max_joint: 12_000_000,
        }
    }
}

/// Options for [`exact_kernels`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    pub budget: Budget,
    /// Number of hash positions used for the densified oracle.
    pub dwta_positions: usize,
    /// Densification offset; `None` means `K + 1`.
    pub c: Option<u32>,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self {
            budget: Budget::default(),
            dwta_positions: 2,
            c: None,
        }
    }
}

/// Exact kernel values for one vector pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub k_wta: BigRational,
    pub k_good: Option<BigRational>,
    pub k_bad: Option<BigRational>,
    pub a: BigRational,
    /// `None` when the densified oracle is out of budget or undefined.
    pub k_dwta: Option<BigRational>,
    pub k_wta_vanilla: BigRational,
    pub spurious: BigRational,
    /// Number of ordered K-tuples enumerated.
    pub tuples: u64,
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn tuple_count(d: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, j| acc.saturating_mul((d - j) as u128))
}

/// Calls `f` once for every ordered K-tuple of distinct 1-based indices in
/// `[1, d]`, in lexicographic order.
pub fn for_each_tuple(d: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(
        d: usize,
        k: usize,
        used: &mut [bool],
        cur: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in 1..=d {
            if !used[i - 1] {
                used[i - 1] = true;
                cur.push(i);
                rec(d, k, used, cur, f);
                cur.pop();
                used[i - 1] = false;
            }
        }
    }
    let mut used = alloc::vec![false; d];
    let mut cur = Vec::with_capacity(k);
    rec(d, k, &mut used, &mut cur, &mut f);
}

fn check_pair(x1: &SparseVector, x2: &SparseVector, k: usize) -> Result<usize> {
    let d = x1.dim();
    if x2.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: x2.dim(),
        });
    }
    if k == 0 || k > d {
        return Err(Error::InvalidArgs(format!(
            "K must be in [1, {d}], got {k}"
        )));
    }
    for (name, x) in [("first", x1), ("second", x2)] {
        if !x.is_strict() {
            return Err(Error::StrictModeViolation(format!(
                "{name} vector has negative values"
            )));
        }
    }
    Ok(d)
}

/// Raw WTA outcomes of both vectors for every ordered K-tuple.
fn tuple_outcomes(
    x1: &SparseVector,
    x2: &SparseVector,
    k: usize,
    budget: &Budget,
) -> Result<Vec<(RawCode, RawCode)>> {
    let d = check_pair(x1, x2, k)?;
    let required = tuple_count(d, k);
    if required > budget.max_tuples {
        return Err(Error::BudgetExceeded {
            required,
            budget: budget.max_tuples,
        });
    }
    let mut out = Vec::with_capacity(required as usize);
    let mut failure = None;
    for_each_tuple(d, k, |t| {
        if failure.is_some() {
            return;
        }
        let outcome = IndexSample::new(d, t.to_vec()).and_then(|s| {
            let r1 = wta_raw(&gather(x1, &s)?, k)?;
            let r2 = wta_raw(&gather(x2, &s)?, k)?;
            Ok((r1, r2))
        });
        match outcome {
            Ok(o) => out.push(o),
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Exact `k_wta`, `k_good`, `k_bad`, `a` and (budget permitting) `k_dwta`
/// for a pair of strict-mode vectors.
pub fn exact_kernels(
    x1: &SparseVector,
    x2: &SparseVector,
    k: usize,
    options: &ExactOptions,
) -> Result<KernelReport> {
    let outcomes = tuple_outcomes(x1, x2, k, &options.budget)?;
    let total = outcomes.len() as u64;
    let (mut both_empty, mut good_hits, mut spurious) = (0u64, 0u64, 0u64);
    for &(r1, r2) in &outcomes {
        match (r1, r2) {
            (RawCode::Empty, RawCode::Empty) => both_empty += 1,
            (RawCode::Argmax(p), RawCode::Argmax(q)) => good_hits += u64::from(p == q),
            (RawCode::Argmax(p), RawCode::Empty) | (RawCode::Empty, RawCode::Argmax(p)) => {
                spurious += u64::from(p == 1)
            }
        }
    }
    let not_empty = total - both_empty;
    let k_dwta = if not_empty == 0 {
        None
    } else {
        let c = options.c.unwrap_or(k as u32 + 1);
        match exact_dwta_collision(x1, x2, k, options.dwta_positions, c, &options.budget) {
            Ok(v) => Some(v),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        }
    };
    Ok(KernelReport {
        k_wta: ratio(both_empty + good_hits, total),
        k_good: (not_empty > 0).then(|| ratio(good_hits, not_empty)),
        // Both-empty samples always collide.
        k_bad: (both_empty > 0).then(|| ratio(both_empty, both_empty)),
        a: ratio(both_empty, total),
        k_dwta,
        k_wta_vanilla: ratio(both_empty + good_hits + spurious, total),
        spurious: ratio(spurious, total),
        tuples: total,
    })
}

/// Exact probability that position 1 of the densified codes collides, by
/// enumerating all `tuples^n` joint sample assignments.
///
/// Assignments in which both vectors are empty at every position are
/// excluded from the sample space (densification is undefined for both).
/// When exactly one vector is empty everywhere it has nothing to borrow and
/// is counted as a non-collision.
pub fn exact_dwta_collision(
    x1: &SparseVector,
    x2: &SparseVector,
    k: usize,
    n: usize,
    c: u32,
    budget: &Budget,
) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidArgs("n must be positive".into()));
    }
    let params = DensifyParams::new(k, c, None)?;
    let outcomes = tuple_outcomes(x1, x2, k, budget)?;
    let t = outcomes.len();
    let required = (0..n).fold(1u128, |acc, _| acc.saturating_mul(t as u128));
    if required > budget.max_joint {
        return Err(Error::BudgetExceeded {
            required,
            budget: budget.max_joint,
        });
    }
    if outcomes.iter().all(|(a, b)| a.is_empty() && b.is_empty()) {
        return Err(Error::AllEmptyPair);
    }

    let mut choice = alloc::vec![0usize; n];
    let mut raw1 = RawCodeVector::new(alloc::vec![RawCode::Empty; n]);
    let mut raw2 = RawCodeVector::new(alloc::vec![RawCode::Empty; n]);
    let (mut hits, mut space) = (0u64, 0u64);
    loop {
        for (pos, &ci) in choice.iter().enumerate() {
            raw1.codes[pos] = outcomes[ci].0;
            raw2.codes[pos] = outcomes[ci].1;
        }
        match (densify(&raw1, &params), densify(&raw2, &params)) {
            (Err(Error::AllEmpty), Err(Error::AllEmpty)) => {}
            (Ok(d1), Ok(d2)) => {
                space += 1;
                hits += u64::from(d1.values()[0] == d2.values()[0]);
            }
            (Err(Error::AllEmpty), Ok(_)) | (Ok(_), Err(Error::AllEmpty)) => space += 1,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
        // odometer
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(ratio(hits, space));
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < t {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Exact `K = 2` WTA collision probability alongside the fraction of
/// concordant attribute pairs, for dense tie-free vectors.
pub fn kendall_check(x1: &SparseVector, x2: &SparseVector) -> Result<(BigRational, BigRational)> {
    let d = x1.dim();
    if x2.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: x2.dim(),
        });
    }
    if d < 2 {
        return Err(Error::InvalidArgs("need at least two attributes".into()));
    }
    if x1.nnz() != d || x2.nnz() != d {
        return Err(Error::NotDense);
    }
    let (v1, v2) = (x1.to_dense(), x2.to_dense());
    let mut concordant = 0u64;
    let mut pairs = 0u64;
    for i in 0..d {
        for j in i + 1..d {
            if v1[i] == v1[j] || v2[i] == v2[j] {
                return Err(Error::TiesPresent);
            }
            pairs += 1;
            concordant += u64::from((v1[i] < v1[j]) == (v2[i] < v2[j]));
        }
    }
    let options = ExactOptions {
        budget: Budget {
            max_tuples: u128::MAX,
            max_joint: 0,
        },
        ..ExactOptions::default()
    };
    let report = exact_kernels(x1, x2, 2, &options)?;
    Ok((report.k_wta, ratio(concordant, pairs)))
}

/// Kendall's tau in [-1, 1] from a concordant-pair fraction.
pub fn tau_from_concordance(fraction: &BigRational) -> BigRational {
    fraction * BigRational::from_integer(BigInt::from(2)) - BigRational::one()
}

/// `true` when the rational is exactly zero.
pub fn is_zero(r: &BigRational) -> bool {
    r.is_zero()
}

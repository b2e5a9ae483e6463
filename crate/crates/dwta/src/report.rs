//! Serializable reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use dwta_core::index::PrCurve;
use dwta_core::KernelReport;

/// An exact rational as `"p/q"` plus its nearest `f64`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rational {
    pub exact: String,
    pub decimal: f64,
}

impl From<&BigRational> for Rational {
    fn from(r: &BigRational) -> Self {
        Self {
            exact: format!("{}/{}", r.numer(), r.denom()),
            decimal: r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelJson {
    pub k: usize,
    pub dwta_positions: usize,
    pub c: u32,
    pub tuples: u64,
    pub a: Rational,
    pub k_wta: Rational,
    pub k_good: Option<Rational>,
    pub k_bad: Option<Rational>,
    pub k_dwta: Option<Rational>,
    pub k_wta_vanilla: Rational,
    pub spurious: Rational,
}

impl KernelJson {
    pub fn new(report: &KernelReport, k: usize, dwta_positions: usize, c: u32) -> Self {
        Self {
            k,
            dwta_positions,
            c,
            tuples: report.tuples,
            a: (&report.a).into(),
            k_wta: (&report.k_wta).into(),
            k_good: report.k_good.as_ref().map(Into::into),
            k_bad: report.k_bad.as_ref().map(Into::into),
            k_dwta: report.k_dwta.as_ref().map(Into::into),
            k_wta_vanilla: (&report.k_wta_vanilla).into(),
            spurious: (&report.spurious).into(),
        }
    }
}

/// Empirical collision rates over `m` hashes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloJson {
    pub k: usize,
    pub m: usize,
    pub seed: u64,
    pub c: u32,
    pub both_empty_rate: f64,
    pub k_wta_vanilla: f64,
    pub k_dwta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictedEmpty {
    pub k: usize,
    pub per_vector: Vec<Rational>,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsJson {
    pub n: usize,
    pub dim: usize,
    pub total_nnz: usize,
    pub sparsity: f64,
    pub sparsity_exact: String,
    /// nnz -> number of vectors with that many nonzeros
    pub nnz_histogram: BTreeMap<usize, usize>,
    pub predicted_empty: Option<PredictedEmpty>,
}

impl StatsJson {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vectors     {}", self.n).unwrap();
        writeln!(out, "dim         {}", self.dim).unwrap();
        writeln!(out, "nonzeros    {}", self.total_nnz).unwrap();
        writeln!(
            out,
            "sparsity    {:.6} ({})",
            self.sparsity, self.sparsity_exact
        )
        .unwrap();
        writeln!(out, "nnz  count").unwrap();
        for (nnz, count) in &self.nnz_histogram {
            writeln!(out, "{nnz:<4} {count}").unwrap();
        }
        if let Some(p) = &self.predicted_empty {
            writeln!(out, "predicted empty rate, K={}: mean {:.6}", p.k, p.mean).unwrap();
            for (i, r) in p.per_vector.iter().enumerate() {
                writeln!(out, "  {:<6} {:.6} ({})", i + 1, r.decimal, r.exact).unwrap();
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrRow {
    pub depth: usize,
    pub recall: f64,
    pub precision: f64,
}

/// Rows of `curve` at the requested depths (all depths when empty).
pub fn pr_rows(curve: &PrCurve, depths: &[usize]) -> Vec<PrRow> {
    let row = |p: &dwta_core::index::PrPoint| PrRow {
        depth: p.depth,
        recall: p.recall,
        precision: p.precision,
    };
    if depths.is_empty() {
        curve.points.iter().map(row).collect()
    } else {
        depths
            .iter()
            .filter_map(|&d| curve.at_depth(d))
            .map(row)
            .collect()
    }
}

pub fn pr_csv(rows: &[PrRow]) -> String {
    let mut out = String::from("depth,recall,precision\n");
    for r in rows {
        writeln!(out, "{},{},{}", r.depth, r.recall, r.precision).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use dwta_core::index::PrPoint;
    use num_bigint::BigInt;

    #[test]
    fn rational_rendering() {
        let r = BigRational::new(BigInt::from(20), BigInt::from(84));
        let j = Rational::from(&r);
        assert_eq!(j.exact, "5/21");
        assert!((j.decimal - 20.0 / 84.0).abs() < 1e-15);
        let one = Rational::from(&BigRational::from_integer(BigInt::from(1)));
        assert_eq!(one.exact, "1/1");
    }

    #[test]
    fn pr_csv_layout() {
        let curve = PrCurve {
            points: vec![
                PrPoint {
                    depth: 1,
                    recall: 0.5,
                    precision: 1.0,
                },
                PrPoint {
                    depth: 2,
                    recall: 1.0,
                    precision: 1.0,
                },
            ],
        };
        assert_eq!(
            pr_csv(&pr_rows(&curve, &[])),
            "depth,recall,precision\n1,0.5,1\n2,1,1\n"
        );
        assert_eq!(pr_rows(&curve, &[2, 9]).len(), 1);
    }
}

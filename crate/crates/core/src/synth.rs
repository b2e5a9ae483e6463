//! Planted-cluster sparse datasets.
//!
//! Each cluster has a template support. A member keeps
//! `ceil(overlap * support_size)` randomly chosen template indices and draws
//! the rest uniformly from the attributes outside the template, so the
//! overlap dials how much intra-cluster pairs share.

use alloc::format;
use alloc::vec::Vec;

use num_traits::float::FloatCore;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Uniform, Zipf};

use crate::error::{Error, Result};
use crate::permute::{keyed_u64, partial_shuffle};
use crate::sparse::{Dataset, SparseVector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValueDistribution {
    /// Continuous uniform on `[low, high)`.
    Uniform { low: f64, high: f64 },
    /// Zipf-distributed integers in `[1, max]` with the given exponent.
    Zipf { exponent: f64, max: u64 },
}

impl Default for ValueDistribution {
    fn default() -> Self {
        ValueDistribution::Uniform {
            low: 1.0,
            high: 10.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub dim: usize,
    pub n_clusters: usize,
    pub vectors_per_cluster: usize,
    pub support_size: usize,
    pub overlap: f64,
    pub values: ValueDistribution,
    pub seed: u64,
}

impl SynthConfig {
    fn validate(&self) -> Result<()> {
        let bad = |msg: alloc::string::String| Err(Error::InvalidConfig(msg));
        if self.dim == 0 {
            return bad("dim must be positive".into());
        }
        if self.n_clusters == 0 || self.vectors_per_cluster == 0 {
            return bad("need at least one cluster and one vector per cluster".into());
        }
        if self.support_size > self.dim {
            return bad(format!(
                "support_size {} exceeds dim {}",
                self.support_size, self.dim
            ));
        }
        if !(0.0..=1.0).contains(&self.overlap) {
            return bad(format!("overlap {} not in [0, 1]", self.overlap));
        }
        let fresh = self.support_size - self.kept();
        if fresh > self.dim - self.support_size {
            return bad(format!(
                "cannot draw {fresh} attributes outside a template of {} in dim {}",
                self.support_size, self.dim
            ));
        }
        match self.values {
            ValueDistribution::Uniform { low, high } if !(low > 0.0 && high > low) => bad(format!(
                "uniform range [{low}, {high}) must be positive and non-empty"
            )),
            ValueDistribution::Zipf { exponent, max } if !(exponent >= 0.0 && max >= 1) => {
                bad(format!("invalid zipf parameters s={exponent}, max={max}"))
            }
            _ => Ok(()),
        }
    }

    /// Template indices copied into every member.
    pub fn kept(&self) -> usize {
        let kept = FloatCore::ceil(self.overlap * self.support_size as f64) as usize;
        kept.min(self.support_size)
    }
}

const TEMPLATE_STREAM: u64 = 1;
const MEMBER_STREAM: u64 = 2;

fn rng_for(seed: u64, stream: u64, id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(keyed_u64(seed, stream, id, 0))
}

fn sample_distinct(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    partial_shuffle(n, k, |_, bound| rng.random_range(0..bound))
}

enum Values {
    Uniform(Uniform<f64>),
    Zipf(Zipf<f64>),
}

impl Values {
    fn new(d: ValueDistribution) -> Result<Self> {
        let err = |e: &dyn core::fmt::Display| Error::InvalidConfig(format!("{e}"));
        Ok(match d {
            ValueDistribution::Uniform { low, high } => {
                Values::Uniform(Uniform::new(low, high).map_err(|e| err(&e))?)
            }
            ValueDistribution::Zipf { exponent, max } => {
                Values::Zipf(Zipf::new(max as f64, exponent).map_err(|e| err(&e))?)
            }
        })
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Values::Uniform(u) => u.sample(rng),
            Values::Zipf(z) => z.sample(rng),
        }
    }
}

/// Generates `n_clusters * vectors_per_cluster` vectors, cluster by
/// cluster; labels are the 0-based cluster ids.
pub fn generate(cfg: &SynthConfig) -> Result<Dataset> {
    cfg.validate()?;
    let values = Values::new(cfg.values)?;
    let kept = cfg.kept();
    let fresh = cfg.support_size - kept;
    let mut vectors = Vec::with_capacity(cfg.n_clusters * cfg.vectors_per_cluster);
    let mut labels = Vec::with_capacity(vectors.capacity());
    for cluster in 0..cfg.n_clusters {
        let mut rng = rng_for(cfg.seed, TEMPLATE_STREAM, cluster as u64);
        let mut template = sample_distinct(&mut rng, cfg.dim, cfg.support_size);
        template.sort_unstable();
        for member in 0..cfg.vectors_per_cluster {
            let id = (cluster * cfg.vectors_per_cluster + member) as u64;
            let mut rng = rng_for(cfg.seed, MEMBER_STREAM, id);
            let mut support: Vec<usize> = sample_distinct(&mut rng, cfg.support_size, kept)
                .into_iter()
                .map(|p| template[p - 1])
                .collect();
            // positions among the attributes outside the template
            for p in sample_distinct(&mut rng, cfg.dim - cfg.support_size, fresh) {
                let mut index = p;
                for &t in &template {
                    if t <= index {
                        index += 1;
                    } else {
                        break;
                    }
                }
                support.push(index);
            }
            let entries: Vec<(usize, f64)> = support
                .into_iter()
                .map(|i| (i, values.draw(&mut rng)))
                .collect();
            vectors.push(SparseVector::new(cfg.dim, entries)?);
            labels.push(cluster as i64);
        }
    }
    Dataset::new(cfg.dim, vectors, Some(labels))
}

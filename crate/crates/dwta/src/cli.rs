//! The `dwta` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use dwta_core::index::{mean_precision_at, PrCurve};
use dwta_core::kernel::{estimate_collision, ExactOptions};
use dwta_core::wta::wta_hash_with;
use dwta_core::{
    densify, empty_sample_probability, exact_kernels, precision_recall, range_reduce, sparsity,
    to_features, vanilla_codes, CodeIndex, CodeVector, Dataset, DensifyParams, IndexMetadata,
    RawCodeVector, SampleScheme, SampleSet, SynthConfig, ValueDistribution, ValueMode,
};

use crate::codes::{self, CodeFile, CodeFormat};
use crate::error::{Error, Result};
use crate::manifest::{FileDigest, RunManifest};
use crate::report::{self, KernelJson, MonteCarloJson, PredictedEmpty, Rational, StatsJson};
use crate::{fixture, libsvm};

/// Recommended number of attributes per sample.
pub const DEFAULT_K: usize = 4;

#[derive(Debug, Parser)]
#[command(
    name = "dwta",
    version,
    about = "Winner-take-all and densified WTA hashing for sparse data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dataset size, sparsity, nnz histogram and predicted empty-sample rates.
    Stats(StatsArgs),
    /// Hash a libsvm dataset into a code file.
    Hash(HashCmd),
    /// Kernel values for the first two vectors of a file.
    Kernel(KernelArgs),
    /// Hamming-ranking precision/recall.
    Eval(EvalArgs),
    /// Generate a planted-cluster sparse dataset.
    Synth(SynthArgs),
    /// Convert a code file into one-hot libsvm features.
    Features(FeaturesArgs),
    /// Replay a run from its manifest.
    Rerun(RerunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Strict,
    Permissive,
}

impl From<Mode> for ValueMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Strict => ValueMode::Strict,
            Mode::Permissive => ValueMode::Permissive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AllEmptyPolicy {
    /// Fail with exit code 3.
    Error,
    /// Emit vanilla codes for that vector.
    Vanilla,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelMethod {
    Enumerate,
    Montecarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Values {
    Uniform,
    Zipf,
}

#[derive(Debug, Clone, Args)]
pub struct DataArgs {
    /// libsvm input file.
    #[arg(long)]
    pub input: PathBuf,
    /// Dimension override (default: largest index in the file).
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Strict)]
    pub mode: Mode,
}

#[derive(Debug, Clone, Args)]
pub struct HashArgs {
    /// Attributes per sample (default 4, or the fixture's K).
    #[arg(long = "K")]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 256)]
    pub hashes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub densify: bool,
    /// Densification offset (default K + 1).
    #[arg(long = "C")]
    pub c: Option<u32>,
    /// Reduce codes modulo R.
    #[arg(long = "R")]
    pub r: Option<u32>,
    /// Explicit samples, one line of K indices per hash; overrides --hashes and --seed.
    #[arg(long)]
    pub fixture_permutations: Option<PathBuf>,
    /// What to do with vectors whose samples are all empty when densifying.
    #[arg(long, value_enum, default_value_t = AllEmptyPolicy::Error)]
    pub all_empty: AllEmptyPolicy,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Report C(d - nnz, K) / C(d, K) per vector for this K.
    #[arg(long)]
    pub predict_empty: Option<usize>,
    #[arg(long, value_enum, default_value_t = StatsFormat::Table)]
    pub format: StatsFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct HashCmd {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub hash: HashArgs,
    #[arg(long)]
    pub output: PathBuf,
    /// Write the binary `DWTA` format instead of CSV.
    #[arg(long)]
    pub binary: bool,
    /// Also write the labels, one per line.
    #[arg(long)]
    pub labels_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long = "K", default_value_t = 2)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = KernelMethod::Enumerate)]
    pub method: KernelMethod,
    /// Hashes for the Monte Carlo estimate.
    #[arg(long, default_value_t = 1024)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "C")]
    pub c: Option<u32>,
    /// Positions enumerated jointly for the densified kernel.
    #[arg(long, default_value_t = 2)]
    pub dwta_positions: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long, requires_all = ["train_labels", "test_codes", "test_labels"], conflicts_with = "train_data")]
    pub train_codes: Option<PathBuf>,
    #[arg(long)]
    pub train_labels: Option<PathBuf>,
    #[arg(long)]
    pub test_codes: Option<PathBuf>,
    #[arg(long)]
    pub test_labels: Option<PathBuf>,
    /// libsvm training data, hashed once per run.
    #[arg(long, requires = "test_data")]
    pub train_data: Option<PathBuf>,
    #[arg(long)]
    pub test_data: Option<PathBuf>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Strict)]
    pub mode: Mode,
    #[command(flatten)]
    pub hash: HashArgs,
    /// Runs with seeds seed, seed+1, ... (data inputs only).
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
    /// Comma-separated depths to report (default: all).
    #[arg(long, value_delimiter = ',')]
    pub depths: Vec<usize>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    pub format: ReportFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 10)]
    pub clusters: usize,
    #[arg(long, default_value_t = 100)]
    pub per_cluster: usize,
    #[arg(long)]
    pub nnz: usize,
    #[arg(long, default_value_t = 0.5)]
    pub overlap: f64,
    #[arg(long, value_enum, default_value_t = Values::Uniform)]
    pub values: Values,
    #[arg(long, default_value_t = 1.1)]
    pub zipf_s: f64,
    #[arg(long, default_value_t = 100)]
    pub zipf_max: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct FeaturesArgs {
    #[arg(long)]
    pub codes: PathBuf,
    #[arg(long = "R")]
    pub r: u32,
    /// Labels file, one per line (default: 0 for every row).
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct RerunArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Write to this path instead of the recorded output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parses `args` (without the program name) and runs the command, writing
/// any report to `out`.
pub fn run(args: &[String], out: &mut dyn Write) -> Result<()> {
    let argv = std::iter::once("dwta".to_string()).chain(args.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::Invalid(e.to_string()))?;
    execute(cli.command, args, out)
}

pub fn execute(command: Command, args: &[String], out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Stats(a) => cmd_stats(&a, args, out),
        Command::Hash(a) => cmd_hash(&a, args),
        Command::Kernel(a) => cmd_kernel(&a, args, out),
        Command::Eval(a) => cmd_eval(&a, args, out),
        Command::Synth(a) => cmd_synth(&a, args),
        Command::Features(a) => cmd_features(&a, args),
        Command::Rerun(a) => cmd_rerun(&a, out),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}

fn record(
    command: &str,
    args: &[String],
    params: serde_json::Value,
    inputs: &[&Path],
    outputs: &[&Path],
) -> Result<()> {
    let manifest = RunManifest {
        tool: "dwta".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        args: args.to_vec(),
        params,
        inputs: inputs
            .iter()
            .map(|p| FileDigest::of(p))
            .collect::<Result<_>>()?,
        outputs: outputs
            .iter()
            .map(|p| FileDigest::of(p))
            .collect::<Result<_>>()?,
    };
    manifest.write_for(outputs[0])?;
    Ok(())
}

/// Writes `text` to `output` (with a manifest) or to `out`.
fn deliver(
    text: &str,
    output: Option<&Path>,
    command: &str,
    args: &[String],
    params: serde_json::Value,
    inputs: &[&Path],
    out: &mut dyn Write,
) -> Result<()> {
    match output {
        Some(path) => {
            write_file(path, text.as_bytes())?;
            record(command, args, params, inputs, &[path])
        }
        None => emit(out, text),
    }
}

fn read_data(data: &DataArgs) -> Result<Dataset> {
    libsvm::read(&data.input, data.dim, data.mode.into())
}

pub fn cmd_stats(a: &StatsArgs, args: &[String], out: &mut dyn Write) -> Result<()> {
    let ds = read_data(&a.data)?;
    let s = sparsity(&ds)?;
    let cells = ds.len() as u64 * ds.dim() as u64;
    let zeros = cells - ds.total_nnz() as u64;
    let mut histogram = std::collections::BTreeMap::new();
    for v in ds.vectors() {
        *histogram.entry(v.nnz()).or_insert(0) += 1;
    }
    let predicted_empty = match a.predict_empty {
        None => None,
        Some(k) => {
            let per_vector = ds
                .vectors()
                .iter()
                .map(|v| exact_empty_probability(v.nnz(), ds.dim(), k))
                .collect::<Result<Vec<_>>>()?;
            let mean = ds
                .vectors()
                .iter()
                .map(|v| empty_sample_probability(v.nnz(), ds.dim(), k))
                .sum::<Result<f64, _>>()?
                / ds.len() as f64;
            Some(PredictedEmpty {
                k,
                per_vector,
                mean,
            })
        }
    };
    let report = StatsJson {
        n: ds.len(),
        dim: ds.dim(),
        total_nnz: ds.total_nnz(),
        sparsity: s,
        sparsity_exact: format!("{zeros}/{cells}"),
        nnz_histogram: histogram,
        predicted_empty,
    };
    let text = match a.format {
        StatsFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
        StatsFormat::Table => report.to_table(),
    };
    let params = json!({ "dim": ds.dim(), "predict_empty": a.predict_empty, "mode": format!("{:?}", a.data.mode) });
    deliver(
        &text,
        a.output.as_deref(),
        "stats",
        args,
        params,
        &[&a.data.input],
        out,
    )
}

fn exact_empty_probability(nnz: usize, dim: usize, k: usize) -> Result<Rational> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    // validates the arguments
    empty_sample_probability(nnz, dim, k)?;
    let choose = |n: usize, r: usize| -> BigInt {
        if r > n {
            return BigInt::from(0);
        }
        (0..r).fold(BigInt::from(1), |acc, j| acc * (n - j) / (j + 1))
    };
    Ok(Rational::from(&BigRational::new(
        choose(dim - nnz, k),
        choose(dim, k),
    )))
}

/// Everything needed to turn a dataset into codes.
pub struct Hasher {
    pub samples: SampleSet,
    pub densify: Option<DensifyParams>,
    pub range: Option<u32>,
    pub policy: AllEmptyPolicy,
}

impl Hasher {
    pub fn new(h: &HashArgs, dim: usize) -> Result<Self> {
        let samples = match &h.fixture_permutations {
            Some(path) => {
                let set = fixture::read(path, dim)?;
                if let Some(k) = h.k {
                    if k != set.k() {
                        return Err(Error::Invalid(format!(
                            "--K {k} does not match the fixture's K = {}",
                            set.k()
                        )));
                    }
                }
                set
            }
            None => SampleSet::generate(&SampleScheme::new(
                dim,
                h.k.unwrap_or(DEFAULT_K),
                h.hashes,
                h.seed,
            )?),
        };
        let k = samples.k();
        let densify = if h.densify {
            Some(DensifyParams::new(k, h.c.unwrap_or(k as u32 + 1), None)?)
        } else {
            None
        };
        if let Some(r) = h.r {
            if r < 2 {
                return Err(Error::Invalid(format!("--R must be at least 2, got {r}")));
            }
        }
        Ok(Self {
            samples,
            densify,
            range: h.r,
            policy: h.all_empty,
        })
    }

    pub fn raw(&self, ds: &Dataset) -> Result<Vec<RawCodeVector>> {
        ds.vectors()
            .par_iter()
            .map(|x| Ok(wta_hash_with(x, &self.samples)?))
            .collect()
    }

    pub fn codes(&self, ds: &Dataset) -> Result<Vec<CodeVector>> {
        self.raw(ds)?
            .par_iter()
            .enumerate()
            .map(|(row, rc)| {
                let cv = match &self.densify {
                    None => vanilla_codes(rc),
                    Some(p) => match densify(rc, p) {
                        Ok(cv) => cv,
                        Err(dwta_core::Error::AllEmpty)
                            if self.policy == AllEmptyPolicy::Vanilla =>
                        {
                            vanilla_codes(rc)
                        }
                        Err(dwta_core::Error::AllEmpty) => return Err(Error::AllEmptyRow(row + 1)),
                        Err(e) => return Err(e.into()),
                    },
                };
                Ok(match self.range {
                    Some(r) => range_reduce(&cv, r),
                    None => cv,
                })
            })
            .collect()
    }

    pub fn params(&self, h: &HashArgs) -> serde_json::Value {
        json!({
            "K": self.samples.k(),
            "n_hashes": self.samples.n_hashes(),
            "seed": h.seed,
            "densify": self.densify.is_some(),
            "C": self.densify.map(|p| p.c()),
            "R": self.range,
            "fixture_permutations": h.fixture_permutations,
            "all_empty": format!("{:?}", self.policy),
        })
    }
}

pub fn cmd_hash(a: &HashCmd, args: &[String]) -> Result<()> {
    let ds = read_data(&a.data)?;
    let hasher = Hasher::new(&a.hash, ds.dim())?;
    let rows = hasher.codes(&ds)?;
    let file = CodeFile::new(hasher.samples.n_hashes(), hasher.range, rows)?;
    let format = if a.binary {
        CodeFormat::Binary
    } else {
        CodeFormat::Csv
    };
    file.write(&a.output, format)?;
    let mut outputs = vec![a.output.as_path()];
    if let Some(path) = &a.labels_out {
        let labels = ds.labels().map(<[i64]>::to_vec).unwrap_or_default();
        write_file(path, codes::render_labels(&labels).as_bytes())?;
        outputs.push(path);
    }
    let mut inputs = vec![a.data.input.as_path()];
    if let Some(f) = &a.hash.fixture_permutations {
        inputs.push(f);
    }
    let mut params = hasher.params(&a.hash);
    params["mode"] = json!(format!("{:?}", a.data.mode));
    params["binary"] = json!(a.binary);
    record("hash", args, params, &inputs, &outputs)
}

fn first_pair(ds: &Dataset) -> Result<(&dwta_core::SparseVector, &dwta_core::SparseVector)> {
    match ds.vectors() {
        [x, y, ..] => Ok((x, y)),
        _ => Err(Error::Invalid("kernel needs at least two vectors".into())),
    }
}

pub fn cmd_kernel(a: &KernelArgs, args: &[String], out: &mut dyn Write) -> Result<()> {
    let ds = read_data(&a.data)?;
    let (x, y) = first_pair(&ds)?;
    let c = a.c.unwrap_or(a.k as u32 + 1);
    let text = match a.method {
        KernelMethod::Enumerate => {
            let options = ExactOptions {
                dwta_positions: a.dwta_positions,
                c: Some(c),
                ..ExactOptions::default()
            };
            let rep = exact_kernels(x, y, a.k, &options)?;
            serde_json::to_string_pretty(&KernelJson::new(&rep, a.k, a.dwta_positions, c))?
        }
        KernelMethod::Montecarlo => {
            let samples = SampleSet::generate(&SampleScheme::new(ds.dim(), a.k, a.m, a.seed)?);
            let r1 = wta_hash_with(x, &samples)?;
            let r2 = wta_hash_with(y, &samples)?;
            let both_empty = r1
                .codes
                .iter()
                .zip(&r2.codes)
                .filter(|(p, q)| p.is_empty() && q.is_empty())
                .count();
            let params = DensifyParams::new(a.k, c, None)?;
            let k_dwta = match (densify(&r1, &params), densify(&r2, &params)) {
                (Ok(d1), Ok(d2)) => Some(estimate_collision(&d1, &d2)?),
                _ => None,
            };
            serde_json::to_string_pretty(&MonteCarloJson {
                k: a.k,
                m: a.m,
                seed: a.seed,
                c,
                both_empty_rate: both_empty as f64 / a.m as f64,
                k_wta_vanilla: estimate_collision(&vanilla_codes(&r1), &vanilla_codes(&r2))?,
                k_dwta,
            })?
        }
    } + "\n";
    let params = json!({ "K": a.k, "method": format!("{:?}", a.method), "m": a.m, "seed": a.seed, "C": c, "dwta_positions": a.dwta_positions });
    deliver(
        &text,
        a.output.as_deref(),
        "kernel",
        args,
        params,
        &[&a.data.input],
        out,
    )
}

pub fn cmd_eval(a: &EvalArgs, args: &[String], out: &mut dyn Write) -> Result<()> {
    let (curve, inputs, params): (PrCurve, Vec<&Path>, serde_json::Value) = if let Some(train) =
        &a.train_codes
    {
        let (trl, te, tel) = (
            a.train_labels.as_ref().expect("clap requires"),
            a.test_codes.as_ref().expect("clap requires"),
            a.test_labels.as_ref().expect("clap requires"),
        );
        let train_file = CodeFile::read(train)?;
        let test_file = CodeFile::read(te)?;
        let index = CodeIndex::build(
            train_file.rows,
            codes::read_labels(trl)?,
            IndexMetadata {
                range: train_file.range,
                ..IndexMetadata::default()
            },
        )?;
        let curve = precision_recall(&index, &test_file.rows, &codes::read_labels(tel)?)?;
        (curve, vec![train, trl, te, tel], json!({ "runs": 1 }))
    } else if let (Some(train), Some(test)) = (&a.train_data, &a.test_data) {
        let mode: ValueMode = a.mode.into();
        let train_ds = libsvm::read(train, a.dim, mode)?;
        let dim = a.dim.unwrap_or(train_ds.dim());
        let train_ds = libsvm::read(train, Some(dim.max(train_ds.dim())), mode)?;
        let test_ds = libsvm::read(test, Some(train_ds.dim()), mode)?;
        if a.runs == 0 {
            return Err(Error::Invalid("--runs must be at least 1".into()));
        }
        let curves = (0..a.runs as u64)
            .map(|r| {
                let h = HashArgs {
                    seed: a.hash.seed.wrapping_add(r),
                    ..a.hash.clone()
                };
                let hasher = Hasher::new(&h, train_ds.dim())?;
                let index = CodeIndex::build(
                    hasher.codes(&train_ds)?,
                    labels_of(&train_ds),
                    IndexMetadata {
                        scheme_fingerprint: format!(
                            "K={} n={} seed={}",
                            hasher.samples.k(),
                            hasher.samples.n_hashes(),
                            h.seed
                        ),
                        densified: hasher.densify.is_some(),
                        range: hasher.range,
                    },
                )?;
                Ok(precision_recall(
                    &index,
                    &hasher.codes(&test_ds)?,
                    &labels_of(&test_ds),
                )?)
            })
            .collect::<Result<Vec<_>>>()?;
        let hasher = Hasher::new(&a.hash, train_ds.dim())?;
        let mut params = hasher.params(&a.hash);
        params["runs"] = json!(a.runs);
        (PrCurve::mean(&curves)?, vec![train, test], params)
    } else {
        return Err(Error::Invalid(
                "eval needs --train-codes/--train-labels/--test-codes/--test-labels or --train-data/--test-data".into(),
            ));
    };
    let rows = report::pr_rows(&curve, &a.depths);
    let text = match a.format {
        ReportFormat::Csv => report::pr_csv(&rows),
        ReportFormat::Json => serde_json::to_string_pretty(&json!({ "points": rows }))? + "\n",
    };
    deliver(
        &text,
        a.output.as_deref(),
        "eval",
        args,
        params,
        &inputs,
        out,
    )
}

fn labels_of(ds: &Dataset) -> Vec<i64> {
    ds.labels()
        .map(<[i64]>::to_vec)
        .unwrap_or_else(|| vec![0; ds.len()])
}

/// Mean precision@`depth` of hold-out queries against an index, for callers
/// that only need one depth.
pub fn precision_at(
    train: Vec<CodeVector>,
    train_labels: Vec<i64>,
    queries: &[CodeVector],
    query_labels: &[i64],
    depth: usize,
) -> Result<f64> {
    let index = CodeIndex::build(train, train_labels, IndexMetadata::default())?;
    Ok(mean_precision_at(&index, queries, query_labels, depth)?)
}

pub fn cmd_synth(a: &SynthArgs, args: &[String]) -> Result<()> {
    let values = match a.values {
        Values::Uniform => ValueDistribution::default(),
        Values::Zipf => ValueDistribution::Zipf {
            exponent: a.zipf_s,
            max: a.zipf_max,
        },
    };
    let cfg = SynthConfig {
        dim: a.dim,
        n_clusters: a.clusters,
        vectors_per_cluster: a.per_cluster,
        support_size: a.nnz,
        overlap: a.overlap,
        values,
        seed: a.seed,
    };
    let ds = dwta_core::generate(&cfg)?;
    libsvm::write(&a.output, &ds)?;
    let params = json!({
        "dim": a.dim, "clusters": a.clusters, "per_cluster": a.per_cluster, "nnz": a.nnz,
        "overlap": a.overlap, "values": format!("{values:?}"), "seed": a.seed,
    });
    record("synth", args, params, &[], &[&a.output])
}

pub fn cmd_features(a: &FeaturesArgs, args: &[String]) -> Result<()> {
    if a.r < 2 {
        return Err(Error::Invalid(format!(
            "--R must be at least 2, got {}",
            a.r
        )));
    }
    let file = CodeFile::read(&a.codes)?;
    let labels = match &a.labels {
        Some(p) => codes::read_labels(p)?,
        None => vec![0; file.rows.len()],
    };
    if labels.len() != file.rows.len() {
        return Err(Error::Invalid(format!(
            "{} labels for {} code rows",
            labels.len(),
            file.rows.len()
        )));
    }
    let mut text = String::new();
    for (cv, label) in file.rows.iter().zip(&labels) {
        text.push_str(&label.to_string());
        for i in to_features(cv, a.r).active() {
            text.push_str(&format!(" {}:1", i + 1));
        }
        text.push('\n');
    }
    write_file(&a.output, text.as_bytes())?;
    let mut inputs = vec![a.codes.as_path()];
    if let Some(p) = &a.labels {
        inputs.push(p);
    }
    record("features", args, json!({ "R": a.r }), &inputs, &[&a.output])
}

pub fn cmd_rerun(a: &RerunArgs, out: &mut dyn Write) -> Result<()> {
    let manifest = RunManifest::read(&a.manifest)?;
    manifest.verify_inputs()?;
    let args = manifest.replay_args(a.output.as_deref());
    run(&args, out)
}

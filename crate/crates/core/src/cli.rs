//! Command-line front end: `discover`, `simulate` and `bench`.

use std::io::{stdout, BufWriter};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::baselines::Method;
use crate::bench::{run_trials, BenchConfig};
use crate::datagen::{synthesize, trial_rng, DegreeChoice, GeneratorConfig};
use crate::error::{Error, Result};
use crate::io::{
    read_dataset_path, write_dataset_path, write_json, write_json_path, write_records_path,
    BenchSummaryOutput, DiscoverOutput, GroundTruthOutput, TOOL, VERSION,
};
use crate::linalg::RidgeConfig;
use crate::lingam::{fit, LingamConfig};
use crate::sparse::PathConfig;

#[derive(Debug, Parser)]
#[command(name = "hdlingam", version, about = "Linear non-Gaussian causal discovery for p >> n data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate causal order, direct and total effects from a CSV dataset.
    Discover(DiscoverArgs),
    /// Generate a synthetic dataset and its ground truth.
    Simulate(SimulateArgs),
    /// Run the synthetic benchmark and write per-trial metrics and a summary.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct EstimatorArgs {
    /// Ridge penalty for residualization and adaptive-lasso weights.
    #[arg(long, default_value_t = 0.01)]
    pub tau: f64,
    /// Number of lambda values on each regularization path.
    #[arg(long, default_value_t = 100)]
    pub path_len: usize,
}

impl EstimatorArgs {
    pub fn config(&self) -> Result<LingamConfig> {
        let cfg = LingamConfig {
            ridge: RidgeConfig::new(self.tau)?,
            path: PathConfig {
                path_len: self.path_len,
                ..PathConfig::default()
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct GeneratorArgs {
    #[arg(long, default_value_t = 100)]
    pub p: usize,
    #[arg(long, default_value_t = 30)]
    pub n: usize,
    /// Expected number of neighbours per variable; a fair coin between 2
    /// and 5 per dataset when omitted.
    #[arg(long)]
    pub expected_degree: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl GeneratorArgs {
    pub fn config(&self) -> Result<GeneratorConfig> {
        let cfg = GeneratorConfig {
            p: self.p,
            n: self.n,
            expected_degree: match self.expected_degree {
                Some(degree) => DegreeChoice::Fixed { degree },
                None => DegreeChoice::default(),
            },
            seed: self.seed,
            ..GeneratorConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct DiscoverArgs {
    /// CSV with one row per variable (first column = id).
    #[arg(long, short)]
    pub input: PathBuf,
    /// JSON output path; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Input has one row per sample and a header of variable ids.
    #[arg(long)]
    pub transpose: bool,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    /// Worker threads; all available cores when omitted.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// Trial index; the dataset equals trial `trial` of a bench run with the same seed.
    #[arg(long, default_value_t = 0)]
    pub trial: usize,
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub truth: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[arg(long, default_value_t = 101)]
    pub trials: usize,
    /// Comma-separated subset of random_guess, lasso, elastic_net, lingam.
    #[arg(long, value_delimiter = ',', default_value = "random_guess,lasso,elastic_net,lingam")]
    pub methods: Vec<String>,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    /// Worker threads; all available cores when omitted. Outputs do not
    /// depend on it.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Per-trial CSV output.
    #[arg(long)]
    pub csv: PathBuf,
    /// JSON summary output.
    #[arg(long)]
    pub summary: PathBuf,
    /// Record wall-clock seconds (makes outputs run-dependent).
    #[arg(long)]
    pub timings: bool,
}

/// Process exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::InvalidData(_) | Error::InvalidParameter(_) | Error::Csv(_) => 2,
        Error::ConstantVariable(_) => 3,
        _ => 1,
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Error::InvalidParameter("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(f)
}

pub fn discover(args: &DiscoverArgs) -> Result<DiscoverOutput> {
    let cfg = args.estimator.config()?;
    let data = read_dataset_path(&args.input, args.transpose)?;
    let result = with_jobs(args.jobs, || fit(&data, &cfg))?;
    let out = DiscoverOutput::new(&data, &result, cfg);
    match &args.output {
        Some(path) => write_json_path(path, &out)?,
        None => write_json(BufWriter::new(stdout().lock()), &out)?,
    }
    Ok(out)
}

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    let cfg = args.generator.config()?;
    let mut rng = trial_rng(cfg.seed, 2 * args.trial as u64);
    let (data, truth) = synthesize(&cfg, &mut rng)?;
    let out = GroundTruthOutput::new(&cfg, args.trial, &data, &truth);
    let comment = serde_json::json!({
        "tool": TOOL,
        "version": VERSION,
        "config": cfg,
        "trial": args.trial,
    });
    write_dataset_path(&args.data, &data, Some(&comment.to_string()))?;
    write_json_path(&args.truth, &out)
}

pub fn bench(args: &BenchArgs) -> Result<BenchSummaryOutput> {
    let methods = args
        .methods
        .iter()
        .map(|m| m.trim().parse::<Method>())
        .collect::<Result<Vec<_>>>()?;
    let cfg = BenchConfig {
        generator: args.generator.config()?,
        trials: args.trials,
        methods,
        lingam: args.estimator.config()?,
    };
    cfg.validate()?;
    let mut report = with_jobs(args.jobs, || run_trials(&cfg))?;
    if !args.timings {
        report.summary.iter_mut().for_each(|s| s.median_seconds = None);
    }
    write_records_path(&args.csv, &report, args.timings)?;
    let out = BenchSummaryOutput {
        tool: TOOL.into(),
        version: VERSION.into(),
        config: report.config.clone(),
        summary: report.summary.clone(),
    };
    write_json_path(&args.summary, &out)?;
    Ok(out)
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Discover(a) => discover(a).map(|_| ()),
        Command::Simulate(a) => simulate(a),
        Command::Bench(a) => bench(a).map(|_| ()),
    }
}

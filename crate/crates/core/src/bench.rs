//! Trial harness: generate a dataset, run each method, score its direct and
//! total effect estimates against the ground truth, and summarize.

use std::time::Instant;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{lasso_baseline, random_guess, Method};
use crate::datagen::{synthesize, trial_rng, GeneratorConfig};
use crate::effects::NONZERO_THRESHOLD;
use crate::error::{Error, Result};
use crate::lingam::{fit, LingamConfig};
use crate::sparse::ELASTIC_NET_SHARE;

/// Accuracy (true discovery rate) and coverage (recall) of a support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    /// Undefined for an empty estimate.
    pub accuracy: Option<f64>,
    /// Undefined for an empty truth.
    pub coverage: Option<f64>,
}

/// Compares off-diagonal supports; `(i, j)` and `(j, i)` are distinct cells.
pub fn score(estimate: &DMatrix<f64>, truth: &DMatrix<f64>) -> Result<Metrics> {
    if estimate.shape() != truth.shape() || estimate.nrows() != estimate.ncols() {
        return Err(Error::ShapeMismatch {
            expected: format!("{:?} square", truth.shape()),
            actual: format!("{:?}", estimate.shape()),
        });
    }
    let p = truth.nrows();
    let (mut est, mut tru, mut hit) = (0usize, 0usize, 0usize);
    for i in 0..p {
        for j in 0..p {
            if i == j {
                continue;
            }
            let e = estimate[(i, j)].abs() > NONZERO_THRESHOLD;
            let t = truth[(i, j)].abs() > NONZERO_THRESHOLD;
            est += e as usize;
            tru += t as usize;
            hit += (e && t) as usize;
        }
    }
    let ratio = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
    Ok(Metrics {
        accuracy: ratio(hit, est),
        coverage: ratio(hit, tru),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Direct,
    Total,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Direct => "direct",
            Target::Total => "total",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub trial: usize,
    pub method: Method,
    pub target: Target,
    pub accuracy: Option<f64>,
    pub coverage: Option<f64>,
    pub seconds: f64,
    /// Set when the method failed on this trial.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub generator: GeneratorConfig,
    pub trials: usize,
    pub methods: Vec<Method>,
    pub lingam: LingamConfig,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            generator: GeneratorConfig::default(),
            trials: 101,
            methods: Method::ALL.to_vec(),
            lingam: LingamConfig::default(),
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("at least one trial is required".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidParameter("no methods selected".into()));
        }
        self.generator.validate()?;
        self.lingam.validate()
    }
}

/// Five-number summary over the defined values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quartiles {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

pub fn quartiles(values: &[f64]) -> Option<Quartiles> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Some(Quartiles {
        min: v[0],
        q1: quantile(&v, 0.25),
        median: quantile(&v, 0.5),
        q3: quantile(&v, 0.75),
        max: v[v.len() - 1],
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub stats: Option<Quartiles>,
    pub defined: usize,
    pub undefined: usize,
}

impl MetricSummary {
    fn from_values(values: &[Option<f64>]) -> Self {
        let defined: Vec<f64> = values.iter().flatten().copied().collect();
        Self {
            stats: quartiles(&defined),
            defined: defined.len(),
            undefined: values.len() - defined.len(),
        }
    }

    pub fn median(&self) -> Option<f64> {
        self.stats.map(|s| s.median)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: Method,
    pub target: Target,
    pub accuracy: MetricSummary,
    pub coverage: MetricSummary,
    pub failures: usize,
    pub median_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub records: Vec<MetricsRecord>,
    pub summary: Vec<MethodSummary>,
}

impl BenchReport {
    pub fn summary_for(&self, method: Method, target: Target) -> Option<&MethodSummary> {
        self.summary
            .iter()
            .find(|s| s.method == method && s.target == target)
    }
}

const DATA_STREAM: u64 = 0;
const GUESS_STREAM: u64 = 1;

fn records_for(
    trial: usize,
    method: Method,
    outcome: std::result::Result<(DMatrix<f64>, DMatrix<f64>), String>,
    seconds: f64,
    truth_b: &DMatrix<f64>,
    truth_a: &DMatrix<f64>,
) -> Vec<MetricsRecord> {
    let mut out = Vec::with_capacity(2);
    for target in [Target::Direct, Target::Total] {
        let truth = match target {
            Target::Direct => truth_b,
            Target::Total => truth_a,
        };
        let scored = outcome.as_ref().map_err(Clone::clone).and_then(|(b, a)| {
            let est = if target == Target::Direct { b } else { a };
            score(est, truth).map_err(|e| e.to_string())
        });
        out.push(match scored {
            Ok(m) => MetricsRecord {
                trial,
                method,
                target,
                accuracy: m.accuracy,
                coverage: m.coverage,
                seconds,
                error: None,
            },
            Err(e) => MetricsRecord {
                trial,
                method,
                target,
                accuracy: None,
                coverage: None,
                seconds,
                error: Some(e),
            },
        });
    }
    out
}

/// Runs every configured method on trial `trial`. Records come out in
/// `Method` order, direct before total.
pub fn run_trial(cfg: &BenchConfig, trial: usize) -> Result<Vec<MetricsRecord>> {
    let seed = cfg.generator.seed;
    let mut data_rng = trial_rng(seed, 2 * trial as u64 + DATA_STREAM);
    let (data, truth) = synthesize(&cfg.generator, &mut data_rng)?;

    let mut methods = cfg.methods.clone();
    methods.sort();
    methods.dedup();
    let need_lingam = methods.contains(&Method::Lingam) || methods.contains(&Method::RandomGuess);

    let mut lingam_outcome = None;
    let mut lingam_seconds = 0.0;
    if need_lingam {
        let t = Instant::now();
        lingam_outcome = Some(
            fit(&data, &cfg.lingam)
                .map(|f| (f.direct.matrix().clone(), f.total.matrix().clone()))
                .map_err(|e| e.to_string()),
        );
        lingam_seconds = t.elapsed().as_secs_f64();
    }

    let mut records = Vec::new();
    for method in methods {
        let t = Instant::now();
        let (outcome, seconds) = match method {
            Method::Lingam => (lingam_outcome.clone().expect("computed above"), lingam_seconds),
            Method::RandomGuess => {
                let outcome = lingam_outcome.clone().expect("computed above").map(|(b, a)| {
                    let mut rng = trial_rng(seed, 2 * trial as u64 + GUESS_STREAM);
                    let g = random_guess(&b, &a, &mut rng);
                    (g.b_hat, g.a_hat)
                });
                (outcome, t.elapsed().as_secs_f64())
            }
            Method::Lasso | Method::ElasticNet => {
                let share = if method == Method::Lasso { 0.0 } else { ELASTIC_NET_SHARE };
                let outcome = lasso_baseline(&data, share, &cfg.lingam.path)
                    .map(|e| (e.b_hat, e.a_hat))
                    .map_err(|e| e.to_string());
                (outcome, t.elapsed().as_secs_f64())
            }
        };
        records.extend(records_for(trial, method, outcome, seconds, &truth.b_true, &truth.a_true));
    }
    Ok(records)
}

/// Runs all trials (in parallel on the current rayon pool) and summarizes.
/// The result does not depend on the number of threads, apart from timings.
pub fn run_trials(cfg: &BenchConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let per_trial: Vec<Vec<MetricsRecord>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let records = run_trial(cfg, t)?;
            log::info!("trial {t} finished");
            Ok(records)
        })
        .collect::<Result<_>>()?;
    let records: Vec<MetricsRecord> = per_trial.into_iter().flatten().collect();
    let summary = summarize(&records);
    Ok(BenchReport {
        config: cfg.clone(),
        records,
        summary,
    })
}

pub fn summarize(records: &[MetricsRecord]) -> Vec<MethodSummary> {
    let mut keys: Vec<(Method, Target)> = records.iter().map(|r| (r.method, r.target)).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|(method, target)| {
            let rows: Vec<&MetricsRecord> = records
                .iter()
                .filter(|r| r.method == method && r.target == target)
                .collect();
            let ok: Vec<&&MetricsRecord> = rows.iter().filter(|r| r.error.is_none()).collect();
            let acc: Vec<Option<f64>> = ok.iter().map(|r| r.accuracy).collect();
            let cov: Vec<Option<f64>> = ok.iter().map(|r| r.coverage).collect();
            let secs: Vec<f64> = ok.iter().map(|r| r.seconds).collect();
            MethodSummary {
                method,
                target,
                accuracy: MetricSummary::from_values(&acc),
                coverage: MetricSummary::from_values(&cov),
                failures: rows.len() - ok.len(),
                median_seconds: quartiles(&secs).map(|q| q.median),
            }
        })
        .collect()
}

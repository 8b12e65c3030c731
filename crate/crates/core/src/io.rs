//! File formats.
//!
//! Datasets are CSV with one row per variable: a header line
//! `variable,s1,…,sn` followed by `id,value,…` rows. With `transpose` the file
//! has one row per sample instead and the header lists the variable ids.
//! Lines starting with `#` are comments. Floating-point values in CSV output
//! carry 17 significant digits.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::bench::{BenchReport, MethodSummary};
use crate::datagen::{GeneratorConfig, GroundTruth, NoiseSpec};
use crate::error::{Error, Result};
use crate::linalg::Dataset;
use crate::lingam::{LingamConfig, LingamFit};

pub const TOOL: &str = "hdlingam";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

pub fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let p = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != c) {
        return Err(Error::InvalidData("ragged matrix".into()));
    }
    Ok(DMatrix::from_fn(p, c, |i, j| rows[i][j]))
}

fn parse_err(line: u64, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: line as usize,
        column,
        message: message.into(),
    }
}

fn parse_value(field: &str, line: u64, column: usize) -> Result<f64> {
    let v: f64 = field
        .parse()
        .map_err(|_| parse_err(line, column, format!("`{field}` is not a number")))?;
    if !v.is_finite() {
        return Err(parse_err(line, column, format!("non-finite value `{field}`")));
    }
    Ok(v)
}

pub fn read_dataset<R: Read>(reader: R, transpose: bool) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut records = rdr.records();
    let header = match records.next() {
        Some(r) => r?,
        None => return Err(parse_err(1, 1, "empty input")),
    };
    let width = header.len();
    let mut ids: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();

    for rec in records {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != width {
            return Err(parse_err(
                line,
                rec.len().min(width) + 1,
                format!("expected {width} fields, found {}", rec.len()),
            ));
        }
        let (skip, row_ids) = if transpose { (0, None) } else { (1, Some(&rec[0])) };
        if let Some(id) = row_ids {
            if id.is_empty() {
                return Err(parse_err(line, 1, "empty variable id"));
            }
            ids.push(id.to_string());
        }
        let values = rec
            .iter()
            .enumerate()
            .skip(skip)
            .map(|(c, f)| parse_value(f, line, c + 1))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(values);
    }
    if rows.is_empty() {
        return Err(parse_err(2, 1, "no data rows"));
    }

    let values = if transpose {
        ids = header.iter().map(String::from).collect();
        let m = matrix_from_rows(&rows)?;
        m.transpose()
    } else {
        matrix_from_rows(&rows)?
    };
    let mut sorted = ids.clone();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidData(format!("duplicate variable id `{}`", w[0])));
    }
    Dataset::new(values, ids)
}

pub fn read_dataset_path(path: &Path, transpose: bool) -> Result<Dataset> {
    read_dataset(BufReader::new(File::open(path)?), transpose)
}

/// Writes `data` one row per variable. `comment`, when given, becomes a
/// leading `#` line.
pub fn write_dataset<W: Write>(mut w: W, data: &Dataset, comment: Option<&str>) -> Result<()> {
    if let Some(c) = comment {
        writeln!(w, "# {c}")?;
    }
    let mut header = String::from("variable");
    for s in 1..=data.n_samples() {
        header.push_str(&format!(",s{s}"));
    }
    writeln!(w, "{header}")?;
    for (i, id) in data.var_ids().iter().enumerate() {
        let mut line = id.clone();
        for v in data.values().row(i).iter() {
            line.push(',');
            line.push_str(&fmt_f64(*v));
        }
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_dataset_path(path: &Path, data: &Dataset, comment: Option<&str>) -> Result<()> {
    write_dataset(BufWriter::new(File::create(path)?), data, comment)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscoverOutput {
    pub tool: String,
    pub version: String,
    pub config: LingamConfig,
    pub var_ids: Vec<String>,
    /// Variable ids, earliest first.
    pub order: Vec<String>,
    /// `direct_effects[i][j]`: effect of variable `j` on variable `i`.
    pub direct_effects: Vec<Vec<f64>>,
    pub total_effects: Vec<Vec<f64>>,
}

impl DiscoverOutput {
    pub fn new(data: &Dataset, fit: &LingamFit, config: LingamConfig) -> Self {
        let ids = data.var_ids();
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            config,
            var_ids: ids.to_vec(),
            order: fit.order.as_slice().iter().map(|&v| ids[v].clone()).collect(),
            direct_effects: matrix_rows(fit.direct.matrix()),
            total_effects: matrix_rows(fit.total.matrix()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruthOutput {
    pub tool: String,
    pub version: String,
    pub config: GeneratorConfig,
    pub seed: u64,
    pub trial: usize,
    pub expected_degree: f64,
    pub var_ids: Vec<String>,
    /// Observed variable `r` is generated variable `permutation[r]`.
    pub permutation: Vec<usize>,
    pub b_true: Vec<Vec<f64>>,
    pub a_true: Vec<Vec<f64>>,
    pub noise: Vec<NoiseSpec>,
}

impl GroundTruthOutput {
    pub fn new(cfg: &GeneratorConfig, trial: usize, data: &Dataset, truth: &GroundTruth) -> Self {
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            config: *cfg,
            seed: cfg.seed,
            trial,
            expected_degree: truth.expected_degree,
            var_ids: data.var_ids().to_vec(),
            permutation: truth.permutation.clone(),
            b_true: matrix_rows(&truth.b_true),
            a_true: matrix_rows(&truth.a_true),
            noise: truth.noise.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSummaryOutput {
    pub tool: String,
    pub version: String,
    pub config: crate::bench::BenchConfig,
    pub summary: Vec<MethodSummary>,
}

pub fn write_json<W: Write, T: Serialize>(mut w: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn write_json_path<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_json(BufWriter::new(File::create(path)?), value)
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// Per-trial records; the `seconds` column is left blank unless
/// `with_timings`, keeping the file reproducible.
pub fn write_records<W: Write>(w: W, report: &BenchReport, with_timings: bool) -> Result<()> {
    let mut w = w;
    writeln!(w, "# {}", serde_json::to_string(&report.config)?)?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["trial", "method", "target", "accuracy", "coverage", "seconds", "error"])?;
    for r in &report.records {
        let seconds = if with_timings { fmt_f64(r.seconds) } else { String::new() };
        csv.write_record([
            r.trial.to_string(),
            r.method.name().to_string(),
            r.target.name().to_string(),
            opt(r.accuracy),
            opt(r.coverage),
            seconds,
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

pub fn write_records_path(path: &Path, report: &BenchReport, with_timings: bool) -> Result<()> {
    write_records(BufWriter::new(File::create(path)?), report, with_timings)
}

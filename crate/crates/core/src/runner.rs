//! Experiment orchestration and report output.
//!
//! Trials are cut into fixed chunks of [`CHUNK_SIZE`]. Chunk `c` of an
//! experiment draws from `root.substream(h).substream(c)`, where `h` is a hash of
//! the experiment name, and chunk tallies are merged in chunk order. Results
//! therefore depend only on (experiment, trials, seed): not on the worker count
//! and not on the experiment's position in the list.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{self, ObtuseModel};
use crate::bertrand::{self, ChordMethod};
use crate::discrete::{self, PrisonerStrategy, TwoBoysProtocol};
use crate::geometry::{classify, ratios, side_lengths, TriangleClass};
use crate::rng::RngStream;
use crate::samplers::{self, MVariant, SamplerSpec};
use crate::stick::{self, CutPolicy, StickMode};
use crate::stats::SummaryStats;
use crate::{Error, Result, VERSION};

pub const CHUNK_SIZE: u64 = 4096;
pub const DEFAULT_TRIALS: u64 = 175_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Experiment {
    Triangle(SamplerSpec),
    Chord(ChordMethod),
    Stick(StickMode),
    AngleLine,
    BigAngle,
    TwoBoys(TwoBoysProtocol),
    Prisoners(PrisonerStrategy),
}

impl Experiment {
    /// Every experiment the CLI knows, in listing order.
    pub fn catalog() -> Vec<Experiment> {
        let mut v: Vec<_> = SamplerSpec::catalog().into_iter().map(Self::Triangle).collect();
        v.push(Self::Triangle(SamplerSpec::MMethod(MVariant::Polar)));
        v.extend(ChordMethod::ALL.map(Self::Chord));
        v.push(Self::Stick(StickMode::Parallel));
        for policy in [CutPolicy::RandomPiece, CutPolicy::LargerPiece, CutPolicy::SmallerPiece] {
            v.push(Self::Stick(StickMode::Sequential(policy)));
        }
        v.push(Self::AngleLine);
        v.push(Self::BigAngle);
        v.push(Self::TwoBoys(TwoBoysProtocol::FilterFamilies));
        v.push(Self::TwoBoys(TwoBoysProtocol::Informant));
        v.push(Self::Prisoners(PrisonerStrategy::Stay));
        v.push(Self::Prisoners(PrisonerStrategy::Switch));
        v
    }

    pub fn name(&self) -> String {
        match self {
            Self::Triangle(spec) => spec.name(),
            Self::Chord(ChordMethod::Endpoints) => "chord-endpoints".into(),
            Self::Chord(ChordMethod::RadiusPoint) => "chord-radius-point".into(),
            Self::Chord(ChordMethod::DiskPoint) => "chord-disk-point".into(),
            Self::Stick(StickMode::Parallel) => "stick-parallel".into(),
            Self::Stick(StickMode::Sequential(CutPolicy::RandomPiece)) => "stick-random-piece".into(),
            Self::Stick(StickMode::Sequential(CutPolicy::LargerPiece)) => "stick-larger-piece".into(),
            Self::Stick(StickMode::Sequential(CutPolicy::SmallerPiece)) => "stick-smaller-piece".into(),
            Self::AngleLine => "angle-line".into(),
            Self::BigAngle => "big-angle".into(),
            Self::TwoBoys(TwoBoysProtocol::FilterFamilies) => "two-boys-filter".into(),
            Self::TwoBoys(TwoBoysProtocol::Informant) => "two-boys-informant".into(),
            Self::Prisoners(PrisonerStrategy::Stay) => "prisoners-stay".into(),
            Self::Prisoners(PrisonerStrategy::Switch) => "prisoners-switch".into(),
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            Self::Triangle(SamplerSpec::Generated) => "largest angle swept over [pi/3, pi]",
            Self::Triangle(SamplerSpec::PolarUniform) => "vertices with uniform polar radius in the unit disk",
            Self::Triangle(SamplerSpec::HalfNormal) => "vertices with half-normal polar radius",
            Self::Triangle(SamplerSpec::Ellipse(_)) => "vertices area-uniform in an ellipse",
            Self::Triangle(SamplerSpec::Rectangle(_)) => "vertices uniform in a rectangle",
            Self::Triangle(SamplerSpec::Fractal { .. }) => "coordinates summed over nested levels",
            Self::Triangle(SamplerSpec::Quotient { .. }) => "polar radius from a quotient of uniforms",
            Self::Triangle(SamplerSpec::LMethod) => "longest side fixed, third vertex area-uniform",
            Self::Triangle(SamplerSpec::MMethod(MVariant::AreaUniform)) => {
                "medium side fixed, third vertex area-uniform"
            }
            Self::Triangle(SamplerSpec::MMethod(MVariant::Polar)) => {
                "medium side fixed, third vertex uniform in (theta, rho)"
            }
            Self::Chord(_) => "Bertrand chord longer than sqrt(3)",
            Self::Stick(_) => "broken stick forms a triangle",
            Self::AngleLine => "two points on an angle line of length pi",
            Self::BigAngle => "largest angle uniform on [pi/3, pi]",
            Self::TwoBoys(_) => "both children boys / same sex",
            Self::Prisoners(_) => "prisoner survives",
        }
    }

    /// Closed-form value of the estimated probability, where one exists.
    pub fn analytic(&self) -> Option<f64> {
        match self {
            Self::Triangle(SamplerSpec::Generated) => Some(0.75),
            Self::Triangle(SamplerSpec::LMethod) => Some(analytic::analytic_obtuse(ObtuseModel::LMethod)),
            Self::Triangle(SamplerSpec::MMethod(MVariant::AreaUniform)) => {
                Some(analytic::analytic_obtuse(ObtuseModel::MMethod))
            }
            Self::Triangle(_) => None,
            Self::Chord(m) => Some(bertrand::analytic_long_probability(*m)),
            Self::Stick(mode) => Some(stick::analytic_probability(*mode)),
            Self::AngleLine => Some(analytic::analytic_obtuse(ObtuseModel::AngleLine)),
            Self::BigAngle => Some(analytic::analytic_obtuse(ObtuseModel::BigAngle)),
            Self::TwoBoys(p) => Some(rational_to_f64(discrete::exact_value(discrete::Problem::TwoBoys(*p)))),
            Self::Prisoners(s) => Some(rational_to_f64(discrete::exact_value(discrete::Problem::Prisoners(*s)))),
        }
    }
}

fn rational_to_f64(r: crate::Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(e) = Self::catalog().into_iter().find(|e| e.name() == s) {
            return Ok(e);
        }
        match s.parse::<SamplerSpec>() {
            Ok(spec) => Ok(Self::Triangle(spec)),
            Err(_) => Err(Error::Config(format!("unknown method `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Table,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "table" => Ok(Self::Table),
            other => Err(Error::Config(format!("unknown output format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiments: Vec<Experiment>,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiments: Vec::new(),
            trials: DEFAULT_TRIALS,
            seed: 1,
            workers: 1,
            output_format: OutputFormat::default(),
            output_path: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        for e in &self.experiments {
            if let Experiment::Triangle(spec) = e {
                spec.validate()?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub trials: u64,
    pub chunk_size: u64,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub count: u64,
    pub mean: f64,
    pub median: f64,
    pub min: f64,
    pub max: f64,
    pub variance: Option<f64>,
    pub skewness: Option<f64>,
}

impl MetricSummary {
    fn from_stats(s: &SummaryStats<f64>) -> Option<Self> {
        Some(Self {
            count: s.count(),
            mean: s.mean()?,
            median: s.median()?,
            min: s.min()?,
            max: s.max()?,
            variance: s.variance().ok(),
            skewness: s.skewness().ok(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleMetrics {
    pub sdm: MetricSummary,
    pub mdl: MetricSummary,
    pub rho: MetricSummary,
    pub theta: MetricSummary,
}

impl TriangleMetrics {
    pub fn rows(&self) -> [(&'static str, &MetricSummary); 4] {
        [("SdM", &self.sdm), ("MdL", &self.mdl), ("rho", &self.rho), ("theta", &self.theta)]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub method: String,
    pub trials: u64,
    /// Trials that entered the estimate (families kept by a filter, otherwise all).
    pub observations: u64,
    pub successes: u64,
    pub probability: f64,
    pub analytic: Option<f64>,
    pub standard_error: f64,
    pub deviation: Option<f64>,
    pub rejections: u64,
    pub metrics: Option<TriangleMetrics>,
}

impl ExperimentResult {
    /// `|P - analytic| <= k * SE`, when an analytic value exists.
    pub fn within_standard_errors(&self, k: f64) -> Option<bool> {
        self.deviation.map(|d| d <= k * self.standard_error)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub provenance: Provenance,
    pub experiments: Vec<ExperimentResult>,
}

impl ExperimentReport {
    pub fn get(&self, method: &str) -> Option<&ExperimentResult> {
        self.experiments.iter().find(|e| e.method == method)
    }
}

#[derive(Debug, Clone, Default)]
struct MetricAccumulators {
    sdm: SummaryStats<f64>,
    mdl: SummaryStats<f64>,
    rho: SummaryStats<f64>,
    theta: SummaryStats<f64>,
}

impl MetricAccumulators {
    fn merge(&mut self, other: &Self) {
        self.sdm.merge(&other.sdm);
        self.mdl.merge(&other.mdl);
        self.rho.merge(&other.rho);
        self.theta.merge(&other.theta);
    }

    fn summarize(&self) -> Option<TriangleMetrics> {
        Some(TriangleMetrics {
            sdm: MetricSummary::from_stats(&self.sdm)?,
            mdl: MetricSummary::from_stats(&self.mdl)?,
            rho: MetricSummary::from_stats(&self.rho)?,
            theta: MetricSummary::from_stats(&self.theta)?,
        })
    }
}

#[derive(Debug, Clone, Default)]
struct Tally {
    successes: u64,
    observations: u64,
    rejections: u64,
    metrics: Option<MetricAccumulators>,
}

impl Tally {
    fn merge(&mut self, other: &Tally) {
        self.successes += other.successes;
        self.observations += other.observations;
        self.rejections += other.rejections;
        match (&mut self.metrics, &other.metrics) {
            (Some(a), Some(b)) => a.merge(b),
            (None, Some(b)) => self.metrics = Some(b.clone()),
            _ => {}
        }
    }

    fn record(&mut self, hit: bool) {
        self.observations += 1;
        self.successes += hit as u64;
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Stream an experiment draws its chunks from.
pub fn experiment_stream(seed: u64, experiment: &Experiment) -> RngStream {
    RngStream::new(seed).substream(fnv1a(&experiment.name()))
}

fn run_chunk(exp: &Experiment, rng: &mut RngStream, start: u64, len: u64, total: u64) -> Result<Tally> {
    let mut t = Tally::default();
    match exp {
        Experiment::Triangle(spec) => {
            let per = len as usize;
            let vertices = if matches!(spec, SamplerSpec::Generated | SamplerSpec::LMethod | SamplerSpec::MMethod(_)) {
                per
            } else {
                3 * per
            };
            let mut m = MetricAccumulators {
                sdm: SummaryStats::with_capacity(per),
                mdl: SummaryStats::with_capacity(per),
                rho: SummaryStats::with_capacity(vertices),
                theta: SummaryStats::with_capacity(vertices),
            };
            for i in start..start + len {
                let out = samplers::sample(spec, rng, i, total)?;
                t.rejections += out.rejections;
                let sl = side_lengths(&out.triangle)?;
                t.record(classify(&sl) == TriangleClass::Obtuse);
                let (sdm, mdl) = ratios(&sl);
                m.sdm.accumulate(sdm)?;
                m.mdl.accumulate(mdl)?;
                for pp in &out.vertex_polar {
                    m.rho.accumulate(pp.rho)?;
                    m.theta.accumulate(pp.theta)?;
                }
            }
            t.metrics = Some(m);
        }
        Experiment::Chord(method) => {
            for _ in 0..len {
                t.record(bertrand::trial(*method, rng)?);
            }
        }
        Experiment::Stick(mode) => {
            for _ in 0..len {
                t.record(stick::trial(*mode, rng)?);
            }
        }
        Experiment::AngleLine => {
            for _ in 0..len {
                t.record(analytic::angle_line_trial(rng));
            }
        }
        Experiment::BigAngle => {
            for _ in 0..len {
                t.record(analytic::big_angle_trial(rng));
            }
        }
        Experiment::TwoBoys(protocol) => {
            for _ in 0..len {
                if let Some(hit) = discrete::two_boys_trial(*protocol, rng) {
                    t.record(hit);
                }
            }
        }
        Experiment::Prisoners(strategy) => {
            for _ in 0..len {
                t.record(discrete::prisoners_round(rng).wins(*strategy));
            }
        }
    }
    Ok(t)
}

fn run_experiment(exp: &Experiment, config: &ExperimentConfig) -> Result<ExperimentResult> {
    let trials = config.trials;
    let stream = experiment_stream(config.seed, exp);
    let chunks = trials.div_ceil(CHUNK_SIZE);
    let tallies = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK_SIZE;
            let len = CHUNK_SIZE.min(trials - start);
            run_chunk(exp, &mut stream.substream(c), start, len, trials)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut total = Tally::default();
    for t in &tallies {
        total.merge(t);
    }

    let n = total.observations;
    let probability = if n == 0 {
        0.0
    } else {
        total.successes as f64 / n as f64
    };
    let standard_error = if n == 0 {
        0.0
    } else {
        (probability * (1.0 - probability) / n as f64).sqrt()
    };
    let analytic = exp.analytic();
    Ok(ExperimentResult {
        method: exp.name(),
        trials,
        observations: n,
        successes: total.successes,
        probability,
        analytic,
        standard_error,
        deviation: analytic.map(|a| (probability - a).abs()),
        rejections: total.rejections,
        metrics: total.metrics.as_ref().and_then(MetricAccumulators::summarize),
    })
}

pub fn run(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let experiments = pool.install(|| {
        config
            .experiments
            .iter()
            .map(|e| run_experiment(e, config))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(ExperimentReport {
        provenance: Provenance {
            seed: config.seed,
            trials: config.trials,
            chunk_size: CHUNK_SIZE,
            version: VERSION.to_string(),
        },
        experiments,
    })
}

/// One CSV line: a metric row or one of the per-method `P`, `analytic`, `SE` rows
/// (which carry their value in the `mean` column).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub method: String,
    pub metric: String,
    pub mean: Option<f64>,
    pub median: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub variance: Option<f64>,
    pub skewness: Option<f64>,
}

pub const CSV_HEADER: [&str; 8] = ["method", "metric", "mean", "median", "min", "max", "variance", "skewness"];

impl CsvRow {
    fn scalar(method: &str, metric: &str, value: f64) -> Self {
        Self {
            method: method.into(),
            metric: metric.into(),
            mean: Some(value),
            median: None,
            min: None,
            max: None,
            variance: None,
            skewness: None,
        }
    }

    fn metric(method: &str, metric: &str, m: &MetricSummary) -> Self {
        Self {
            method: method.into(),
            metric: metric.into(),
            mean: Some(m.mean),
            median: Some(m.median),
            min: Some(m.min),
            max: Some(m.max),
            variance: m.variance,
            skewness: m.skewness,
        }
    }
}

pub fn csv_rows(report: &ExperimentReport) -> Vec<CsvRow> {
    let mut rows = Vec::new();
    for e in &report.experiments {
        rows.push(CsvRow::scalar(&e.method, "P", e.probability));
        if let Some(a) = e.analytic {
            rows.push(CsvRow::scalar(&e.method, "analytic", a));
        }
        rows.push(CsvRow::scalar(&e.method, "SE", e.standard_error));
        if let Some(m) = &e.metrics {
            for (name, summary) in m.rows() {
                rows.push(CsvRow::metric(&e.method, name, summary));
            }
        }
    }
    rows
}

/// Four decimals, trailing zeros dropped.
fn short(x: f64) -> String {
    let s = format!("{x:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn opt_short(x: Option<f64>) -> String {
    x.map(short).unwrap_or_else(|| "-".into())
}

fn write_table<W: Write>(report: &ExperimentReport, out: &mut W) -> io::Result<()> {
    let p = &report.provenance;
    writeln!(
        out,
        "geoprob {}  seed={}  trials={}",
        p.version, p.seed, p.trials
    )?;
    writeln!(
        out,
        "{:<22}{:>10}{:>10}{:>10}{:>10}{:>10}{:>10}",
        "Method \\ Metrics", "mean", "median", "min", "max", "variance", "skewness"
    )?;
    for e in &report.experiments {
        let mut line = format!("{:<22}P = {}", e.method, short(e.probability));
        if let Some(a) = e.analytic {
            line.push_str(&format!("  (analytic {}, SE {:.2e})", short(a), e.standard_error));
        } else {
            line.push_str(&format!("  (SE {:.2e})", e.standard_error));
        }
        writeln!(out, "{line}")?;
        if let Some(m) = &e.metrics {
            for (name, s) in m.rows() {
                writeln!(
                    out,
                    "  {:<20}{:>10}{:>10}{:>10}{:>10}{:>10}{:>10}",
                    name,
                    short(s.mean),
                    short(s.median),
                    short(s.min),
                    short(s.max),
                    opt_short(s.variance),
                    opt_short(s.skewness)
                )?;
            }
        }
    }
    Ok(())
}

pub fn emit<W: Write>(report: &ExperimentReport, format: OutputFormat, mut out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut out);
            w.write_record(CSV_HEADER)?;
            for row in csv_rows(report) {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
        OutputFormat::Table => write_table(report, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

/// Emits to `config.output_path`, or stdout when unset.
pub fn emit_configured(report: &ExperimentReport, config: &ExperimentConfig) -> Result<()> {
    match &config.output_path {
        Some(path) => emit(report, config.output_format, BufWriter::new(File::create(path)?)),
        None => emit(report, config.output_format, io::stdout().lock()),
    }
}

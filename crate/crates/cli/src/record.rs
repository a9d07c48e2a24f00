use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use skmeans_core::config::one_percent_threshold;
use skmeans_core::init::initialize;
use skmeans_core::io::{load_labels, load_matrix, MatrixFormat};
use skmeans_core::kmeans::run_lloyd_on;
use skmeans_core::rng::{stream, Phase};
use skmeans_core::{
    minmax_scale, nmi, Assignment, ClusterConfig, Error, InitMethod, InitReport, Matrix,
    Prototypes, Result, ShardPlan,
};

/// Changed-assignment stopping rule for the Lloyd search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Threshold {
    /// Run until no assignment changes.
    #[default]
    Zero,
    /// Stop once at most ⌊0.01·N⌋ assignments change.
    Pct1,
    Count(usize),
}

impl Threshold {
    pub fn resolve(self, n_rows: usize) -> usize {
        match self {
            Threshold::Zero => 0,
            Threshold::Pct1 => one_percent_threshold(n_rows),
            Threshold::Count(c) => c,
        }
    }
}

impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" | "0" => Ok(Threshold::Zero),
            "pct1" | "1%" => Ok(Threshold::Pct1),
            other => other.parse().map(Threshold::Count).map_err(|_| {
                Error::InvalidArgument(format!(
                    "threshold `{other}` is not zero, pct1 or a nonnegative integer"
                ))
            }),
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Zero => f.write_str("zero"),
            Threshold::Pct1 => f.write_str("pct1"),
            Threshold::Count(c) => write!(f, "{c}"),
        }
    }
}

impl Serialize for Threshold {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Threshold {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(usize),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(Threshold::Count(n)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Outcome of one clustering run, serialized as a single flat JSON object.
///
/// `initial_sse`, `method` and the other initializer diagnostics come from the
/// flattened [`InitReport`]; its `wall_time` is the initialization time,
/// measured from the end of loading and scaling to the initializer's return.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub dataset: String,
    #[serde(flatten)]
    pub config: ClusterConfig,
    pub workers: usize,
    pub scaled: bool,
    #[serde(flatten)]
    pub init_report: InitReport,
    pub final_sse: f64,
    pub lloyd_iterations: usize,
    pub nmi: Option<f64>,
    pub search_time: f64,
}

impl RunRecord {
    /// Copy with wall-clock fields zeroed, for reproducibility comparisons.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        r.init_report.wall_time = 0.0;
        r.search_time = 0.0;
        r
    }

    /// Lloyd never increases SSE: `final_sse ≤ initial_sse·(1 + 1e-9)`.
    pub fn sse_is_monotone(&self) -> bool {
        self.final_sse <= self.init_report.initial_sse * (1.0 + 1e-9)
    }
}

/// Everything produced by one run besides the record itself.
#[derive(Debug, Clone)]
pub struct ClusterOutcome {
    pub record: RunRecord,
    pub prototypes: Prototypes,
    pub assignment: Assignment<f64>,
}

/// Initializes with `method` and runs Lloyd on already prepared data.
///
/// All randomness derives from `cfg.seed`. `truth`, when given, is scored
/// against the final labels with NMI.
pub fn run_on_data(
    data: &Matrix,
    truth: Option<&[usize]>,
    method: InitMethod,
    cfg: &ClusterConfig,
    workers: usize,
    dataset: &str,
) -> Result<ClusterOutcome> {
    if let Some(t) = truth {
        if t.len() != data.n_rows() {
            return Err(Error::LengthMismatch {
                left: data.n_rows(),
                right: t.len(),
            });
        }
    }
    let workers = workers.max(1);
    let mut rng = stream(cfg.seed, Phase::Init, 0);
    let (init, init_report) = initialize(method, data, cfg, workers, &mut rng)?;

    let start = Instant::now();
    let plan = ShardPlan::random(
        data.n_rows(),
        workers.min(data.n_rows()),
        &mut stream(cfg.seed, Phase::Shard, 0),
    )?;
    let (prototypes, assignment, stats) =
        run_lloyd_on(&plan, data, &init, cfg.max_lloyd_iters, cfg.conv_threshold)?;
    let final_sse = match stats.sse_per_iter.last() {
        Some(&s) => s,
        None => init_report.initial_sse,
    };
    let search_time = start.elapsed().as_secs_f64();
    let nmi = truth
        .map(|t| nmi(&assignment.labels, t))
        .transpose()?;
    Ok(ClusterOutcome {
        record: RunRecord {
            dataset: dataset.to_string(),
            config: cfg.clone(),
            workers,
            scaled: false,
            init_report,
            final_sse,
            lloyd_iterations: stats.iterations,
            nmi,
            search_time,
        },
        prototypes,
        assignment,
    })
}

/// Loads a dataset file, optionally min-max scales it, resolves the threshold
/// against its row count and runs [`run_on_data`].
#[allow(clippy::too_many_arguments)]
pub fn cluster_dataset(
    path: &Path,
    format: Option<MatrixFormat>,
    labels: Option<&Path>,
    method: InitMethod,
    cfg: &ClusterConfig,
    threshold: Threshold,
    scale: bool,
    workers: usize,
) -> Result<ClusterOutcome> {
    let format = format.unwrap_or_else(|| MatrixFormat::from_path(path));
    let raw: Matrix = load_matrix(path, format)?;
    let data = if scale { minmax_scale(&raw) } else { raw };
    if cfg.k > data.n_rows() {
        return Err(Error::TooFewRows {
            needed: cfg.k,
            available: data.n_rows(),
        });
    }
    let truth = labels.map(load_labels).transpose()?;
    let mut cfg = cfg.clone();
    cfg.conv_threshold = threshold.resolve(data.n_rows());
    let mut out = run_on_data(
        &data,
        truth.as_deref(),
        method,
        &cfg,
        workers,
        &path.display().to_string(),
    )?;
    out.record.scaled = scale;
    Ok(out)
}

/// Sibling label file written by the generator next to `data.<ext>`.
pub fn default_labels_path(data: &Path) -> PathBuf {
    data.with_file_name("labels.txt")
}

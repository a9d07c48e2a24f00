use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use skmeans_cli::{cluster_dataset, load_suite, run_suite, Threshold};
use skmeans_core::io::{load_labels, save_labels, save_matrix, MatrixFormat};
use skmeans_core::msphere::generate;
use skmeans_core::{nmi, ClusterConfig, InitMethod, RpDistribution, SphereSpec};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] skmeans_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("could not start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("{0} of {1} benchmark runs failed")]
    BenchFailures(usize, usize),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Data-parallel K-means: generate, cluster, evaluate, benchmark.
#[derive(Debug, Parser)]
#[command(name = "skmeans", version)]
struct Cli {
    /// Worker threads used for sharded computation.
    #[arg(long, global = true, env = "SKMEANS_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an M-spheres dataset with ground-truth labels.
    Generate(GenerateArgs),
    /// Initialize and run Lloyd on a dataset, printing a JSON run record.
    Cluster(ClusterArgs),
    /// NMI between two label files.
    Eval { pred: PathBuf, truth: PathBuf },
    /// Run a JSON suite of datasets × methods × seeds.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m: usize,
    /// Points per cluster.
    #[arg(long)]
    nk: usize,
    /// Distance between each center and its nearest neighbor.
    #[arg(long)]
    dc: f64,
    /// Maximum distance of a point from its center.
    #[arg(long)]
    dr: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "f64bin")]
    format: MatrixFormat,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    #[arg(long)]
    method: InitMethod,
    #[arg(long)]
    k: usize,
    /// Oversampling factor (default 2K).
    #[arg(long)]
    l: Option<f64>,
    #[arg(long, default_value_t = ClusterConfig::DEFAULT_ROUNDS)]
    r: usize,
    #[arg(long, default_value_t = ClusterConfig::DEFAULT_T_INIT)]
    t_init: usize,
    /// Number of subsets.
    #[arg(long, default_value_t = ClusterConfig::DEFAULT_SUBSETS)]
    s: usize,
    /// Projection dimension.
    #[arg(long, default_value_t = ClusterConfig::DEFAULT_RP_DIM)]
    p: usize,
    /// pm1 or sparse.
    #[arg(long, default_value = "pm1")]
    rp_dist: RpDistribution,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// zero, pct1 or a number of changed assignments.
    #[arg(long, default_value = "zero")]
    threshold: Threshold,
    #[arg(long, default_value_t = ClusterConfig::DEFAULT_MAX_LLOYD_ITERS)]
    max_iters: usize,
    #[arg(long)]
    no_scale: bool,
    /// Ground-truth labels; adds NMI to the record.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Input format; inferred from the extension when omitted.
    #[arg(long)]
    format: Option<MatrixFormat>,
    /// Write the record here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write final labels here, one per line.
    #[arg(long)]
    pred_out: Option<PathBuf>,
    dataset: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    suite: PathBuf,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// JSON output; stdout when neither --csv nor --json is given.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    #[serde(flatten)]
    spec: &'a SphereSpec,
    n_rows: usize,
    format: MatrixFormat,
    data: String,
    labels: String,
    centers: Vec<Vec<f64>>,
}

fn cmd_generate(a: GenerateArgs) -> Result<(), CliError> {
    let spec = SphereSpec {
        k: a.k,
        m: a.m,
        n_per_cluster: a.nk,
        center_dist: a.dc,
        radius: a.dr,
        seed: a.seed,
    };
    let ds = generate::<f64>(&spec)?;
    fs::create_dir_all(&a.out).map_err(io_err(&a.out))?;
    let data = a.out.join(format!("data.{}", a.format.extension()));
    let labels = a.out.join("labels.txt");
    let sidecar = a.out.join("spec.json");
    save_matrix(&data, &ds.data, a.format)?;
    save_labels(&labels, &ds.labels)?;
    let meta = Sidecar {
        spec: &spec,
        n_rows: spec.n_rows(),
        format: a.format,
        data: file_name(&data),
        labels: file_name(&labels),
        centers: ds.centers.to_rows(),
    };
    write_json(&sidecar, &meta)?;
    for p in [&data, &labels, &sidecar] {
        println!("{}", p.display());
    }
    Ok(())
}

fn file_name(p: &Path) -> String {
    p.file_name().unwrap_or_default().to_string_lossy().into_owned()
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path).map_err(io_err(path))?);
    serde_json::to_writer_pretty(&mut w, value).map_err(skmeans_core::Error::from)?;
    writeln!(w).and_then(|_| w.flush()).map_err(io_err(path))
}

fn cmd_cluster(a: ClusterArgs, workers: usize) -> Result<(), CliError> {
    let mut cfg = ClusterConfig::new(a.k);
    if let Some(l) = a.l {
        cfg.oversampling = l;
    }
    cfg.rounds = a.r;
    cfg.t_init = a.t_init;
    cfg.subsets = a.s;
    cfg.rp_dim = a.p;
    cfg.rp_dist = a.rp_dist;
    cfg.seed = a.seed;
    cfg.max_lloyd_iters = a.max_iters;
    let out = cluster_dataset(
        &a.dataset,
        a.format,
        a.labels.as_deref(),
        a.method,
        &cfg,
        a.threshold,
        !a.no_scale,
        workers,
    )?;
    if let Some(p) = &a.pred_out {
        save_labels(p, &out.assignment.labels)?;
    }
    match &a.out {
        Some(p) => write_json(p, &out.record)?,
        None => {
            let s = serde_json::to_string_pretty(&out.record).map_err(skmeans_core::Error::from)?;
            println!("{s}");
        }
    }
    Ok(())
}

fn cmd_eval(pred: &Path, truth: &Path) -> Result<(), CliError> {
    let score = nmi(&load_labels(pred)?, &load_labels(truth)?)?;
    println!("{score:.6}");
    Ok(())
}

fn cmd_bench(a: BenchArgs, workers: usize) -> Result<(), CliError> {
    let suite = load_suite(&a.suite)?;
    let res = run_suite(&suite, workers);
    if let Some(p) = &a.csv {
        let f = File::create(p).map_err(io_err(p))?;
        res.write_csv(BufWriter::new(f)).map_err(io_err(p))?;
    }
    if let Some(p) = &a.json {
        let f = File::create(p).map_err(io_err(p))?;
        res.write_json(BufWriter::new(f))?;
    }
    if a.csv.is_none() && a.json.is_none() {
        res.write_json(io::stdout().lock())?;
        println!();
    }
    for row in res.rows.iter().filter(|r| !r.is_ok()) {
        eprintln!(
            "{} {} seed {}: {}",
            row.dataset,
            row.method,
            row.seed,
            row.error.as_deref().unwrap_or_default()
        );
    }
    match res.failures() {
        0 => Ok(()),
        n => Err(CliError::BenchFailures(n, res.rows.len())),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let workers = cli
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
    pool.install(|| match cli.cmd {
        Command::Generate(a) => cmd_generate(a),
        Command::Cluster(a) => cmd_cluster(a, workers),
        Command::Eval { pred, truth } => cmd_eval(&pred, &truth),
        Command::Bench(a) => cmd_bench(a, workers),
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

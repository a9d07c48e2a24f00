//! Benchmark sweeps: datasets × methods × seeds, one row per run plus a
//! median/MAD/max/min summary per (dataset, method).

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use skmeans_core::io::{load_labels, load_matrix, MatrixFormat};
use skmeans_core::{minmax_scale, ClusterConfig, InitMethod, Matrix, Result, RpDistribution};

use crate::record::{run_on_data, RunRecord, Threshold};
use crate::stats;

/// Optional per-entry changes to the default [`ClusterConfig`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Overrides {
    pub oversampling: Option<f64>,
    pub rounds: Option<usize>,
    pub t_init: Option<usize>,
    pub subsets: Option<usize>,
    pub rp_dim: Option<usize>,
    pub rp_dist: Option<RpDistribution>,
    pub threshold: Option<Threshold>,
    pub max_lloyd_iters: Option<usize>,
    pub labels: Option<PathBuf>,
    pub format: Option<MatrixFormat>,
    pub no_scale: bool,
}

/// One line of a suite file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteEntry {
    pub dataset: PathBuf,
    pub method: InitMethod,
    pub k: usize,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub overrides: Overrides,
}

impl SuiteEntry {
    fn config(&self, seed: u64) -> ClusterConfig {
        let o = &self.overrides;
        let mut cfg = ClusterConfig::new(self.k);
        cfg.seed = seed;
        if let Some(v) = o.oversampling {
            cfg.oversampling = v;
        }
        if let Some(v) = o.rounds {
            cfg.rounds = v;
        }
        if let Some(v) = o.t_init {
            cfg.t_init = v;
        }
        if let Some(v) = o.subsets {
            cfg.subsets = v;
        }
        if let Some(v) = o.rp_dim {
            cfg.rp_dim = v;
        }
        if let Some(v) = o.rp_dist {
            cfg.rp_dist = v;
        }
        if let Some(v) = o.max_lloyd_iters {
            cfg.max_lloyd_iters = v;
        }
        cfg
    }
}

/// Result of one (entry, seed) cell. Exactly one of `record` and `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub dataset: String,
    pub method: InitMethod,
    pub seed: u64,
    pub record: Option<RunRecord>,
    pub error: Option<String>,
}

impl BenchRow {
    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

/// Median, MAD, max and min of one quantity over the successful runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub median: f64,
    pub mad: f64,
    pub max: f64,
    pub min: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Option<Self> {
        Some(Self {
            median: stats::median(values)?,
            mad: stats::mad(values)?,
            max: stats::max(values)?,
            min: stats::min(values)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub dataset: String,
    pub method: InitMethod,
    pub runs: usize,
    pub failures: usize,
    pub initial_sse: Option<Summary>,
    pub final_sse: Option<Summary>,
    pub lloyd_iterations: Option<Summary>,
    pub init_time: Option<Summary>,
    pub nmi: Option<Summary>,
}

impl SummaryRow {
    fn from_rows(dataset: &str, method: InitMethod, rows: &[&BenchRow]) -> Self {
        let recs: Vec<&RunRecord> = rows.iter().filter_map(|r| r.record.as_ref()).collect();
        let col = |f: &dyn Fn(&RunRecord) -> Option<f64>| -> Option<Summary> {
            let v: Vec<f64> = recs.iter().filter_map(|r| f(r)).collect();
            Summary::of(&v)
        };
        Self {
            dataset: dataset.to_string(),
            method,
            runs: recs.len(),
            failures: rows.len() - recs.len(),
            initial_sse: col(&|r| Some(r.init_report.initial_sse)),
            final_sse: col(&|r| Some(r.final_sse)),
            lloyd_iterations: col(&|r| Some(r.lloyd_iterations as f64)),
            init_time: col(&|r| Some(r.init_report.wall_time)),
            nmi: col(&|r| r.nmi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub rows: Vec<BenchRow>,
    pub summary: Vec<SummaryRow>,
}

impl SuiteResult {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.is_ok()).count()
    }

    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, self)?;
        Ok(())
    }

    /// Run rows followed by summary rows in one table; the `kind` column tells
    /// them apart.
    pub fn write_csv<W: Write>(&self, w: W) -> std::io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let stat_cols = ["initial_sse", "final_sse", "lloyd_iterations", "init_time", "nmi"];
        let mut header: Vec<String> = [
            "kind", "dataset", "method", "seed", "error", "initial_sse", "final_sse",
            "lloyd_iterations", "nmi", "init_time", "search_time", "runs", "failures",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        for c in stat_cols {
            for s in ["median", "mad", "max", "min"] {
                header.push(format!("{c}_{s}"));
            }
        }
        out.write_record(&header)?;
        let blank = |n: usize| vec![String::new(); n];
        let num = |v: Option<f64>| v.map(|x| format!("{x:?}")).unwrap_or_default();

        for row in &self.rows {
            let mut rec = vec![
                "run".to_string(),
                row.dataset.clone(),
                row.method.to_string(),
                row.seed.to_string(),
                row.error.clone().unwrap_or_default(),
            ];
            match &row.record {
                Some(r) => rec.extend([
                    num(Some(r.init_report.initial_sse)),
                    num(Some(r.final_sse)),
                    r.lloyd_iterations.to_string(),
                    num(r.nmi),
                    num(Some(r.init_report.wall_time)),
                    num(Some(r.search_time)),
                ]),
                None => rec.extend(blank(6)),
            }
            rec.extend(blank(2 + 4 * stat_cols.len()));
            out.write_record(&rec)?;
        }
        for s in &self.summary {
            let mut rec = vec!["summary".to_string(), s.dataset.clone(), s.method.to_string()];
            rec.extend(blank(8));
            rec.push(s.runs.to_string());
            rec.push(s.failures.to_string());
            for stat in [s.initial_sse, s.final_sse, s.lloyd_iterations, s.init_time, s.nmi] {
                match stat {
                    Some(t) => rec.extend([t.median, t.mad, t.max, t.min].map(|x| num(Some(x)))),
                    None => rec.extend(blank(4)),
                }
            }
            out.write_record(&rec)?;
        }
        out.flush()
    }
}

pub fn load_suite(path: &Path) -> Result<Vec<SuiteEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| skmeans_core::Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(serde_json::from_str(&text)?)
}

type Prepared = (Matrix, Option<Vec<usize>>);

fn prepare(entry: &SuiteEntry) -> Result<Prepared> {
    let o = &entry.overrides;
    let format = o
        .format
        .unwrap_or_else(|| MatrixFormat::from_path(&entry.dataset));
    let raw: Matrix = load_matrix(&entry.dataset, format)?;
    let data = if o.no_scale { raw } else { minmax_scale(&raw) };
    let truth = o.labels.as_deref().map(load_labels).transpose()?;
    Ok((data, truth))
}

/// Runs every cell of the suite in order. A failing cell, including a dataset
/// that cannot be loaded, becomes an error row and the sweep continues.
pub fn run_suite(entries: &[SuiteEntry], workers: usize) -> SuiteResult {
    let mut cache: HashMap<(PathBuf, bool, Option<PathBuf>), std::result::Result<Prepared, String>> =
        HashMap::new();
    let mut rows = Vec::new();
    for entry in entries {
        let key = (
            entry.dataset.clone(),
            entry.overrides.no_scale,
            entry.overrides.labels.clone(),
        );
        let prepared = cache
            .entry(key)
            .or_insert_with(|| prepare(entry).map_err(|e| e.to_string()));
        let dataset = entry.dataset.display().to_string();
        for &seed in &entry.seeds {
            let mut cfg = entry.config(seed);
            let outcome = prepared.as_ref().map_err(Clone::clone).and_then(|(data, truth)| {
                cfg.conv_threshold = entry
                    .overrides
                    .threshold
                    .unwrap_or_default()
                    .resolve(data.n_rows());
                run_on_data(data, truth.as_deref(), entry.method, &cfg, workers, &dataset)
                    .map_err(|e| e.to_string())
            });
            let (record, error) = match outcome {
                Ok(mut o) => {
                    o.record.scaled = !entry.overrides.no_scale;
                    (Some(o.record), None)
                }
                Err(e) => (None, Some(e)),
            };
            rows.push(BenchRow {
                dataset: dataset.clone(),
                method: entry.method,
                seed,
                record,
                error,
            });
        }
    }
    let summary = summarize(&rows);
    SuiteResult { rows, summary }
}

/// One summary row per (dataset, method), in order of first appearance.
pub fn summarize(rows: &[BenchRow]) -> Vec<SummaryRow> {
    let mut order: Vec<(String, InitMethod)> = Vec::new();
    for r in rows {
        let key = (r.dataset.clone(), r.method);
        if !order.contains(&key) {
            order.push(key);
        }
    }
    order
        .into_iter()
        .map(|(d, m)| {
            let group: Vec<&BenchRow> = rows
                .iter()
                .filter(|r| r.dataset == d && r.method == m)
                .collect();
            SummaryRow::from_rows(&d, m, &group)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use skmeans_core::io::{save_labels, save_matrix};
    use skmeans_core::msphere::{generate, SphereSpec};

    fn write_dataset(dir: &Path) -> (PathBuf, PathBuf) {
        let spec = SphereSpec {
            k: 2,
            m: 4,
            n_per_cluster: 30,
            center_dist: 3.0,
            radius: 1.0,
            seed: 5,
        };
        let ds = generate::<f64>(&spec).unwrap();
        let data = dir.join("data.bin");
        let labels = dir.join("labels.txt");
        save_matrix(&data, &ds.data, MatrixFormat::F64bin).unwrap();
        save_labels(&labels, &ds.labels).unwrap();
        (data, labels)
    }

    #[test]
    fn two_methods_three_seeds() {
        let dir = tempfile::tempdir().unwrap();
        let (data, labels) = write_dataset(dir.path());
        let entries: Vec<SuiteEntry> = [InitMethod::Kmpp, InitMethod::Sk]
            .into_iter()
            .map(|method| SuiteEntry {
                dataset: data.clone(),
                method,
                k: 2,
                seeds: vec![1, 2, 3],
                overrides: Overrides {
                    labels: Some(labels.clone()),
                    subsets: Some(2),
                    ..Overrides::default()
                },
            })
            .collect();
        let res = run_suite(&entries, 1);
        assert_eq!(res.rows.len(), 6);
        assert_eq!(res.summary.len(), 2);
        assert_eq!(res.failures(), 0);
        assert!(res.summary.iter().all(|s| s.runs == 3 && s.nmi.is_some()));

        let mut csv = Vec::new();
        res.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text.lines().count(), 1 + 6 + 2);
        let mut json = Vec::new();
        res.write_json(&mut json).unwrap();
        let back: SuiteResult = serde_json::from_slice(&json).unwrap();
        assert_eq!(back, res);
    }

    #[test]
    fn failing_cell_does_not_stop_the_suite() {
        let dir = tempfile::tempdir().unwrap();
        let (data, _) = write_dataset(dir.path());
        let entries = vec![
            SuiteEntry {
                dataset: dir.path().join("missing.bin"),
                method: InitMethod::Random,
                k: 2,
                seeds: vec![1],
                overrides: Overrides::default(),
            },
            SuiteEntry {
                dataset: data.clone(),
                method: InitMethod::Random,
                k: 1000,
                seeds: vec![1],
                overrides: Overrides::default(),
            },
            SuiteEntry {
                dataset: data,
                method: InitMethod::Kmpar,
                k: 2,
                seeds: vec![1, 2],
                overrides: Overrides::default(),
            },
        ];
        let res = run_suite(&entries, 2);
        assert_eq!(res.rows.len(), 4);
        assert_eq!(res.failures(), 2);
        assert!(res.rows[2].is_ok() && res.rows[3].is_ok());
        assert_eq!(res.summary[0].runs, 0);
        assert!(res.summary[0].final_sse.is_none());
    }

    #[test]
    fn suite_file_parses() {
        let text = r#"[{"dataset": "d.bin", "method": "srpk", "k": 10, "seeds": [1, 2],
            "overrides": {"rp_dim": 20, "rp_dist": "sparse", "threshold": "pct1"}}]"#;
        let s: Vec<SuiteEntry> = serde_json::from_str(text).unwrap();
        assert_eq!(s[0].overrides.threshold, Some(Threshold::Pct1));
        assert_eq!(s[0].config(2).rp_dim, 20);
        assert!(serde_json::from_str::<Vec<SuiteEntry>>(r#"[{"dataset": "d", "method": "x", "k": 1, "seeds": []}]"#).is_err());
    }
}

//! Prototype initialization.
//!
//! | method  | summary                                                            |
//! |---------|--------------------------------------------------------------------|
//! | random  | `K` distinct rows drawn uniformly                                  |
//! | kmpp    | K-means++ `D²` seeding                                             |
//! | kmpar   | K-means‖: `r` rounds of independent oversampling, weighted reclustering |
//! | sk      | K-means‖ + `T_init` Lloyd iterations per subset, best local SSE    |
//! | srpk    | as `sk`, but each subset is clustered in a random `P`-dim projection and the prototypes are rebuilt as original-space means |
//!
//! Subset methods give each subset its own random stream (stream id = subset
//! index) derived from one master draw, so subsets can run in any order. Rows
//! sampled by K-means‖ are decided by counter draws keyed on the row index, so
//! the candidate set does not depend on the shard plan.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::ClusterConfig;
use crate::data::{partition_rows, DataMatrix, SubsetPartition};
use crate::error::{Error, Result};
use crate::kmeans::{
    cluster_means_on, compute_sse_on, run_lloyd_on, sample_proportional, sample_unchosen,
    weighted_cluster, Assignment, PrototypeSet, WeightedPoints,
};
use crate::projection::{project, sample_rp_matrix};
use crate::rng::{counter_uniform, stream, Phase};
use crate::runtime::{map_gather, map_reduce_sum, map_shards, workers_per_group, ShardPlan};
use crate::scalar::{sq_dist, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitMethod {
    Random,
    Kmpp,
    Kmpar,
    Sk,
    Srpk,
}

impl InitMethod {
    pub const ALL: [InitMethod; 5] = [
        InitMethod::Random,
        InitMethod::Kmpp,
        InitMethod::Kmpar,
        InitMethod::Sk,
        InitMethod::Srpk,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InitMethod::Random => "random",
            InitMethod::Kmpp => "kmpp",
            InitMethod::Kmpar => "kmpar",
            InitMethod::Sk => "sk",
            InitMethod::Srpk => "srpk",
        }
    }

    pub fn uses_subsets(self) -> bool {
        matches!(self, InitMethod::Sk | InitMethod::Srpk)
    }
}

impl fmt::Display for InitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InitMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InitMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown method `{s}` (expected random, kmpp, kmpar, sk or srpk)"
                ))
            })
    }
}

/// Diagnostics of one initialization run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitReport {
    pub method: InitMethod,
    /// SSE of the returned prototypes over the full dataset.
    pub initial_sse: f64,
    /// Selection score of every subset; `None` marks an SRPK subset that
    /// produced an empty cluster.
    pub per_subset_local_sse: Option<Vec<Option<f64>>>,
    pub chosen_subset: Option<usize>,
    pub restarts: usize,
    /// SSE of the first uniformly drawn singleton (K-means‖ only).
    pub psi: Option<f64>,
    /// Candidates added in each K-means‖ sampling round.
    pub round_candidates: Option<Vec<usize>>,
    pub wall_time: f64,
}

impl InitReport {
    fn new(method: InitMethod) -> Self {
        Self {
            method,
            initial_sse: 0.0,
            per_subset_local_sse: None,
            chosen_subset: None,
            restarts: 0,
            psi: None,
            round_candidates: None,
            wall_time: 0.0,
        }
    }
}

fn require_rows(n: usize, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if n < k {
        return Err(Error::TooFewRows {
            needed: k,
            available: n,
        });
    }
    Ok(())
}

/// `K` distinct rows sampled uniformly without replacement.
pub fn init_random<T: Scalar, R: Rng + ?Sized>(
    data: &DataMatrix<T>,
    k: usize,
    rng: &mut R,
) -> Result<PrototypeSet<T>> {
    require_rows(data.n_rows(), k)?;
    let idx = rand::seq::index::sample(rng, data.n_rows(), k).into_vec();
    Ok(PrototypeSet::new(data.select_rows(&idx)?))
}

/// Nearest chosen row (by insertion order) and squared distance for every data
/// row, updated incrementally as rows are added to the chosen set.
struct NearestTracker<T> {
    chosen: Vec<usize>,
    labels: Vec<usize>,
    d2: Vec<T>,
}

impl<T: Scalar> NearestTracker<T> {
    fn new(plan: &ShardPlan, data: &DataMatrix<T>, first: usize) -> Self {
        let n = data.n_rows();
        let mut t = Self {
            chosen: Vec::new(),
            labels: vec![0; n],
            d2: vec![T::infinity(); n],
        };
        t.absorb(plan, data, &[first]);
        t
    }

    /// Adds rows to the chosen set. Later additions win only on strictly
    /// smaller distance, so ties keep the lowest chosen index.
    fn absorb(&mut self, plan: &ShardPlan, data: &DataMatrix<T>, rows: &[usize]) {
        if rows.is_empty() {
            return;
        }
        let base = self.chosen.len();
        let (labels, d2) = (&self.labels, &self.d2);
        let parts = map_shards(plan, |s| {
            s.rows
                .iter()
                .map(|&i| {
                    let (mut best, mut best_d) = (labels[i], d2[i]);
                    for (q, &c) in rows.iter().enumerate() {
                        let d = sq_dist(data.row(i), data.row(c));
                        if d < best_d {
                            best = base + q;
                            best_d = d;
                        }
                    }
                    (best, best_d)
                })
                .collect::<Vec<_>>()
        });
        for (shard, part) in plan.shards().zip(parts) {
            for (&i, (l, d)) in shard.rows.iter().zip(part) {
                self.labels[i] = l;
                self.d2[i] = d;
            }
        }
        self.chosen.extend_from_slice(rows);
    }

    fn total(&self, plan: &ShardPlan) -> Result<T> {
        sum_rows(plan, &self.d2)
    }
}

/// Ordered sum of a per-row vector over a shard plan.
fn sum_rows<T: Scalar>(plan: &ShardPlan, values: &[T]) -> Result<T> {
    Ok(map_reduce_sum(plan, |s| {
        vec![s.rows.iter().fold(T::zero(), |a, &i| a + values[i])]
    })?[0])
}

pub fn init_kmeanspp<T: Scalar, R: Rng + ?Sized>(
    data: &DataMatrix<T>,
    k: usize,
    rng: &mut R,
) -> Result<PrototypeSet<T>> {
    init_kmeanspp_on(&ShardPlan::single(data.n_rows()), data, k, rng)
}

/// K-means++ seeding: the first row uniformly, then each next row with
/// probability `d(x)² / Σ d(x)²`. If every remaining distance is zero (fewer
/// than `K` distinct rows), the rest are drawn uniformly among unchosen rows.
pub fn init_kmeanspp_on<T: Scalar, R: Rng + ?Sized>(
    plan: &ShardPlan,
    data: &DataMatrix<T>,
    k: usize,
    rng: &mut R,
) -> Result<PrototypeSet<T>> {
    let n = data.n_rows();
    require_rows(n, k)?;
    let first = rng.random_range(0..n);
    let mut taken = vec![false; n];
    taken[first] = true;
    let mut tracker = NearestTracker::new(plan, data, first);
    while tracker.chosen.len() < k {
        let total = tracker.total(plan)?;
        let next = if total > T::zero() {
            let w: Vec<f64> = tracker.d2.iter().map(|d| d.as_f64()).collect();
            sample_proportional(&w, rng)
        } else {
            sample_unchosen(&taken, rng).expect("n >= k leaves an unchosen row")
        };
        taken[next] = true;
        tracker.absorb(plan, data, &[next]);
    }
    Ok(PrototypeSet::new(data.select_rows(&tracker.chosen)?))
}

/// Oversampled candidate set of K-means‖ before weighting.
#[derive(Debug, Clone, PartialEq)]
pub struct OversampledCandidates {
    /// Chosen row indices: the uniform seed, then each round's picks in
    /// ascending row order, then any padding rows.
    pub rows: Vec<usize>,
    /// Number of data rows nearest to each candidate (ties to the earlier one).
    pub weights: Vec<usize>,
    pub psi: f64,
    pub round_counts: Vec<usize>,
}

/// Steps 1–7 of K-means‖ with `r` fixed rounds.
///
/// Each round keeps every row independently with probability
/// `min(1, l·d(x)²/SSE(C))`. The decision for row `i` is a counter draw keyed
/// by `(round key, i)`, so the picks do not depend on `plan`. If fewer than
/// `K` candidates exist afterwards, uniformly drawn unchosen rows are added.
pub fn kmeans_parallel_candidates<T: Scalar, R: Rng + ?Sized>(
    plan: &ShardPlan,
    data: &DataMatrix<T>,
    k: usize,
    oversampling: f64,
    rounds: usize,
    rng: &mut R,
) -> Result<OversampledCandidates> {
    let n = data.n_rows();
    require_rows(n, k)?;
    if !(oversampling > 0.0 && oversampling.is_finite()) {
        return Err(Error::InvalidArgument(
            "oversampling factor must be positive".into(),
        ));
    }
    let first = rng.random_range(0..n);
    let mut tracker = NearestTracker::new(plan, data, first);
    let psi = tracker.total(plan)?.as_f64();
    let mut round_counts = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let key = rng.next_u64();
        let sse = tracker.total(plan)?.as_f64();
        if sse <= 0.0 {
            round_counts.push(0);
            continue;
        }
        let d2 = &tracker.d2;
        let mut picks = map_gather(plan, |s| {
            s.rows
                .iter()
                .copied()
                .filter(|&i| {
                    let p = (oversampling * d2[i].as_f64() / sse).min(1.0);
                    p > 0.0 && counter_uniform(key, i as u64) < p
                })
                .collect()
        });
        picks.sort_unstable();
        round_counts.push(picks.len());
        tracker.absorb(plan, data, &picks);
    }
    if tracker.chosen.len() < k {
        let mut taken = vec![false; n];
        tracker.chosen.iter().for_each(|&c| taken[c] = true);
        while tracker.chosen.len() < k {
            let pad = sample_unchosen(&taken, rng).expect("n >= k leaves an unchosen row");
            taken[pad] = true;
            tracker.absorb(plan, data, &[pad]);
        }
    }
    let mut weights = vec![0usize; tracker.chosen.len()];
    tracker.labels.iter().for_each(|&l| weights[l] += 1);
    Ok(OversampledCandidates {
        rows: tracker.chosen,
        weights,
        psi,
        round_counts,
    })
}

pub fn init_kmeans_parallel<T: Scalar, R: Rng + ?Sized>(
    data: &DataMatrix<T>,
    k: usize,
    oversampling: f64,
    rounds: usize,
    rng: &mut R,
) -> Result<(PrototypeSet<T>, InitReport)> {
    init_kmeans_parallel_on(&ShardPlan::single(data.n_rows()), data, k, oversampling, rounds, rng)
}

/// K-means‖: oversampled candidates weighted by their Voronoi counts, then
/// reduced to `K` centers with [`weighted_cluster`].
///
/// Zero-weight candidates (exact duplicates of an earlier candidate) are
/// dropped. If fewer than `K` distinct candidates remain, every distinct
/// candidate becomes a center and duplicates fill the rest.
pub fn init_kmeans_parallel_on<T: Scalar, R: Rng + ?Sized>(
    plan: &ShardPlan,
    data: &DataMatrix<T>,
    k: usize,
    oversampling: f64,
    rounds: usize,
    rng: &mut R,
) -> Result<(PrototypeSet<T>, InitReport)> {
    let cand = kmeans_parallel_candidates(plan, data, k, oversampling, rounds, rng)?;
    let (positive, empty): (Vec<usize>, Vec<usize>) =
        (0..cand.rows.len()).partition(|&q| cand.weights[q] > 0);
    let protos = if positive.len() >= k {
        let rows: Vec<usize> = positive.iter().map(|&q| cand.rows[q]).collect();
        let w = positive
            .iter()
            .map(|&q| T::from_count(cand.weights[q]))
            .collect();
        let wp = WeightedPoints::new(data.select_rows(&rows)?, w)?;
        weighted_cluster(&wp, k, rng)?
    } else {
        let rows: Vec<usize> = positive
            .iter()
            .chain(&empty)
            .take(k)
            .map(|&q| cand.rows[q])
            .collect();
        PrototypeSet::new(data.select_rows(&rows)?)
    };
    let mut report = InitReport::new(InitMethod::Kmpar);
    report.psi = Some(cand.psi);
    report.round_candidates = Some(cand.round_counts);
    Ok((protos, report))
}

/// Result of one subset's work inside SK/SRPK.
struct SubsetOutcome<T> {
    protos: Option<PrototypeSet<T>>,
    local_sse: Option<f64>,
}

fn check_subsets(partition: &SubsetPartition, cfg: &ClusterConfig) -> Result<()> {
    cfg.validate()?;
    let smallest = partition.min_subset_len();
    if smallest < cfg.k {
        return Err(Error::TooFewRows {
            needed: cfg.k,
            available: smallest,
        });
    }
    Ok(())
}

/// Index of the smallest score; ties resolve to the lowest index.
fn argmin(scores: &[Option<f64>]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, s) in scores.iter().enumerate() {
        if let Some(v) = *s {
            if best.is_none_or(|(_, b)| v < b) {
                best = Some((i, v));
            }
        }
    }
    best.map(|(i, _)| i)
}

/// Runs `work` on every subset in parallel with per-subset streams derived from
/// `master`; outcomes come back in subset order.
fn for_each_subset<T, F>(
    data: &DataMatrix<T>,
    partition: &SubsetPartition,
    workers: usize,
    master: u64,
    work: F,
) -> Result<Vec<SubsetOutcome<T>>>
where
    T: Scalar,
    F: Fn(&ShardPlan, &DataMatrix<T>, &mut crate::rng::StreamRng) -> Result<SubsetOutcome<T>>
        + Sync,
{
    let group = workers_per_group(workers, partition.subset_count());
    (0..partition.subset_count())
        .into_par_iter()
        .map(|i| {
            let rows = partition.subset(i);
            let subset = data.select_rows(rows)?;
            let mut shard_rng = stream(master, Phase::Shard, i as u64);
            let plan = ShardPlan::random(rows.len(), group.min(rows.len()), &mut shard_rng)?;
            let mut rng = stream(master, Phase::Subset, i as u64);
            work(&plan, &subset, &mut rng)
        })
        .collect()
}

/// SK-means‖.
///
/// Each subset runs K-means‖ followed by at most `T_init` Lloyd iterations
/// (stopping early only when no assignment changes). The prototypes with the
/// smallest SSE on their own subset are returned.
pub fn init_sk_parallel<T: Scalar, R: Rng + ?Sized>(
    data: &DataMatrix<T>,
    partition: &SubsetPartition,
    cfg: &ClusterConfig,
    workers: usize,
    rng: &mut R,
) -> Result<(PrototypeSet<T>, InitReport)> {
    check_subsets(partition, cfg)?;
    let master = rng.next_u64();
    let outcomes = for_each_subset(data, partition, workers, master, |plan, xi, rng| {
        let (c0, _) = init_kmeans_parallel_on(plan, xi, cfg.k, cfg.oversampling, cfg.rounds, rng)?;
        let (ci, ai, _) = run_lloyd_on(plan, xi, &c0, cfg.t_init, 0)?;
        let local = sum_rows(plan, &ai.sq_dists)?.as_f64();
        Ok(SubsetOutcome {
            protos: Some(ci),
            local_sse: Some(local),
        })
    })?;
    select(InitMethod::Sk, outcomes, 0)
}

fn select<T: Scalar>(
    method: InitMethod,
    outcomes: Vec<SubsetOutcome<T>>,
    restarts: usize,
) -> Result<(PrototypeSet<T>, InitReport)> {
    let scores: Vec<Option<f64>> = outcomes.iter().map(|o| o.local_sse).collect();
    let best = argmin(&scores).ok_or(Error::RestartLimit(restarts))?;
    let protos = outcomes
        .into_iter()
        .nth(best)
        .and_then(|o| o.protos)
        .expect("scored subset carries prototypes");
    let mut report = InitReport::new(method);
    report.per_subset_local_sse = Some(scores);
    report.chosen_subset = Some(best);
    report.restarts = restarts;
    Ok((protos, report))
}

/// Restarts allowed when every subset yields an empty cluster.
pub const MAX_SRPK_RESTARTS: usize = 100;

/// SRPK-means‖.
///
/// Each subset is projected with its own random matrix, clustered there by
/// K-means‖ and `T_init` Lloyd iterations, and the resulting labels define
/// original-space cluster means. A subset whose labels leave a cluster empty is
/// excluded from selection; if all subsets are excluded the whole procedure
/// restarts with fresh randomness, up to [`MAX_SRPK_RESTARTS`] times.
pub fn init_srpk_parallel<T: Scalar, R: Rng + ?Sized>(
    data: &DataMatrix<T>,
    partition: &SubsetPartition,
    cfg: &ClusterConfig,
    workers: usize,
    rng: &mut R,
) -> Result<(PrototypeSet<T>, InitReport)> {
    check_subsets(partition, cfg)?;
    let m = data.n_cols();
    for restarts in 0..=MAX_SRPK_RESTARTS {
        let master = rng.next_u64();
        let outcomes = for_each_subset(data, partition, workers, master, |plan, xi, rng| {
            let r = sample_rp_matrix(m, cfg.rp_dim, cfg.rp_dist, rng)?;
            let projected = project(xi, &r)?;
            let (c0, _) =
                init_kmeans_parallel_on(plan, &projected, cfg.k, cfg.oversampling, cfg.rounds, rng)?;
            let (_, labels, _) = run_lloyd_on(plan, &projected, &c0, cfg.t_init, 0)?;
            Ok(match cluster_means_on(plan, xi, &labels, cfg.k)? {
                Some(ci) => {
                    let local = compute_sse_on(plan, xi, &ci)?.as_f64();
                    SubsetOutcome {
                        protos: Some(ci),
                        local_sse: Some(local),
                    }
                }
                None => SubsetOutcome {
                    protos: None,
                    local_sse: None,
                },
            })
        })?;
        if outcomes.iter().any(|o| o.local_sse.is_some()) {
            return select(InitMethod::Srpk, outcomes, restarts);
        }
    }
    Err(Error::RestartLimit(MAX_SRPK_RESTARTS))
}

/// Original-space prototypes from labels computed elsewhere (e.g. in a
/// projected space). `None` if any cluster is empty.
pub fn prototypes_from_labels<T: Scalar>(
    data: &DataMatrix<T>,
    labels: &[usize],
    k: usize,
) -> Result<Option<PrototypeSet<T>>> {
    let assign = Assignment {
        labels: labels.to_vec(),
        sq_dists: vec![T::zero(); labels.len()],
    };
    cluster_means_on(&ShardPlan::single(data.n_rows()), data, &assign, k)
}

/// Runs `method` end to end: builds the shard plan (and subset partition when
/// needed) from `rng`, initializes, and fills in the global initial SSE and
/// wall time.
pub fn initialize<T: Scalar, R: Rng + ?Sized>(
    method: InitMethod,
    data: &DataMatrix<T>,
    cfg: &ClusterConfig,
    workers: usize,
    rng: &mut R,
) -> Result<(PrototypeSet<T>, InitReport)> {
    cfg.validate()?;
    require_rows(data.n_rows(), cfg.k)?;
    let start = Instant::now();
    let plan_seed = rng.next_u64();
    let plan = ShardPlan::random(
        data.n_rows(),
        workers.clamp(1, data.n_rows()),
        &mut stream(plan_seed, Phase::Shard, u64::MAX),
    )?;
    let (protos, mut report) = match method {
        InitMethod::Random => (init_random(data, cfg.k, rng)?, InitReport::new(method)),
        InitMethod::Kmpp => (
            init_kmeanspp_on(&plan, data, cfg.k, rng)?,
            InitReport::new(method),
        ),
        InitMethod::Kmpar => {
            init_kmeans_parallel_on(&plan, data, cfg.k, cfg.oversampling, cfg.rounds, rng)?
        }
        InitMethod::Sk | InitMethod::Srpk => {
            let partition = partition_rows(data.n_rows(), cfg.subsets, rng)?;
            if method == InitMethod::Sk {
                init_sk_parallel(data, &partition, cfg, workers, rng)?
            } else {
                init_srpk_parallel(data, &partition, cfg, workers, rng)?
            }
        }
    };
    report.initial_sse = compute_sse_on(&plan, data, &protos)?.as_f64();
    report.wall_time = start.elapsed().as_secs_f64();
    Ok((protos, report))
}

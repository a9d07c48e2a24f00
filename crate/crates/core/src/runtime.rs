//! SPMD-style execution over row shards.
//!
//! Rows are split across `W` logical workers. Each primitive runs a pure task
//! per shard on the current rayon pool and then combines the shard results in
//! ascending worker order, so the combined value never depends on thread
//! scheduling. Combined results are returned to the caller, which plays the
//! role of the broadcast to every worker for the next phase.

use rand::Rng;
use rayon::prelude::*;

use crate::data::balanced_random_split;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Disjoint, covering, balanced assignment of rows to workers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShardPlan {
    shards: Vec<Vec<usize>>,
}

/// One worker's view: its index and its rows in ascending order.
#[derive(Debug, Clone, Copy)]
pub struct Shard<'a> {
    pub worker: usize,
    pub rows: &'a [usize],
}

impl ShardPlan {
    /// Random balanced disjoint shards. Each shard's rows are sorted so that
    /// per-shard accumulation runs in ascending row order.
    pub fn random<R: Rng + ?Sized>(n_rows: usize, workers: usize, rng: &mut R) -> Result<Self> {
        let mut shards = balanced_random_split(n_rows, workers, rng)?;
        shards.iter_mut().for_each(|s| s.sort_unstable());
        Ok(Self { shards })
    }

    /// Contiguous balanced blocks; worker counts above `n_rows` are clamped.
    pub fn contiguous(n_rows: usize, workers: usize) -> Self {
        let workers = workers.clamp(1, n_rows.max(1));
        let base = n_rows / workers;
        let extra = n_rows % workers;
        let mut shards = Vec::with_capacity(workers);
        let mut start = 0;
        for w in 0..workers {
            let len = base + usize::from(w < extra);
            shards.push((start..start + len).collect());
            start += len;
        }
        Self { shards }
    }

    pub fn single(n_rows: usize) -> Self {
        Self {
            shards: vec![(0..n_rows).collect()],
        }
    }

    pub fn worker_count(&self) -> usize {
        self.shards.len()
    }

    pub fn n_rows(&self) -> usize {
        self.shards.iter().map(Vec::len).sum()
    }

    pub fn shard_index_lists(&self) -> &[Vec<usize>] {
        &self.shards
    }

    pub fn shards(&self) -> impl ExactSizeIterator<Item = Shard<'_>> + '_ {
        self.shards
            .iter()
            .enumerate()
            .map(|(worker, rows)| Shard { worker, rows })
    }
}

/// Random balanced shard plan over `n_rows` rows for `workers` workers.
pub fn shard<R: Rng + ?Sized>(n_rows: usize, workers: usize, rng: &mut R) -> Result<ShardPlan> {
    ShardPlan::random(n_rows, workers, rng)
}

/// Runs `task` on every shard in parallel; results come back in worker order.
pub fn map_shards<U, F>(plan: &ShardPlan, task: F) -> Vec<U>
where
    U: Send,
    F: Fn(Shard<'_>) -> U + Sync,
{
    if plan.worker_count() == 1 {
        return plan.shards().map(task).collect();
    }
    plan.shards
        .par_iter()
        .enumerate()
        .map(|(worker, rows)| task(Shard { worker, rows }))
        .collect()
}

/// Sum-reduction of per-shard vectors, added in ascending worker order.
pub fn map_reduce_sum<T, F>(plan: &ShardPlan, task: F) -> Result<Vec<T>>
where
    T: Scalar,
    F: Fn(Shard<'_>) -> Vec<T> + Sync,
{
    let parts = map_shards(plan, task);
    let mut iter = parts.into_iter();
    let mut total = iter.next().unwrap_or_default();
    for part in iter {
        if part.len() != total.len() {
            return Err(Error::LengthMismatch {
                left: total.len(),
                right: part.len(),
            });
        }
        total.iter_mut().zip(part).for_each(|(t, p)| *t = *t + p);
    }
    Ok(total)
}

/// Gather: per-shard lists concatenated in ascending worker order.
pub fn map_gather<U, F>(plan: &ShardPlan, task: F) -> Vec<U>
where
    U: Send,
    F: Fn(Shard<'_>) -> Vec<U> + Sync,
{
    map_shards(plan, task).into_iter().flatten().collect()
}

/// Contiguous block of workers serving one data subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkerGroup {
    pub group_id: usize,
    pub worker_ids: Vec<usize>,
}

impl WorkerGroup {
    pub fn size(&self) -> usize {
        self.worker_ids.len()
    }
}

/// Splits `workers` into `subsets` contiguous groups of `workers / subsets`.
pub fn group_workers(workers: usize, subsets: usize) -> Result<Vec<WorkerGroup>> {
    if workers == 0 || subsets == 0 {
        return Err(Error::InvalidArgument(
            "worker and subset counts must be at least 1".into(),
        ));
    }
    if !workers.is_multiple_of(subsets) {
        return Err(Error::InvalidArgument(format!(
            "{workers} workers cannot be split evenly across {subsets} subsets"
        )));
    }
    let per = workers / subsets;
    Ok((0..subsets)
        .map(|g| WorkerGroup {
            group_id: g,
            worker_ids: (g * per..(g + 1) * per).collect(),
        })
        .collect())
}

/// Workers available to each of `subsets` groups out of `workers`; at least one.
pub fn workers_per_group(workers: usize, subsets: usize) -> usize {
    (workers / subsets.max(1)).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn eight_rows_four_workers() {
        let p = shard(8, 4, &mut rng(0)).unwrap();
        assert_eq!(p.worker_count(), 4);
        assert!(p.shard_index_lists().iter().all(|s| s.len() == 2));
        let mut all: Vec<usize> = p.shard_index_lists().iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn one_worker_holds_everything() {
        let p = shard(5, 1, &mut rng(3)).unwrap();
        assert_eq!(p.shard_index_lists(), &[vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn shard_is_deterministic_and_sorted() {
        let a = shard(101, 6, &mut rng(11)).unwrap();
        assert_eq!(a, shard(101, 6, &mut rng(11)).unwrap());
        assert!(a.shard_index_lists().iter().all(|s| s.windows(2).all(|w| w[0] < w[1])));
    }

    #[test]
    fn shard_needs_rows_per_worker() {
        assert!(matches!(
            shard(2, 3, &mut rng(0)),
            Err(Error::TooFewRows { .. })
        ));
    }

    #[test]
    fn reduce_row_count() {
        let p = shard(37, 5, &mut rng(1)).unwrap();
        let total = map_reduce_sum(&p, |s| vec![s.rows.len() as f64]).unwrap();
        assert_eq!(total, vec![37.0]);
        let single = ShardPlan::single(4);
        assert_eq!(map_reduce_sum(&single, |_| vec![1.5, 2.5]).unwrap(), vec![1.5, 2.5]);
    }

    #[test]
    fn reduce_rejects_ragged_results() {
        let p = ShardPlan::contiguous(4, 2);
        let err = map_reduce_sum(&p, |s| vec![0.0f64; s.worker + 1]).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { .. }));
    }

    #[test]
    fn gather_in_worker_order() {
        let p = ShardPlan::contiguous(6, 3);
        let out = map_gather(&p, |s| s.rows.to_vec());
        assert_eq!(out, (0..6).collect::<Vec<_>>());
        let empty: Vec<usize> = map_gather(&p, |_| Vec::new());
        assert!(empty.is_empty());
        let one = ShardPlan::single(3);
        assert_eq!(map_gather(&one, |s| s.rows.iter().map(|r| r * 10).collect()), vec![0, 10, 20]);
    }

    #[test]
    fn groups_of_four_for_thirty_two_workers() {
        let g = group_workers(32, 8).unwrap();
        assert_eq!(g.len(), 8);
        assert!(g.iter().all(|w| w.size() == 4));
        assert_eq!(g[2].worker_ids, vec![8, 9, 10, 11]);
        assert_eq!(group_workers(6, 1).unwrap()[0].worker_ids, (0..6).collect::<Vec<_>>());
        assert!(group_workers(5, 5).unwrap().iter().all(|w| w.size() == 1));
        assert!(group_workers(10, 4).is_err());
    }

    #[test]
    fn contiguous_clamps_worker_count() {
        let p = ShardPlan::contiguous(3, 8);
        assert_eq!(p.worker_count(), 3);
        assert_eq!(p.n_rows(), 3);
    }
}

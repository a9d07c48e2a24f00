//! K-means search phase: assignment, SSE, prototype updates, Lloyd's loop and
//! weighted clustering of candidate sets.
//!
//! Every data pass comes in two flavors: a plain function that runs on one
//! shard, and an `_on` variant that runs over a [`ShardPlan`]. Per-shard sums
//! accumulate in ascending row order and shards are combined in worker order,
//! so results are reproducible for a fixed plan.

use rand::Rng;

use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::runtime::{map_reduce_sum, map_shards, ShardPlan};
use crate::scalar::{sq_dist, Scalar};

/// `K × M` matrix of cluster centers.
#[derive(Debug, Clone, PartialEq)]
pub struct PrototypeSet<T> {
    centers: DataMatrix<T>,
}

impl<T: Scalar> PrototypeSet<T> {
    pub fn new(centers: DataMatrix<T>) -> Self {
        Self { centers }
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        DataMatrix::from_rows(rows).map(Self::new)
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.centers.n_rows()
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.centers.n_cols()
    }

    #[inline]
    pub fn center(&self, j: usize) -> &[T] {
        self.centers.row(j)
    }

    pub fn centers(&self) -> &DataMatrix<T> {
        &self.centers
    }

    pub fn into_matrix(self) -> DataMatrix<T> {
        self.centers
    }

    /// Index and squared distance of the nearest center; ties go to the lowest index.
    #[inline]
    pub fn nearest(&self, x: &[T]) -> (usize, T) {
        let mut best = 0;
        let mut best_d = sq_dist(x, self.center(0));
        for j in 1..self.k() {
            let d = sq_dist(x, self.center(j));
            if d < best_d {
                best = j;
                best_d = d;
            }
        }
        (best, best_d)
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.centers.rows().map(<[T]>::to_vec).collect()
    }
}

/// Nearest-prototype label and squared distance for every row.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment<T> {
    pub labels: Vec<usize>,
    pub sq_dists: Vec<T>,
}

impl<T: Scalar> Assignment<T> {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Sum of squared distances in ascending row order.
    pub fn sse(&self) -> T {
        self.sq_dists.iter().fold(T::zero(), |a, &d| a + d)
    }

    /// Number of rows whose label differs from `other`.
    pub fn changed_from(&self, other: &Assignment<T>) -> usize {
        self.labels
            .iter()
            .zip(&other.labels)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub fn cluster_sizes(&self, k: usize) -> Vec<usize> {
        let mut sizes = vec![0; k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }
}

/// Per-iteration trace of a Lloyd run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LloydStats {
    pub iterations: usize,
    pub sse_per_iter: Vec<f64>,
    pub changed_per_iter: Vec<usize>,
}

/// Candidate points with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPoints<T> {
    points: DataMatrix<T>,
    weights: Vec<T>,
}

impl<T: Scalar> WeightedPoints<T> {
    pub fn new(points: DataMatrix<T>, weights: Vec<T>) -> Result<Self> {
        if weights.len() != points.n_rows() {
            return Err(Error::LengthMismatch {
                left: points.n_rows(),
                right: weights.len(),
            });
        }
        if let Some(i) = weights.iter().position(|w| !(*w > T::zero() && w.is_finite())) {
            return Err(Error::InvalidArgument(format!(
                "weight {i} is {} (must be positive and finite)",
                weights[i]
            )));
        }
        Ok(Self { points, weights })
    }

    pub fn points(&self) -> &DataMatrix<T> {
        &self.points
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

fn check_dims<T: Scalar>(data: &DataMatrix<T>, protos: &PrototypeSet<T>) -> Result<()> {
    if data.n_cols() != protos.n_cols() {
        return Err(Error::DimensionMismatch {
            expected: data.n_cols(),
            found: protos.n_cols(),
        });
    }
    Ok(())
}

pub fn assign_points<T: Scalar>(
    data: &DataMatrix<T>,
    protos: &PrototypeSet<T>,
) -> Result<Assignment<T>> {
    assign_points_on(&ShardPlan::single(data.n_rows()), data, protos)
}

/// Labels every row with its nearest prototype (lowest index on ties).
pub fn assign_points_on<T: Scalar>(
    plan: &ShardPlan,
    data: &DataMatrix<T>,
    protos: &PrototypeSet<T>,
) -> Result<Assignment<T>> {
    check_dims(data, protos)?;
    let parts = map_shards(plan, |s| {
        s.rows
            .iter()
            .map(|&i| protos.nearest(data.row(i)))
            .collect::<Vec<_>>()
    });
    let n = data.n_rows();
    let mut labels = vec![0; n];
    let mut sq_dists = vec![T::zero(); n];
    for (shard, part) in plan.shards().zip(parts) {
        for (&i, (l, d)) in shard.rows.iter().zip(part) {
            labels[i] = l;
            sq_dists[i] = d;
        }
    }
    Ok(Assignment { labels, sq_dists })
}

pub fn compute_sse<T: Scalar>(data: &DataMatrix<T>, protos: &PrototypeSet<T>) -> Result<T> {
    compute_sse_on(&ShardPlan::single(data.n_rows()), data, protos)
}

/// `Σ_x min_c ‖c − x‖²`, reduced shard by shard in worker order.
pub fn compute_sse_on<T: Scalar>(
    plan: &ShardPlan,
    data: &DataMatrix<T>,
    protos: &PrototypeSet<T>,
) -> Result<T> {
    check_dims(data, protos)?;
    let total = map_reduce_sum(plan, |s| {
        vec![s
            .rows
            .iter()
            .fold(T::zero(), |acc, &i| acc + protos.nearest(data.row(i)).1)]
    })?;
    Ok(total[0])
}

pub fn update_prototypes<T: Scalar>(
    data: &DataMatrix<T>,
    assign: &Assignment<T>,
    k: usize,
    previous: &PrototypeSet<T>,
) -> Result<PrototypeSet<T>> {
    update_prototypes_on(&ShardPlan::single(data.n_rows()), data, assign, k, previous)
}

/// Cluster means of the assignment; an empty cluster keeps its previous center.
pub fn update_prototypes_on<T: Scalar>(
    plan: &ShardPlan,
    data: &DataMatrix<T>,
    assign: &Assignment<T>,
    k: usize,
    previous: &PrototypeSet<T>,
) -> Result<PrototypeSet<T>> {
    if previous.k() != k {
        return Err(Error::LengthMismatch {
            left: k,
            right: previous.k(),
        });
    }
    check_dims(data, previous)?;
    let (sums, counts) = accumulate_on(plan, data, assign, k)?;
    let m = data.n_cols();
    let mut centers = Vec::with_capacity(k * m);
    for j in 0..k {
        if counts[j] > T::zero() {
            centers.extend(sums[j * m..(j + 1) * m].iter().map(|&s| s / counts[j]));
        } else {
            centers.extend_from_slice(previous.center(j));
        }
    }
    DataMatrix::from_vec(k, m, centers).map(PrototypeSet::new)
}

/// Cluster means of the assignment, or `None` if some cluster is empty.
pub fn cluster_means_on<T: Scalar>(
    plan: &ShardPlan,
    data: &DataMatrix<T>,
    assign: &Assignment<T>,
    k: usize,
) -> Result<Option<PrototypeSet<T>>> {
    let (sums, counts) = accumulate_on(plan, data, assign, k)?;
    if counts.iter().any(|&c| c <= T::zero()) {
        return Ok(None);
    }
    let m = data.n_cols();
    let centers = sums
        .chunks_exact(m)
        .zip(&counts)
        .flat_map(|(s, &c)| s.iter().map(move |&v| v / c))
        .collect();
    DataMatrix::from_vec(k, m, centers).map(|c| Some(PrototypeSet::new(c)))
}

/// Per-cluster coordinate sums (`k·m`, row-major) and member counts.
fn accumulate_on<T: Scalar>(
    plan: &ShardPlan,
    data: &DataMatrix<T>,
    assign: &Assignment<T>,
    k: usize,
) -> Result<(Vec<T>, Vec<T>)> {
    if assign.len() != data.n_rows() {
        return Err(Error::LengthMismatch {
            left: data.n_rows(),
            right: assign.len(),
        });
    }
    if let Some(&bad) = assign.labels.iter().find(|&&l| l >= k) {
        return Err(Error::InvalidArgument(format!("label {bad} out of range for k = {k}")));
    }
    let m = data.n_cols();
    // layout: k·m coordinate sums followed by k counts
    let mut totals = map_reduce_sum(plan, |s| {
        let mut acc = vec![T::zero(); k * m + k];
        for &i in s.rows {
            let l = assign.labels[i];
            acc[l * m..(l + 1) * m]
                .iter_mut()
                .zip(data.row(i))
                .for_each(|(a, &x)| *a = *a + x);
            acc[k * m + l] = acc[k * m + l] + T::one();
        }
        acc
    })?;
    let counts = totals.split_off(k * m);
    Ok((totals, counts))
}

/// Result of [`run_lloyd`]: final prototypes, their assignment and the trace.
pub type LloydOutcome<T> = (PrototypeSet<T>, Assignment<T>, LloydStats);

pub fn run_lloyd<T: Scalar>(
    data: &DataMatrix<T>,
    init: &PrototypeSet<T>,
    max_iters: usize,
    conv_threshold: usize,
) -> Result<LloydOutcome<T>> {
    run_lloyd_on(&ShardPlan::single(data.n_rows()), data, init, max_iters, conv_threshold)
}

/// Lloyd's algorithm.
///
/// Each iteration recomputes the centers from the current assignment and then
/// reassigns. The run stops once an iteration changes at most `conv_threshold`
/// labels or after `max_iters` iterations. The first iteration's change count
/// is measured against the assignment under `init`.
pub fn run_lloyd_on<T: Scalar>(
    plan: &ShardPlan,
    data: &DataMatrix<T>,
    init: &PrototypeSet<T>,
    max_iters: usize,
    conv_threshold: usize,
) -> Result<LloydOutcome<T>> {
    let k = init.k();
    let mut protos = init.clone();
    let mut assign = assign_points_on(plan, data, &protos)?;
    let mut stats = LloydStats::default();
    while stats.iterations < max_iters {
        protos = update_prototypes_on(plan, data, &assign, k, &protos)?;
        let next = assign_points_on(plan, data, &protos)?;
        let changed = next.changed_from(&assign);
        let sse = map_reduce_sum(plan, |s| {
            vec![s.rows.iter().fold(T::zero(), |a, &i| a + next.sq_dists[i])]
        })?[0];
        assign = next;
        stats.iterations += 1;
        stats.sse_per_iter.push(sse.as_f64());
        stats.changed_per_iter.push(changed);
        if changed <= conv_threshold {
            break;
        }
    }
    Ok((protos, assign, stats))
}

/// Draws an index with probability proportional to `weights` (all ≥ 0, sum > 0).
pub(crate) fn sample_proportional<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    debug_assert!(total > 0.0);
    let target = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            acc += w;
            last_positive = i;
            if target < acc {
                return i;
            }
        }
    }
    // rounding left target at or above the running sum
    last_positive
}

/// Uniform draw among indices whose `taken` flag is false.
pub(crate) fn sample_unchosen<R: Rng + ?Sized>(taken: &[bool], rng: &mut R) -> Option<usize> {
    let free = taken.iter().filter(|t| !**t).count();
    if free == 0 {
        return None;
    }
    let pick = rng.random_range(0..free);
    taken
        .iter()
        .enumerate()
        .filter(|(_, t)| !**t)
        .nth(pick)
        .map(|(i, _)| i)
}

/// Upper bound on weighted Lloyd iterations; the candidate set is small and
/// Lloyd terminates in finitely many steps, so this only fires on float cycling.
const WEIGHTED_LLOYD_CAP: usize = 10_000;

/// Clusters a weighted candidate set into `k` centers.
///
/// Seeding is weighted K-means++ (first pick ∝ weight, later picks ∝ weight ×
/// squared distance to the chosen set, uniform over unchosen candidates once
/// every remaining distance is zero). Weighted Lloyd then runs until no
/// assignment changes.
pub fn weighted_cluster<T: Scalar, R: Rng + ?Sized>(
    candidates: &WeightedPoints<T>,
    k: usize,
    rng: &mut R,
) -> Result<PrototypeSet<T>> {
    let n = candidates.len();
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if n < k {
        return Err(Error::TooFewRows {
            needed: k,
            available: n,
        });
    }
    let pts = candidates.points();
    let w: Vec<f64> = candidates.weights().iter().map(|w| w.as_f64()).collect();

    let mut taken = vec![false; n];
    let first = sample_proportional(&w, rng);
    taken[first] = true;
    let mut chosen = vec![first];
    let mut d2: Vec<f64> = (0..n)
        .map(|i| sq_dist(pts.row(i), pts.row(first)).as_f64())
        .collect();
    while chosen.len() < k {
        let scores: Vec<f64> = (0..n)
            .map(|i| if taken[i] { 0.0 } else { w[i] * d2[i] })
            .collect();
        let next = if scores.iter().any(|&s| s > 0.0) {
            sample_proportional(&scores, rng)
        } else {
            sample_unchosen(&taken, rng).expect("n >= k leaves an unchosen candidate")
        };
        taken[next] = true;
        chosen.push(next);
        for i in 0..n {
            let d = sq_dist(pts.row(i), pts.row(next)).as_f64();
            if d < d2[i] {
                d2[i] = d;
            }
        }
    }
    let mut protos = PrototypeSet::new(pts.select_rows(&chosen)?);

    let m = pts.n_cols();
    let mut labels: Vec<usize> = (0..n).map(|i| protos.nearest(pts.row(i)).0).collect();
    for _ in 0..WEIGHTED_LLOYD_CAP {
        let mut sums = vec![T::zero(); k * m];
        let mut mass = vec![T::zero(); k];
        for i in 0..n {
            let l = labels[i];
            let wi = candidates.weights()[i];
            sums[l * m..(l + 1) * m]
                .iter_mut()
                .zip(pts.row(i))
                .for_each(|(s, &x)| *s = *s + wi * x);
            mass[l] = mass[l] + wi;
        }
        let mut centers = Vec::with_capacity(k * m);
        for j in 0..k {
            if mass[j] > T::zero() {
                centers.extend(sums[j * m..(j + 1) * m].iter().map(|&s| s / mass[j]));
            } else {
                centers.extend_from_slice(protos.center(j));
            }
        }
        protos = PrototypeSet::new(DataMatrix::from_vec(k, m, centers)?);
        let next: Vec<usize> = (0..n).map(|i| protos.nearest(pts.row(i)).0).collect();
        if next == labels {
            break;
        }
        labels = next;
    }
    Ok(protos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn col(v: &[f64]) -> DataMatrix<f64> {
        DataMatrix::from_vec(v.len(), 1, v.to_vec()).unwrap()
    }

    fn protos(v: &[f64]) -> PrototypeSet<f64> {
        PrototypeSet::new(col(v))
    }

    #[test]
    fn assign_one_dimensional() {
        let a = assign_points(&col(&[0.0, 2.0, 10.0]), &protos(&[1.0, 10.0])).unwrap();
        assert_eq!(a.labels, vec![0, 0, 1]);
        assert_eq!(a.sq_dists, vec![1.0, 1.0, 0.0]);
    }

    #[test]
    fn assign_tie_goes_to_lowest_index() {
        let a = assign_points(&col(&[5.0]), &protos(&[4.0, 6.0])).unwrap();
        assert_eq!(a.labels, vec![0]);
        let a = assign_points(&col(&[5.0]), &protos(&[6.0, 4.0, 4.0])).unwrap();
        assert_eq!(a.labels, vec![0]);
    }

    #[test]
    fn single_prototype_takes_everything() {
        let a = assign_points(&col(&[-3.0, 1.0, 8.0]), &protos(&[0.5])).unwrap();
        assert_eq!(a.labels, vec![0, 0, 0]);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let data = DataMatrix::from_vec(1, 2, vec![0.0, 0.0]).unwrap();
        assert!(matches!(
            assign_points(&data, &protos(&[1.0])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
        assert!(compute_sse(&data, &protos(&[1.0])).is_err());
    }

    #[test]
    fn sse_examples() {
        let d = col(&[0.0, 2.0, 10.0]);
        assert_eq!(compute_sse(&d, &protos(&[1.0, 10.0])).unwrap(), 2.0);
        assert_eq!(compute_sse(&d, &protos(&[0.0, 2.0, 10.0])).unwrap(), 0.0);
        let d2 = DataMatrix::from_rows(&[[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]]).unwrap();
        let p = PrototypeSet::from_rows(&[[0.0, 0.0]]).unwrap();
        assert_eq!(compute_sse(&d2, &p).unwrap(), 8.0);
    }

    #[test]
    fn update_means_and_empty_cluster_policy() {
        let d = col(&[0.0, 2.0, 10.0]);
        let a = Assignment {
            labels: vec![0, 0, 1],
            sq_dists: vec![0.0; 3],
        };
        let p = update_prototypes(&d, &a, 2, &protos(&[9.0, 9.0])).unwrap();
        assert_eq!(p.centers().values(), &[1.0, 10.0]);

        let all0 = Assignment {
            labels: vec![0, 0, 0],
            sq_dists: vec![0.0; 3],
        };
        let p = update_prototypes(&d, &all0, 2, &protos(&[-1.0, 42.0])).unwrap();
        assert_eq!(p.centers().values(), &[4.0, 42.0]);

        let fixed = update_prototypes(&d, &a, 2, &protos(&[1.0, 10.0])).unwrap();
        assert_eq!(fixed, protos(&[1.0, 10.0]));
    }

    #[test]
    fn update_rejects_out_of_range_labels() {
        let a = Assignment {
            labels: vec![2],
            sq_dists: vec![0.0],
        };
        assert!(update_prototypes(&col(&[1.0]), &a, 2, &protos(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn lloyd_converges_on_two_pairs() {
        let d = col(&[0.0, 2.0, 10.0, 12.0]);
        let (p, a, s) = run_lloyd(&d, &protos(&[0.0, 12.0]), 100, 0).unwrap();
        assert_eq!(p.centers().values(), &[1.0, 11.0]);
        assert_eq!(a.sse(), 4.0);
        assert_eq!(s.iterations, 1);
        assert_eq!(s.changed_per_iter, vec![0]);
        assert_eq!(s.sse_per_iter, vec![4.0]);
    }

    #[test]
    fn lloyd_zero_iterations_returns_init() {
        let d = col(&[0.0, 2.0, 10.0, 12.0]);
        let init = protos(&[0.0, 3.0]);
        let (p, a, s) = run_lloyd(&d, &init, 0, 0).unwrap();
        assert_eq!(p, init);
        assert_eq!(s.iterations, 0);
        assert_eq!(a, assign_points(&d, &init).unwrap());
    }

    #[test]
    fn lloyd_threshold_n_stops_after_one_iteration() {
        let d = col(&[0.0, 1.0, 2.0, 3.0, 50.0, 51.0, 100.0]);
        let (_, _, s) = run_lloyd(&d, &protos(&[0.0, 1.0, 2.0]), 100, d.n_rows()).unwrap();
        assert_eq!(s.iterations, 1);
    }

    #[test]
    fn lloyd_sharded_matches_single() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let vals: Vec<f64> = (0..600).map(|_| rng.random_range(-1.0..1.0)).collect();
        let d = DataMatrix::from_vec(200, 3, vals).unwrap();
        let init = PrototypeSet::new(d.select_rows(&[0, 1, 2, 3]).unwrap());
        let (p1, a1, s1) = run_lloyd(&d, &init, 50, 0).unwrap();
        let plan = crate::runtime::shard(200, 4, &mut rng).unwrap();
        let (p4, a4, s4) = run_lloyd_on(&plan, &d, &init, 50, 0).unwrap();
        assert_eq!(a1.labels, a4.labels);
        assert_eq!(s1.iterations, s4.iterations);
        for (x, y) in p1.centers().values().iter().zip(p4.centers().values()) {
            assert!((x - y).abs() <= 1e-12);
        }
        let rel = (a1.sse() - a4.sse()).abs() / a1.sse();
        assert!(rel <= 1e-12);
    }

    #[test]
    fn weighted_cluster_forced_when_k_equals_count() {
        let pts = DataMatrix::from_rows(&[[0.0, 0.0], [5.0, 1.0], [-2.0, 7.0]]).unwrap();
        let wp = WeightedPoints::new(pts.clone(), vec![1.0, 9.0, 3.5]).unwrap();
        let p = weighted_cluster(&wp, 3, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let mut got = p.to_rows();
        let mut want: Vec<Vec<f64>> = pts.rows().map(<[f64]>::to_vec).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(got, want);
    }

    #[test]
    fn weighted_cluster_single_center_is_weighted_mean() {
        let wp = WeightedPoints::new(col(&[0.0, 4.0]), vec![3.0, 1.0]).unwrap();
        let p = weighted_cluster(&wp, 1, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(p.centers().values(), &[1.0]);
        let one = WeightedPoints::new(col(&[2.0]), vec![1.0]).unwrap();
        let p = weighted_cluster(&one, 1, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(p.centers().values(), &[2.0]);
    }

    #[test]
    fn weighted_cluster_needs_enough_candidates() {
        let wp = WeightedPoints::new(col(&[0.0]), vec![1.0]).unwrap();
        assert!(weighted_cluster(&wp, 2, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn weighted_points_reject_nonpositive_weights() {
        assert!(WeightedPoints::new(col(&[0.0, 1.0]), vec![1.0, 0.0]).is_err());
        assert!(WeightedPoints::new(col(&[0.0]), vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn duplicate_candidates_fall_back_to_uniform_seeding() {
        let wp = WeightedPoints::new(col(&[3.0, 3.0, 3.0]), vec![1.0, 1.0, 1.0]).unwrap();
        let p = weighted_cluster(&wp, 2, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        assert_eq!(p.centers().values(), &[3.0, 3.0]);
    }

    #[test]
    fn works_in_single_precision() {
        let d = DataMatrix::<f32>::from_vec(4, 1, vec![0.0, 2.0, 10.0, 12.0]).unwrap();
        let init = PrototypeSet::new(DataMatrix::from_vec(2, 1, vec![0.0f32, 12.0]).unwrap());
        let (p, a, _) = run_lloyd(&d, &init, 10, 0).unwrap();
        assert_eq!(p.centers().values(), &[1.0f32, 11.0]);
        assert_eq!(a.sse(), 4.0f32);
    }
}

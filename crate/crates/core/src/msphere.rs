//! M-spheres synthetic dataset generator.
//!
//! Cluster centers are placed by a random walk: each new center lies exactly
//! `d_c` from a randomly chosen existing center and is accepted only if that
//! parent is its unique nearest center, so the minimum pairwise center
//! distance is exactly `d_c`. Each cluster then receives `N_K` points on
//! spheres around its center with radius uniform on `(0, d_r]`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::kmeans::PrototypeSet;
use crate::rng::{stream, Phase};
use crate::scalar::{sq_dist, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereSpec {
    pub k: usize,
    pub m: usize,
    pub n_per_cluster: usize,
    /// Distance from every center to its nearest other center (`d_c`).
    pub center_dist: f64,
    /// Maximum distance of a point from its center (`d_r`).
    pub radius: f64,
    pub seed: u64,
}

impl SphereSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidArgument(s.to_string()));
        if self.k == 0 || self.m == 0 || self.n_per_cluster == 0 {
            return bad("k, m and n_per_cluster must all be at least 1");
        }
        if !(self.center_dist > 0.0 && self.center_dist.is_finite()) {
            return bad("center distance must be positive and finite");
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return bad("radius must be positive and finite");
        }
        Ok(())
    }

    pub fn n_rows(&self) -> usize {
        self.k * self.n_per_cluster
    }
}

/// Generated data with ground-truth labels and the generating centers.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset<T> {
    pub data: DataMatrix<T>,
    pub labels: Vec<usize>,
    pub centers: PrototypeSet<T>,
}

/// Uniform point on the sphere of radius `d` around `center`: a standard
/// normal vector scaled to length `d`.
pub fn randsurfpoint<T: Scalar, R: Rng + ?Sized>(center: &[T], d: T, rng: &mut R) -> Vec<T> {
    if d == T::zero() {
        return center.to_vec();
    }
    loop {
        let x: Vec<f64> = (0..center.len()).map(|_| rng.sample(StandardNormal)).collect();
        let s: f64 = x.iter().map(|v| v * v).sum();
        if s > 0.0 && s.is_finite() {
            let scale = d.as_f64() / s.sqrt();
            return center
                .iter()
                .zip(&x)
                .map(|(&c, &v)| c + T::lit(scale * v))
                .collect();
        }
    }
}

/// Consecutive rejected center proposals tolerated before giving up.
pub const MAX_CONSECUTIVE_REJECTIONS: u64 = 1_000_000;

/// Places `K` centers starting from the origin.
pub fn generate_centers<T: Scalar, R: Rng + ?Sized>(
    spec: &SphereSpec,
    rng: &mut R,
) -> Result<PrototypeSet<T>> {
    place_centers(spec, MAX_CONSECUTIVE_REJECTIONS, rng)
}

fn place_centers<T: Scalar, R: Rng + ?Sized>(
    spec: &SphereSpec,
    max_rejections: u64,
    rng: &mut R,
) -> Result<PrototypeSet<T>> {
    spec.validate()?;
    let dc = T::lit(spec.center_dist);
    let mut centers: Vec<Vec<T>> = vec![vec![T::zero(); spec.m]];
    if spec.k > 1 {
        let c2 = randsurfpoint(&centers[0], dc, rng);
        centers.push(c2);
    }
    let mut rejections = 0u64;
    while centers.len() < spec.k {
        let parent = rng.random_range(0..centers.len());
        let cand = randsurfpoint(&centers[parent], dc, rng);
        let to_parent = sq_dist(&cand, &centers[parent]);
        let parent_is_unique_nearest = centers
            .iter()
            .enumerate()
            .all(|(j, c)| j == parent || sq_dist(&cand, c) > to_parent);
        if parent_is_unique_nearest {
            centers.push(cand);
            rejections = 0;
        } else {
            rejections += 1;
            if rejections >= max_rejections {
                return Err(Error::RejectionLimit(rejections));
            }
        }
    }
    PrototypeSet::from_rows(&centers)
}

/// Generates the full labeled dataset, rows ordered cluster by cluster.
pub fn generate_dataset<T: Scalar, R: Rng + ?Sized>(
    spec: &SphereSpec,
    rng: &mut R,
) -> Result<LabeledDataset<T>> {
    let centers = generate_centers::<T, _>(spec, rng)?;
    let mut values = Vec::with_capacity(spec.n_rows() * spec.m);
    let mut labels = Vec::with_capacity(spec.n_rows());
    for k in 0..spec.k {
        for _ in 0..spec.n_per_cluster {
            // 1 − v with v ∈ [0, 1) lands in (0, 1]
            let u = spec.radius * (1.0 - rng.random::<f64>());
            values.extend(randsurfpoint(centers.center(k), T::lit(u), rng));
            labels.push(k);
        }
    }
    Ok(LabeledDataset {
        data: DataMatrix::from_vec(spec.n_rows(), spec.m, values)?,
        labels,
        centers,
    })
}

/// Generates from the spec's own seed.
pub fn generate<T: Scalar>(spec: &SphereSpec) -> Result<LabeledDataset<T>> {
    generate_dataset(spec, &mut stream(spec.seed, Phase::Generate, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec(k: usize, m: usize, nk: usize, dc: f64, dr: f64) -> SphereSpec {
        SphereSpec {
            k,
            m,
            n_per_cluster: nk,
            center_dist: dc,
            radius: dr,
            seed: 3,
        }
    }

    #[test]
    fn zero_radius_returns_center() {
        let c = [1.5, -2.0, 0.25];
        assert_eq!(randsurfpoint(&c, 0.0, &mut ChaCha8Rng::seed_from_u64(0)), c.to_vec());
    }

    #[test]
    fn points_lie_on_the_sphere() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = [3.0f64, -1.0, 0.5, 7.0, 2.0];
        for _ in 0..1000 {
            let x = randsurfpoint(&c, 0.7, &mut rng);
            let r: f64 = sq_dist(&x, &c).sqrt();
            assert!((r - 0.7).abs() <= 1e-9 * 0.7);
        }
    }

    #[test]
    fn one_dimension_gives_both_signs_evenly() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 10_000;
        let mut plus = 0;
        for _ in 0..n {
            let x = randsurfpoint(&[5.0], 2.0, &mut rng)[0];
            assert!(x == 7.0 || x == 3.0, "{x}");
            plus += usize::from(x == 7.0);
        }
        // sd = sqrt(n/4) = 50
        assert!((plus as f64 - 5000.0).abs() < 4.0 * 50.0);
    }

    #[test]
    fn single_center_is_origin() {
        let c = generate_centers::<f64, _>(&spec(1, 4, 1, 0.1, 1.0), &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(c.k(), 1);
        assert_eq!(c.center(0), &[0.0; 4]);
    }

    #[test]
    fn two_centers_are_dc_apart() {
        let c = generate_centers::<f64, _>(&spec(2, 50, 1, 0.2, 1.0), &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        assert!((sq_dist(c.center(0), c.center(1)).sqrt() - 0.2).abs() <= 1e-9);
    }

    #[test]
    fn min_pairwise_center_distance_is_dc() {
        for (m, seed) in [(2, 5u64), (3, 6), (20, 7), (200, 8)] {
            let c = generate_centers::<f64, _>(&spec(12, m, 1, 0.05, 1.0), &mut ChaCha8Rng::seed_from_u64(seed))
                .unwrap();
            let mut min = f64::INFINITY;
            for i in 0..c.k() {
                for j in 0..i {
                    min = min.min(sq_dist(c.center(i), c.center(j)).sqrt());
                }
            }
            assert!((min - 0.05).abs() <= 1e-9, "m={m}: {min}");
        }
    }

    #[test]
    fn rejection_guard_reports_error() {
        // on a line, a proposal from an interior parent lands on an existing
        // center and is rejected; a guard of one rejection must trip
        let s = spec(30, 1, 1, 1.0, 1.0);
        let tripped = (0..20).any(|seed| {
            matches!(
                place_centers::<f64, _>(&s, 1, &mut ChaCha8Rng::seed_from_u64(seed)),
                Err(Error::RejectionLimit(1))
            )
        });
        assert!(tripped);
    }

    #[test]
    fn dataset_shape_labels_and_radii() {
        let s = spec(4, 10, 250, 0.1, 1.0);
        let ds = generate_dataset::<f64, _>(&s, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(ds.data.n_rows(), 1000);
        assert_eq!(ds.data.n_cols(), 10);
        let mut hist = [0usize; 4];
        for (i, &l) in ds.labels.iter().enumerate() {
            hist[l] += 1;
            let r = sq_dist(ds.data.row(i), ds.centers.center(l)).sqrt();
            assert!(r > 0.0 && r <= 1.0 + 1e-12);
        }
        assert_eq!(hist, [250; 4]);
        // cluster-major row order
        assert!(ds.labels.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn radius_fraction_is_linear_in_a() {
        let s = spec(1, 30, 4000, 0.1, 2.0);
        let ds = generate_dataset::<f64, _>(&s, &mut ChaCha8Rng::seed_from_u64(10)).unwrap();
        let inside = ds
            .data
            .rows()
            .filter(|r| sq_dist(r, ds.centers.center(0)).sqrt() <= 1.0)
            .count() as f64
            / 4000.0;
        // p = 0.5, sd = sqrt(0.25/4000) ≈ 0.0079
        assert!((inside - 0.5).abs() <= 3.0 * 0.0079, "{inside}");
    }

    #[test]
    fn label_consistency_when_well_separated() {
        let s = spec(5, 8, 100, 3.0, 1.0);
        let ds = generate::<f64>(&s).unwrap();
        for (i, &l) in ds.labels.iter().enumerate() {
            assert_eq!(ds.centers.nearest(ds.data.row(i)).0, l);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let s = spec(3, 6, 20, 0.1, 1.0);
        assert_eq!(generate::<f64>(&s).unwrap(), generate::<f64>(&s).unwrap());
        let s32 = generate::<f32>(&s).unwrap();
        assert_eq!(s32.data.n_rows(), 60);
    }

    #[test]
    fn spec_validation() {
        assert!(spec(0, 1, 1, 0.1, 1.0).validate().is_err());
        assert!(spec(1, 1, 1, 0.0, 1.0).validate().is_err());
        assert!(spec(1, 1, 1, 0.1, -1.0).validate().is_err());
    }
}

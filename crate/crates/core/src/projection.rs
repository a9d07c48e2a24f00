//! Achlioptas random projection: `X̃ = (1/√P)·X·R`.

use rand::Rng;
use rayon::prelude::*;

use crate::config::RpDistribution;
use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `M × P` random matrix with entries in {−1, 0, +1}, stored row-major.
///
/// The `1/√P` factor is applied by [`project`], not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RpMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<i8>,
    dist: RpDistribution,
}

impl RpMatrix {
    pub fn from_entries(
        n_rows: usize,
        n_cols: usize,
        entries: Vec<i8>,
        dist: RpDistribution,
    ) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::Empty);
        }
        if entries.len() != n_rows * n_cols {
            return Err(Error::SizeMismatch {
                expected: (n_rows * n_cols) as u64,
                found: entries.len() as u64,
            });
        }
        let allowed = |e: i8| match dist {
            RpDistribution::PlusMinusOne => e == 1 || e == -1,
            RpDistribution::Sparse => (-1..=1).contains(&e),
        };
        if let Some(bad) = entries.iter().find(|&&e| !allowed(e)) {
            return Err(Error::InvalidArgument(format!(
                "entry {bad} not allowed for {dist:?}"
            )));
        }
        Ok(Self {
            n_rows,
            n_cols,
            entries,
            dist,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn dist(&self) -> RpDistribution {
        self.dist
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n_cols + j]
    }
}

/// Samples an `m × p` matrix with i.i.d. entries from `dist`.
pub fn sample_rp_matrix<R: Rng + ?Sized>(
    m: usize,
    p: usize,
    dist: RpDistribution,
    rng: &mut R,
) -> Result<RpMatrix> {
    if m == 0 || p == 0 {
        return Err(Error::InvalidArgument(format!(
            "projection shape {m}x{p} must be at least 1x1"
        )));
    }
    let entries = (0..m * p)
        .map(|_| match dist {
            RpDistribution::PlusMinusOne => {
                if rng.random::<bool>() {
                    1
                } else {
                    -1
                }
            }
            RpDistribution::Sparse => match rng.random_range(0u8..6) {
                0 => 1,
                1 => -1,
                _ => 0,
            },
        })
        .collect();
    RpMatrix::from_entries(m, p, entries, dist)
}

/// Projects every row: `row_i ↦ (1/√P)·(x_i·R)`.
///
/// Each output entry is accumulated over input coordinates in ascending order;
/// rows are processed in parallel.
pub fn project<T: Scalar>(data: &DataMatrix<T>, r: &RpMatrix) -> Result<DataMatrix<T>> {
    if data.n_cols() != r.n_rows() {
        return Err(Error::DimensionMismatch {
            expected: data.n_cols(),
            found: r.n_rows(),
        });
    }
    let p = r.n_cols();
    let scale = T::one() / T::from_count(p).sqrt();
    let weights: Vec<T> = r.entries.iter().map(|&e| T::lit(f64::from(e))).collect();
    let mut out = vec![T::zero(); data.n_rows() * p];
    out.par_chunks_mut(p)
        .zip(data.values().par_chunks(data.n_cols()))
        .for_each(|(dst, x)| {
            for (j, &xj) in x.iter().enumerate() {
                let rj = &weights[j * p..(j + 1) * p];
                dst.iter_mut().zip(rj).for_each(|(d, &w)| *d = *d + xj * w);
            }
            dst.iter_mut().for_each(|d| *d = *d * scale);
        });
    DataMatrix::from_vec(data.n_rows(), p, out)
}

//! Dense observation matrices, min-max scaling and subset partitions.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `n_rows × n_cols` row-major matrix of finite values; one row per observation.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix<T> {
    n_rows: usize,
    n_cols: usize,
    values: Vec<T>,
}

impl<T: Scalar> DataMatrix<T> {
    /// Builds a matrix from row-major values, rejecting empty shapes, wrong
    /// lengths and non-finite entries.
    pub fn from_vec(n_rows: usize, n_cols: usize, values: Vec<T>) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::Empty);
        }
        let expected = n_rows
            .checked_mul(n_cols)
            .ok_or_else(|| Error::InvalidArgument(format!("shape {n_rows}x{n_cols} overflows")))?;
        if values.len() != expected {
            return Err(Error::SizeMismatch {
                expected: expected as u64,
                found: values.len() as u64,
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / n_cols + 1,
                col: pos % n_cols + 1,
            });
        }
        Ok(Self {
            n_rows,
            n_cols,
            values,
        })
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::Empty)?.as_ref().len();
        let mut values = Vec::with_capacity(rows.len() * first);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != first {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: first,
                    found: r.len(),
                });
            }
            values.extend_from_slice(r);
        }
        Self::from_vec(rows.len(), first, values)
    }

    /// Copies the listed rows, in list order, into a new matrix.
    pub fn select_rows(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::Empty);
        }
        let mut values = Vec::with_capacity(indices.len() * self.n_cols);
        for &i in indices {
            if i >= self.n_rows {
                return Err(Error::InvalidArgument(format!(
                    "row index {i} out of range for {} rows",
                    self.n_rows
                )));
            }
            values.extend_from_slice(self.row(i));
        }
        Ok(Self {
            n_rows: indices.len(),
            n_cols: self.n_cols,
            values,
        })
    }

    /// Lossless for `f32 → f64`; rounds for `f64 → f32`.
    pub fn cast<U: Scalar>(&self) -> DataMatrix<U> {
        DataMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            values: self
                .values
                .iter()
                .map(|&v| U::lit(v.as_f64()))
                .collect(),
        }
    }
}

impl<T> DataMatrix<T> {
    #[inline]
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.values[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[T]> + '_ {
        self.values.chunks_exact(self.n_cols)
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }
}

/// Maps every column affinely onto `[-1, 1]`.
///
/// Column `j` becomes `2·(x − min_j)/(max_j − min_j) − 1`; constant columns map to 0.
pub fn minmax_scale<T: Scalar>(data: &DataMatrix<T>) -> DataMatrix<T> {
    let m = data.n_cols;
    let mut lo = data.row(0).to_vec();
    let mut hi = lo.clone();
    for row in data.rows() {
        for j in 0..m {
            lo[j] = lo[j].min(row[j]);
            hi[j] = hi[j].max(row[j]);
        }
    }
    let two = T::lit(2.0);
    let mut values = Vec::with_capacity(data.values.len());
    for row in data.rows() {
        for j in 0..m {
            let range = hi[j] - lo[j];
            let v = if range > T::zero() {
                // clamp guards the last ulp of rounding at the endpoints
                (two * (row[j] - lo[j]) / range - T::one()).max(-T::one()).min(T::one())
            } else {
                T::zero()
            };
            values.push(v);
        }
    }
    DataMatrix {
        n_rows: data.n_rows,
        n_cols: m,
        values,
    }
}

/// Disjoint, balanced split of row indices into `S` subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetPartition {
    row_index_lists: Vec<Vec<usize>>,
}

impl SubsetPartition {
    /// Validates disjointness, coverage of `0..n_rows` and balance (±1).
    pub fn from_lists(n_rows: usize, row_index_lists: Vec<Vec<usize>>) -> Result<Self> {
        if row_index_lists.is_empty() {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n_rows];
        let mut total = 0usize;
        for list in &row_index_lists {
            for &i in list {
                if i >= n_rows || seen[i] {
                    return Err(Error::InvalidArgument(format!(
                        "row {i} out of range or repeated in partition"
                    )));
                }
                seen[i] = true;
                total += 1;
            }
        }
        if total != n_rows {
            return Err(Error::InvalidArgument(format!(
                "partition covers {total} of {n_rows} rows"
            )));
        }
        let sizes = row_index_lists.iter().map(Vec::len);
        let (min, max) = sizes.fold((usize::MAX, 0), |(a, b), s| (a.min(s), b.max(s)));
        if max - min > 1 {
            return Err(Error::InvalidArgument(format!(
                "unbalanced partition: sizes range {min}..={max}"
            )));
        }
        Ok(Self { row_index_lists })
    }

    /// A single subset holding every row in ascending order.
    pub fn whole(n_rows: usize) -> Self {
        Self {
            row_index_lists: vec![(0..n_rows).collect()],
        }
    }

    pub fn subset_count(&self) -> usize {
        self.row_index_lists.len()
    }

    pub fn subset(&self, i: usize) -> &[usize] {
        &self.row_index_lists[i]
    }

    pub fn lists(&self) -> &[Vec<usize>] {
        &self.row_index_lists
    }

    pub fn min_subset_len(&self) -> usize {
        self.row_index_lists.iter().map(Vec::len).min().unwrap_or(0)
    }
}

/// Splits `0..n_rows` into `subsets` balanced blocks of a uniformly random
/// permutation. The first `n_rows % subsets` blocks get the extra row.
pub(crate) fn balanced_random_split<R: Rng + ?Sized>(
    n_rows: usize,
    parts: usize,
    rng: &mut R,
) -> Result<Vec<Vec<usize>>> {
    if parts == 0 {
        return Err(Error::InvalidArgument("part count must be at least 1".into()));
    }
    if n_rows < parts {
        return Err(Error::TooFewRows {
            needed: parts,
            available: n_rows,
        });
    }
    let mut perm: Vec<usize> = (0..n_rows).collect();
    perm.shuffle(rng);
    let base = n_rows / parts;
    let extra = n_rows % parts;
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for p in 0..parts {
        let len = base + usize::from(p < extra);
        out.push(perm[start..start + len].to_vec());
        start += len;
    }
    Ok(out)
}

/// Random disjoint partition of `0..n_rows` into `subsets` near-equal blocks.
pub fn partition_rows<R: Rng + ?Sized>(
    n_rows: usize,
    subsets: usize,
    rng: &mut R,
) -> Result<SubsetPartition> {
    Ok(SubsetPartition {
        row_index_lists: balanced_random_split(n_rows, subsets, rng)?,
    })
}

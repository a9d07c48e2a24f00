//! External clustering evaluation: entropy, contingency tables and NMI.
//!
//! Sums over classes or table cells are taken over the sorted terms, so the
//! results do not depend on label order and `nmi(a, b) == nmi(b, a)` holds
//! bit for bit.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Cross-tabulation of two labelings of the same items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contingency {
    /// `table[r][c]` = items with class `r` in the first labeling and class `c`
    /// in the second; classes are the distinct labels in ascending order.
    pub table: Vec<Vec<usize>>,
    pub row_sums: Vec<usize>,
    pub col_sums: Vec<usize>,
    pub total: usize,
}

fn compact(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut ids = BTreeMap::new();
    for &l in labels {
        ids.entry(l).or_insert(0usize);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    (labels.iter().map(|l| ids[l]).collect(), ids.len())
}

impl Contingency {
    pub fn new(a: &[usize], b: &[usize]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        if a.is_empty() {
            return Err(Error::Empty);
        }
        let (ra, na) = compact(a);
        let (rb, nb) = compact(b);
        let mut table = vec![vec![0usize; nb]; na];
        for (&r, &c) in ra.iter().zip(&rb) {
            table[r][c] += 1;
        }
        let row_sums = table.iter().map(|r| r.iter().sum()).collect();
        let col_sums = (0..nb).map(|c| table.iter().map(|r| r[c]).sum()).collect();
        Ok(Self {
            table,
            row_sums,
            col_sums,
            total: a.len(),
        })
    }

    /// Mutual information in nats.
    pub fn mutual_information(&self) -> f64 {
        let n = self.total as f64;
        let mut terms = Vec::new();
        for (r, row) in self.table.iter().enumerate() {
            for (c, &nrc) in row.iter().enumerate() {
                if nrc > 0 {
                    let nrc = nrc as f64;
                    let outer = self.row_sums[r] as f64 * self.col_sums[c] as f64;
                    terms.push(nrc / n * (n * nrc / outer).ln());
                }
            }
        }
        sorted_sum(terms)
    }

    /// True when the two labelings agree up to a renaming of classes.
    pub fn is_bijective(&self) -> bool {
        self.row_sums.len() == self.col_sums.len()
            && self
                .table
                .iter()
                .all(|row| row.iter().filter(|&&v| v > 0).count() == 1)
    }
}

fn sorted_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    terms.into_iter().sum()
}

fn entropy_of_counts(counts: &[usize], total: usize) -> f64 {
    let n = total as f64;
    let terms = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .collect();
    sorted_sum(terms).max(0.0)
}

/// Shannon entropy of a labeling in nats.
pub fn entropy(labels: &[usize]) -> Result<f64> {
    if labels.is_empty() {
        return Err(Error::Empty);
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in labels {
        *counts.entry(l).or_default() += 1;
    }
    let counts: Vec<usize> = counts.into_values().collect();
    Ok(entropy_of_counts(&counts, labels.len()))
}

/// Normalized mutual information `I(A;B) / √(H(A)·H(B))`.
///
/// When either entropy is zero the result is 1 if the labelings match up to
/// renaming and 0 otherwise.
pub fn nmi(labels_a: &[usize], labels_b: &[usize]) -> Result<f64> {
    let ct = Contingency::new(labels_a, labels_b)?;
    let ha = entropy_of_counts(&ct.row_sums, ct.total);
    let hb = entropy_of_counts(&ct.col_sums, ct.total);
    let denom = ha * hb;
    if denom <= 0.0 {
        return Ok(if ct.is_bijective() { 1.0 } else { 0.0 });
    }
    Ok((ct.mutual_information() / denom.sqrt()).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&[3, 3, 3]).unwrap(), 0.0);
        assert!((entropy(&[0, 0, 1, 1]).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((entropy(&[0, 1, 2, 3]).unwrap() - 4f64.ln()).abs() < 1e-15);
        assert!(matches!(entropy(&[]), Err(Error::Empty)));
    }

    #[test]
    fn nmi_examples() {
        assert_eq!(nmi(&[0, 1, 1, 2], &[0, 1, 1, 2]).unwrap(), 1.0);
        assert!((nmi(&[0, 0, 1, 1], &[1, 1, 0, 0]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(nmi(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap(), 0.0);
    }

    #[test]
    fn nmi_degenerate_cases() {
        assert_eq!(nmi(&[0, 0, 0], &[5, 5, 5]).unwrap(), 1.0);
        assert_eq!(nmi(&[0, 0, 0], &[0, 1, 1]).unwrap(), 0.0);
        assert!(matches!(nmi(&[0], &[0, 1]), Err(Error::LengthMismatch { .. })));
        assert!(matches!(nmi(&[], &[]), Err(Error::Empty)));
    }

    #[test]
    fn contingency_margins() {
        let ct = Contingency::new(&[0, 0, 1, 2], &[7, 8, 8, 8]).unwrap();
        assert_eq!(ct.table, vec![vec![1, 1], vec![0, 1], vec![0, 1]]);
        assert_eq!(ct.row_sums, vec![2, 1, 1]);
        assert_eq!(ct.col_sums, vec![1, 3]);
        assert_eq!(ct.total, 4);
    }

    fn labels(n: usize, k: usize) -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(0..k, n)
    }

    proptest! {
        #[test]
        fn symmetric_and_in_range((a, b) in (1usize..60).prop_flat_map(|n| (labels(n, 5), labels(n, 4)))) {
            let ab = nmi(&a, &b).unwrap();
            let ba = nmi(&b, &a).unwrap();
            prop_assert_eq!(ab.to_bits(), ba.to_bits());
            prop_assert!((0.0..=1.0 + 1e-12).contains(&ab));
        }

        #[test]
        fn relabeling_invariant(
            (a, b) in (1usize..60).prop_flat_map(|n| (labels(n, 5), labels(n, 5))),
            shift in 1usize..100,
        ) {
            // bijection on class names: reverse order then offset
            let pb: Vec<usize> = b.iter().map(|&l| (4 - l) * 3 + shift).collect();
            prop_assert_eq!(nmi(&a, &b).unwrap().to_bits(), nmi(&a, &pb).unwrap().to_bits());
        }

        #[test]
        fn contingency_entropy_consistent((a, b) in (1usize..60).prop_flat_map(|n| (labels(n, 6), labels(n, 3)))) {
            let ct = Contingency::new(&a, &b).unwrap();
            let h = entropy_of_counts(&ct.row_sums, ct.total);
            prop_assert!((h - entropy(&a).unwrap()).abs() <= 1e-12);
            prop_assert_eq!(ct.table.iter().flatten().sum::<usize>(), a.len());
        }
    }
}

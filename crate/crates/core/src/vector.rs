//! Finitely supported coefficient sequences.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Finite set of basis indices.
pub type IndexSet = BTreeSet<usize>;

/// A finitely supported real sequence `x = sum a_k e_k`, indices `k >= 1`.
///
/// Entries are kept sorted by index and exact zeros are never stored, so
/// the support is exactly the set of stored indices.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseVector {
    entries: Vec<(usize, f64)>,
}

impl SparseVector {
    /// The zero vector.
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a vector from `(index, coefficient)` pairs.
    ///
    /// Zero coefficients are dropped. Index 0, repeated indices and
    /// non-finite coefficients are rejected.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, f64)>,
    {
        let mut entries: Vec<(usize, f64)> = pairs.into_iter().collect();
        entries.sort_by_key(|&(k, _)| k);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Argument(alloc::format!(
                    "index {} given twice",
                    w[0].0
                )));
            }
        }
        for &(k, a) in &entries {
            if k == 0 {
                return Err(Error::Argument("indices start at 1".into()));
            }
            if !a.is_finite() {
                return Err(Error::Argument(alloc::format!(
                    "coefficient at {k} is not finite"
                )));
            }
        }
        entries.retain(|&(_, a)| a != 0.0);
        Ok(Self { entries })
    }

    /// `1_Γ`: coefficient one on every index of `set`.
    pub fn indicator<I: IntoIterator<Item = usize>>(set: I) -> Self {
        let mut entries: Vec<(usize, f64)> = set.into_iter().map(|k| (k, 1.0)).collect();
        entries.sort_by_key(|&(k, _)| k);
        entries.dedup_by_key(|e| e.0);
        debug_assert!(entries.first().is_none_or(|e| e.0 >= 1));
        Self { entries }
    }

    /// Trusted constructor: entries sorted, unique, nonzero.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, f64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| e.1 != 0.0));
        Self { entries }
    }

    /// Coefficient at `index` (zero off the support).
    pub fn get(&self, index: usize) -> f64 {
        self.entries
            .binary_search_by_key(&index, |e| e.0)
            .map(|i| self.entries[i].1)
            .unwrap_or(0.0)
    }

    /// Number of nonzero coefficients.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True for the zero vector.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in ascending index order.
    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    /// Iterates `(index, coefficient)` in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().copied()
    }

    /// Support indices in ascending order.
    pub fn support(&self) -> IndexSet {
        self.entries.iter().map(|e| e.0).collect()
    }

    /// Largest index in the support, 0 for the zero vector.
    pub fn max_index(&self) -> usize {
        self.entries.last().map_or(0, |e| e.0)
    }

    /// `t * x`.
    pub fn scaled(&self, t: f64) -> Self {
        if t == 0.0 {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|&(k, a)| (k, t * a)).collect(),
        }
    }

    /// Negates the coefficient at every index where `negate` holds.
    pub fn with_signs<F: FnMut(usize) -> bool>(&self, mut negate: F) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|&(k, a)| if negate(k) { (k, -a) } else { (k, a) })
                .collect(),
        }
    }

    /// `self - other`, dropping entries that cancel exactly.
    pub fn sub(&self, other: &SparseVector) -> Self {
        self.merge(other, |a, b| a - b)
    }

    /// `self + other`, dropping entries that cancel exactly.
    pub fn add(&self, other: &SparseVector) -> Self {
        self.merge(other, |a, b| a + b)
    }

    fn merge(&self, other: &SparseVector, op: impl Fn(f64, f64) -> f64) -> Self {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (k, v) = match (a.get(i), b.get(j)) {
                (Some(&(ka, va)), Some(&(kb, vb))) if ka == kb => {
                    i += 1;
                    j += 1;
                    (ka, op(va, vb))
                }
                (Some(&(ka, va)), Some(&(kb, _))) if ka < kb => {
                    i += 1;
                    (ka, op(va, 0.0))
                }
                (Some(&(ka, va)), None) => {
                    i += 1;
                    (ka, op(va, 0.0))
                }
                (_, Some(&(kb, vb))) => {
                    j += 1;
                    (kb, op(0.0, vb))
                }
                (None, None) => unreachable!(),
            };
            if v != 0.0 {
                out.push((k, v));
            }
        }
        Self { entries: out }
    }

    /// Largest absolute coefficient (0 for the zero vector).
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| f64::max(m, e.1.abs()))
    }

    /// Smallest absolute coefficient over the support (0 for the zero vector).
    pub fn min_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.1.abs())
            .reduce(f64::min)
            .unwrap_or(0.0)
    }
}

impl fmt::Display for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, a)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}: {a}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_are_dropped_and_order_is_ascending() {
        let x = SparseVector::from_pairs([(5, 1.0), (2, 0.0), (3, -2.0)]).unwrap();
        assert_eq!(x.entries(), &[(3, -2.0), (5, 1.0)]);
        assert_eq!(x.get(2), 0.0);
        assert_eq!(x.get(3), -2.0);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(SparseVector::from_pairs([(0, 1.0)]).is_err());
        assert!(SparseVector::from_pairs([(1, 1.0), (1, 2.0)]).is_err());
        assert!(SparseVector::from_pairs([(1, f64::NAN)]).is_err());
    }

    #[test]
    fn sub_cancels_exactly() {
        let x = SparseVector::from_pairs([(1, 3.0), (2, 2.0)]).unwrap();
        let y = SparseVector::from_pairs([(2, 2.0), (4, 1.0)]).unwrap();
        assert_eq!(x.sub(&y).entries(), &[(1, 3.0), (4, -1.0)]);
        assert_eq!(x.sub(&y).add(&y), x);
    }

    #[test]
    fn display_is_stable() {
        let x = SparseVector::from_pairs([(2, 1.5), (1, -1.0)]).unwrap();
        assert_eq!(alloc::format!("{x}"), "{1: -1, 2: 1.5}");
    }
}

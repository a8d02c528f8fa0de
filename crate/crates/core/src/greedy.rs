//! Greedy ordering, the thresholding greedy algorithm and coordinate
//! projections.

use alloc::vec::Vec;

use crate::vector::{IndexSet, SparseVector};

/// A greedy ordering `π` of `supp(x)` with `|a_π(k)| >= |a_π(k+1)|`.
///
/// Ties in magnitude are broken by ascending index.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyOrdering {
    /// Support indices, largest magnitude first.
    pub pi: Vec<usize>,
    /// Decreasing rearrangement `a_k* = |a_π(k)|`.
    pub rearranged: Vec<f64>,
}

impl GreedyOrdering {
    /// Number of ordered indices.
    pub fn len(&self) -> usize {
        self.pi.len()
    }

    /// True when the ordered vector is zero.
    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    /// The first `n` indices of the ordering (all of them if `n` is larger).
    pub fn head(&self, n: usize) -> IndexSet {
        self.pi.iter().take(n).copied().collect()
    }
}

/// Computes the tie-broken greedy ordering of `x`.
pub fn greedy_ordering(x: &SparseVector) -> GreedyOrdering {
    let mut order: Vec<(usize, f64)> = x.iter().map(|(k, a)| (k, a.abs())).collect();
    // Entries arrive in ascending index order and the sort is stable.
    order.sort_by(|a, b| b.1.total_cmp(&a.1));
    GreedyOrdering {
        pi: order.iter().map(|e| e.0).collect(),
        rearranged: order.iter().map(|e| e.1).collect(),
    }
}

/// Decreasing rearrangement `(a_1*, a_2*, ...)` of `|x|`.
pub fn decreasing_rearrangement(x: &SparseVector) -> Vec<f64> {
    greedy_ordering(x).rearranged
}

/// Indices picked by the greedy algorithm after `n` steps.
pub fn greedy_set(x: &SparseVector, n: usize) -> IndexSet {
    greedy_ordering(x).head(n)
}

/// `G_N(x)`: keeps the `n` largest coefficients.
pub fn greedy_sum(x: &SparseVector, n: usize) -> SparseVector {
    if n >= x.len() {
        return x.clone();
    }
    project(x, &greedy_set(x, n))
}

/// `x - G_N(x)`.
pub fn residual(x: &SparseVector, n: usize) -> SparseVector {
    if n >= x.len() {
        return SparseVector::new();
    }
    project_complement(x, &greedy_set(x, n))
}

/// `(G_N(x), x - G_N(x))` from a single ordering pass.
pub fn greedy_split(x: &SparseVector, n: usize) -> (SparseVector, SparseVector) {
    let kept = greedy_set(x, n);
    (project(x, &kept), project_complement(x, &kept))
}

/// `S_Γ(x) = Σ_{k∈Γ} a_k(x) e_k`.
pub fn project(x: &SparseVector, set: &IndexSet) -> SparseVector {
    SparseVector::from_sorted_unchecked(x.iter().filter(|(k, _)| set.contains(k)).collect())
}

/// `x - S_Γ(x)`.
pub fn project_complement(x: &SparseVector, set: &IndexSet) -> SparseVector {
    SparseVector::from_sorted_unchecked(x.iter().filter(|(k, _)| !set.contains(k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(pairs: &[(usize, f64)]) -> SparseVector {
        SparseVector::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn ordering_examples() {
        let o = greedy_ordering(&v(&[(1, 3.0), (2, 2.0), (3, 1.0)]));
        assert_eq!(o.pi, [1, 2, 3]);
        assert_eq!(o.rearranged, [3.0, 2.0, 1.0]);

        let o = greedy_ordering(&v(&[(5, -2.0), (9, 2.0), (2, 7.0)]));
        assert_eq!(o.pi, [2, 5, 9]);
        assert_eq!(o.rearranged, [7.0, 2.0, 2.0]);

        assert!(greedy_ordering(&SparseVector::new()).is_empty());
    }

    #[test]
    fn greedy_sum_examples() {
        let x = v(&[(1, 3.0), (2, 2.0), (3, 1.0)]);
        assert_eq!(greedy_sum(&x, 1), v(&[(1, 3.0)]));
        assert_eq!(residual(&x, 1), v(&[(2, 2.0), (3, 1.0)]));
        assert!(greedy_sum(&x, 0).is_empty());
        assert_eq!(residual(&x, 0), x);
        assert_eq!(greedy_sum(&x, 7), x);
        assert!(residual(&x, 3).is_empty());

        let w = v(&[(2, 1.01), (1, 1.0), (4, 1.01), (3, 1.0)]);
        assert_eq!(greedy_sum(&w, 2), v(&[(2, 1.01), (4, 1.01)]));
    }

    #[test]
    fn projection_examples() {
        let x = v(&[(1, 3.0), (2, 2.0), (3, 1.0)]);
        assert_eq!(project(&x, &[2].into()), v(&[(2, 2.0)]));
        assert!(project(&v(&[(1, 3.0)]), &[5].into()).is_empty());
        assert_eq!(project(&x, &x.support()), x);
        assert!(project(&x, &IndexSet::new()).is_empty());

        let w = v(&[(1, 1.0), (2, 1.01), (3, 1.0), (4, 1.01)]);
        assert_eq!(project(&w, &[2, 4].into()), greedy_sum(&w, 2));
    }

    #[test]
    fn split_matches_parts() {
        let x = v(&[(1, 0.5), (4, -2.0), (6, 1.0), (9, 2.0)]);
        for n in 0..6 {
            let (g, r) = greedy_split(&x, n);
            assert_eq!(g, greedy_sum(&x, n));
            assert_eq!(r, residual(&x, n));
            assert_eq!(g.add(&r), x);
        }
    }
}

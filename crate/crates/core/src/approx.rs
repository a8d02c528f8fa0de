//! Best N-term approximation oracles and empirical greedy efficiency.

use alloc::vec::Vec;

use rand::Rng;

use crate::democracy::democracy_bruteforce;
use crate::greedy::{greedy_set, project, residual};
use crate::spaces::SpaceSpec;
use crate::subsets::Combinations;
use crate::vector::{IndexSet, SparseVector};
use crate::{Error, Result};

/// Largest support the exhaustive oracles accept (about 4M subsets).
pub const EXHAUSTIVE_LIMIT: usize = 22;

/// Value and witness of a best-approximation problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationResult {
    /// The minimum `‖x - S_Γ x‖`.
    pub value: f64,
    /// Minimizing `Γ`, `|Γ| <= N`.
    pub witness_set: IndexSet,
    /// `S_Γ x`.
    pub witness_vector: SparseVector,
}

impl ApproximationResult {
    fn from_positions(space: &SpaceSpec, x: &SparseVector, positions: &[usize]) -> Self {
        let entries = x.entries();
        let witness_set: IndexSet = positions.iter().map(|&i| entries[i].0).collect();
        let witness_vector = project(x, &witness_set);
        let value = space.norm(&x.sub(&witness_vector));
        Self {
            value,
            witness_set,
            witness_vector,
        }
    }
}

/// Norm of `x` with the entries at `positions` (sorted) removed.
fn complement_norm(
    space: &SpaceSpec,
    entries: &[(usize, f64)],
    positions: &[usize],
    buf: &mut Vec<(usize, f64)>,
) -> f64 {
    buf.clear();
    let mut skip = positions.iter().peekable();
    for (i, &e) in entries.iter().enumerate() {
        if skip.peek() == Some(&&i) {
            skip.next();
        } else {
            buf.push(e);
        }
    }
    space.norm_entries(buf)
}

/// `σ̃_N(x) = min { ‖x - S_Γ x‖ : Γ ⊆ supp x, |Γ| <= N }`, exhaustively.
///
/// Ties keep the smallest, then lexicographically first, `Γ`.
pub fn sigma_tilde(space: &SpaceSpec, x: &SparseVector, n: usize) -> Result<ApproximationResult> {
    let s = x.len();
    if s > EXHAUSTIVE_LIMIT {
        return Err(Error::Capacity {
            support: s,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let entries = x.entries();
    let mut buf = Vec::with_capacity(s);
    let mut best_value = f64::INFINITY;
    let mut best: Vec<usize> = Vec::new();
    for r in 0..=n.min(s) {
        let mut combos = Combinations::new(s, r);
        while let Some(positions) = combos.next_subset() {
            let value = complement_norm(space, entries, positions, &mut buf);
            if value < best_value {
                best_value = value;
                best = positions.to_vec();
            }
        }
    }
    Ok(ApproximationResult::from_positions(space, x, &best))
}

/// `σ_N(x) = inf { ‖x - y‖ : |supp y| <= N }`.
///
/// For a coordinate-monotone norm the best `y` on a fixed support `Γ` is
/// `S_Γ x`, since `|x - S_Γ x| <= |x - y|` entrywise, so this equals
/// [`sigma_tilde`]. [`validate_sigma_reduction`] tests that claim by sampling.
pub fn sigma(space: &SpaceSpec, x: &SparseVector, n: usize) -> Result<ApproximationResult> {
    debug_assert!(space.is_coordinate_monotone());
    sigma_tilde(space, x, n)
}

/// Upper bound for `σ̃_N(x)` from the greedy set plus `samples` random
/// `N`-subsets of the support. For supports beyond [`EXHAUSTIVE_LIMIT`].
pub fn sigma_tilde_sampled<R: Rng + ?Sized>(
    space: &SpaceSpec,
    x: &SparseVector,
    n: usize,
    samples: usize,
    rng: &mut R,
) -> ApproximationResult {
    let s = x.len();
    let r = n.min(s);
    let entries = x.entries();
    let mut buf = Vec::with_capacity(s);

    let greedy = greedy_set(x, n);
    let mut best: Vec<usize> = (0..s).filter(|&i| greedy.contains(&entries[i].0)).collect();
    let mut best_value = complement_norm(space, entries, &best, &mut buf);

    let mut pool: Vec<usize> = (0..s).collect();
    for _ in 0..samples {
        // partial Fisher-Yates
        for i in 0..r {
            let j = rng.random_range(i..s);
            pool.swap(i, j);
        }
        let mut pick = pool[..r].to_vec();
        pick.sort_unstable();
        let value = complement_norm(space, entries, &pick, &mut buf);
        if value < best_value {
            best_value = value;
            best = pick;
        }
    }
    ApproximationResult::from_positions(space, x, &best)
}

/// Outcome of [`validate_sigma_reduction`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionCheck {
    /// Supports `Γ` examined.
    pub subsets: usize,
    /// Perturbed `y` evaluated.
    pub samples: usize,
    /// Samples with `‖x - y‖ < ‖x - S_Γ x‖` beyond tolerance.
    pub violations: usize,
    /// Smallest observed `‖x - y‖ / ‖x - S_Γ x‖` (1 when never below).
    pub worst_ratio: f64,
}

/// For every `Γ ⊆ supp x` with `|Γ| <= N` and `per_subset` random `y`
/// supported on `Γ`, checks `‖x - y‖ >= ‖x - S_Γ x‖`.
///
/// Half of the samples perturb `S_Γ x` by a relative amount, the other half
/// draw coefficients uniformly on `[-2 max|x|, 2 max|x|]`.
pub fn validate_sigma_reduction<R: Rng + ?Sized>(
    space: &SpaceSpec,
    x: &SparseVector,
    n: usize,
    per_subset: usize,
    rng: &mut R,
) -> Result<ReductionCheck> {
    let s = x.len();
    if s > EXHAUSTIVE_LIMIT {
        return Err(Error::Capacity {
            support: s,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let entries = x.entries();
    let scale = 2.0 * x.max_abs();
    let mut buf = Vec::with_capacity(s);
    let mut diff: Vec<(usize, f64)> = Vec::with_capacity(s);
    let mut out = ReductionCheck {
        subsets: 0,
        samples: 0,
        violations: 0,
        worst_ratio: 1.0,
    };
    for r in 0..=n.min(s) {
        let mut combos = Combinations::new(s, r);
        while let Some(positions) = combos.next_subset() {
            out.subsets += 1;
            let base = complement_norm(space, entries, positions, &mut buf);
            for t in 0..per_subset {
                diff.clear();
                diff.extend_from_slice(entries);
                for &i in positions {
                    let a = entries[i].1;
                    let y = if t % 2 == 0 {
                        a * (1.0 + rng.random_range(-0.5..0.5))
                    } else {
                        rng.random_range(-scale..scale)
                    };
                    diff[i].1 = a - y;
                }
                let value = space.norm_entries(&diff);
                out.samples += 1;
                if base > 0.0 {
                    out.worst_ratio = out.worst_ratio.min(value / base);
                }
                if !crate::math::le_tol(base, value) {
                    out.violations += 1;
                }
            }
        }
    }
    Ok(out)
}

/// `a / b` with the convention `0/0 = 1`.
pub fn error_ratio(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        if a == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        a / b
    }
}

/// Corpus suprema of the greedy-efficiency ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Efficiency {
    /// `max_x ‖x - G_N x‖ / σ_N(x)`.
    pub e_hat: f64,
    /// `max_x ‖x - G_N x‖ / σ̃_N(x)`.
    pub e_tilde_hat: f64,
    /// Corpus position attaining `e_hat`.
    pub argmax: usize,
    /// Corpus position attaining `e_tilde_hat`.
    pub argmax_tilde: usize,
}

/// Empirical `e_N` and `ẽ_N` over a corpus of nonzero vectors.
pub fn greedy_efficiency(
    space: &SpaceSpec,
    corpus: &[SparseVector],
    n: usize,
) -> Result<Efficiency> {
    if corpus.is_empty() {
        return Err(Error::Argument("empty corpus".into()));
    }
    let mut out = Efficiency {
        e_hat: f64::NEG_INFINITY,
        e_tilde_hat: f64::NEG_INFINITY,
        argmax: 0,
        argmax_tilde: 0,
    };
    for (i, x) in corpus.iter().enumerate() {
        if x.is_empty() {
            return Err(Error::Argument(alloc::format!(
                "corpus element {i} is zero"
            )));
        }
        let err = space.norm(&residual(x, n));
        let best = sigma(space, x, n)?.value;
        // σ and σ̃ share the exhaustive oracle on monotone norms
        let tilde = best;
        let r = error_ratio(err, best);
        let rt = error_ratio(err, tilde);
        if r > out.e_hat {
            out.e_hat = r;
            out.argmax = i;
        }
        if rt > out.e_tilde_hat {
            out.e_tilde_hat = rt;
            out.argmax_tilde = i;
        }
    }
    Ok(out)
}

/// `x = 1_A + (1 + ε) 1_B` built from extremal democracy sets.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// The witness vector.
    pub vector: SparseVector,
    /// Lexicographically first maximizer of `‖1_A‖` among sets disjoint from `B`.
    pub set_a: Vec<usize>,
    /// Lexicographically first minimizer of `‖1_B‖` over the window.
    pub set_b: Vec<usize>,
    /// `‖1_A‖`; equals `h_r(N)` when some maximizer avoids `B`.
    pub norm_a: f64,
    /// `‖1_B‖ = h_l(N)`.
    pub norm_b: f64,
    /// `‖1_A‖ / ((1 + ε)‖1_B‖)`, a certified lower bound for `ẽ_N` and `e_N`.
    pub lower_bound: f64,
}

/// Witness on which the greedy algorithm keeps `B` while keeping `A` is
/// nearly optimal: `G_N x = (1 + ε) 1_B` and `σ̃_N(x) <= (1 + ε)‖1_B‖`, so
/// `‖x - G_N x‖ / σ̃_N(x) >= ‖1_A‖ / ((1 + ε)‖1_B‖)`.
///
/// `B` is the first minimizer of `‖1_B‖` in `{1..window}` and `A` the first
/// maximizer among the `N`-sets disjoint from it.
pub fn adversarial_witness(
    space: &SpaceSpec,
    n: usize,
    eps: f64,
    window: usize,
) -> Result<Witness> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::Argument(alloc::format!(
            "epsilon {eps} must be positive"
        )));
    }
    if window < 2 * n {
        return Err(Error::Argument(alloc::format!(
            "window {window} cannot hold two disjoint {n}-sets"
        )));
    }
    let extremes = democracy_bruteforce(space, n, window)?;
    let set_b = extremes.argmin;
    let free: Vec<usize> = (1..=window).filter(|k| !set_b.contains(k)).collect();

    let mut buf: Vec<(usize, f64)> = alloc::vec![(0, 1.0); n];
    let mut norm_a = f64::NEG_INFINITY;
    let mut set_a = Vec::new();
    let mut combos = Combinations::new(free.len(), n);
    while let Some(positions) = combos.next_subset() {
        for (slot, &p) in buf.iter_mut().zip(positions) {
            slot.0 = free[p];
        }
        let value = space.norm_entries(&buf);
        if value > norm_a {
            norm_a = value;
            set_a = buf.iter().map(|e| e.0).collect();
        }
    }

    let pairs = set_a
        .iter()
        .map(|&k| (k, 1.0))
        .chain(set_b.iter().map(|&k| (k, 1.0 + eps)));
    let vector = SparseVector::from_pairs(pairs)?;
    let norm_b = extremes.h_l;
    Ok(Witness {
        vector,
        lower_bound: norm_a / ((1.0 + eps) * norm_b),
        set_a,
        set_b,
        norm_a,
        norm_b,
    })
}

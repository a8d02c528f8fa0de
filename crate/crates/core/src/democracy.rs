//! Right and left democracy functions, `mu`, `v` and doubling diagnostics.
//!
//! `h_r(N)` and `h_l(N)` are the sup and inf of `‖1_Γ‖` over `|Γ| = N`.
//! The exhaustive oracle restricts `Γ` to a window `{1..M}`; since every
//! implemented norm is rearrangement-invariant on each leaf of the space,
//! the extrema are attained as soon as the window holds `N` indices of
//! every leaf, which [`democracy_bruteforce`] enforces.

use alloc::vec::Vec;

use crate::math::{harmonic, powf, sqrt};
use crate::spaces::{Aggregation, Exponent, SpaceKind, SpaceSpec};
use crate::subsets::Combinations;
use crate::{Error, Result};

/// Extremal indicator norms over `N`-subsets of a window.
#[derive(Debug, Clone, PartialEq)]
pub struct Extremes {
    /// `h_r(N)`.
    pub h_r: f64,
    /// `h_l(N)`.
    pub h_l: f64,
    /// Lexicographically first maximizing set.
    pub argmax: Vec<usize>,
    /// Lexicographically first minimizing set.
    pub argmin: Vec<usize>,
}

impl Extremes {
    fn empty() -> Self {
        Self {
            h_r: f64::NEG_INFINITY,
            h_l: f64::INFINITY,
            argmax: Vec::new(),
            argmin: Vec::new(),
        }
    }

    #[cfg(feature = "parallel")]
    /// Folds `other` into `self`, where every set of `other` comes after every
    /// set of `self` lexicographically.
    fn absorb(&mut self, other: Extremes) {
        if other.h_r > self.h_r {
            self.h_r = other.h_r;
            self.argmax = other.argmax;
        }
        if other.h_l < self.h_l {
            self.h_l = other.h_l;
            self.argmin = other.argmin;
        }
    }
}

fn check_window(space: &SpaceSpec, n: usize, window: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Argument("N must be positive".into()));
    }
    if window < n {
        return Err(Error::Argument(alloc::format!(
            "window {window} is smaller than N = {n}"
        )));
    }
    if !space.window_feasible(n, window) {
        return Err(Error::Argument(alloc::format!(
            "window {window} does not hold {n} indices of every component (need {})",
            space.min_window(n)
        )));
    }
    Ok(())
}

fn scan(space: &SpaceSpec, mut combos: Combinations, n: usize) -> Extremes {
    let mut best = Extremes::empty();
    let mut buf: Vec<(usize, f64)> = alloc::vec![(0, 1.0); n];
    while let Some(set) = combos.next_subset() {
        for (slot, &pos) in buf.iter_mut().zip(set) {
            slot.0 = pos + 1;
        }
        let value = space.norm_entries(&buf);
        if value > best.h_r {
            best.h_r = value;
            best.argmax = buf.iter().map(|e| e.0).collect();
        }
        if value < best.h_l {
            best.h_l = value;
            best.argmin = buf.iter().map(|e| e.0).collect();
        }
    }
    best
}

/// Exact `h_r(N)`, `h_l(N)` over all `Γ ⊆ {1..window}` with `|Γ| = N`.
pub fn democracy_bruteforce(space: &SpaceSpec, n: usize, window: usize) -> Result<Extremes> {
    check_window(space, n, window)?;
    Ok(scan(space, Combinations::new(window, n), n))
}

/// [`democracy_bruteforce`] with the enumeration split across rayon tasks by
/// smallest element. The result is identical to the sequential one.
#[cfg(feature = "parallel")]
pub fn democracy_bruteforce_par(space: &SpaceSpec, n: usize, window: usize) -> Result<Extremes> {
    use rayon::prelude::*;
    check_window(space, n, window)?;
    let parts: Vec<Extremes> = (0..window)
        .into_par_iter()
        .map(|first| scan(space, Combinations::starting_with(window, n, first), n))
        .collect();
    let mut best = Extremes::empty();
    for part in parts {
        best.absorb(part);
    }
    Ok(best)
}

/// Analytic `(h_r(N), h_l(N))`.
///
/// `ℓ^p` gives `N^{1/p}`, Lorentz gives `(Σ_{k≤N} w_k)^{1/p}`, and a direct
/// sum takes the extremes of the aggregated component values over every
/// split `n_1 + .. + n_r = N`.
pub fn democracy_closed_form(space: &SpaceSpec, n: usize) -> (f64, f64) {
    match space.kind() {
        SpaceKind::Lp(Exponent::Infinity) => {
            let h = if n == 0 { 0.0 } else { 1.0 };
            (h, h)
        }
        SpaceKind::Lp(Exponent::Finite(p)) => {
            let h = root(n as f64, *p);
            (h, h)
        }
        SpaceKind::Lorentz { p, weights } => {
            let mut sum = 0.0;
            for k in 1..=n {
                sum += weights.weight(k);
            }
            let h = root(sum, *p);
            (h, h)
        }
        SpaceKind::DirectSum {
            components,
            aggregation,
            ..
        } => {
            let profiles: Vec<Vec<(f64, f64)>> = components
                .iter()
                .map(|c| (0..=n).map(|j| democracy_closed_form(c, j)).collect())
                .collect();
            let mut split = alloc::vec![0usize; components.len()];
            let mut best = (f64::NEG_INFINITY, f64::INFINITY);
            visit_splits(&mut split, 0, n, &mut |split| {
                let (hi, lo) = aggregate(&profiles, split, *aggregation);
                best.0 = best.0.max(hi);
                best.1 = best.1.min(lo);
            });
            best
        }
    }
}

fn root(sum: f64, p: f64) -> f64 {
    if p == 1.0 {
        sum
    } else if p == 2.0 {
        sqrt(sum)
    } else {
        powf(sum, 1.0 / p)
    }
}

fn aggregate(profiles: &[Vec<(f64, f64)>], split: &[usize], agg: Aggregation) -> (f64, f64) {
    let parts = profiles.iter().zip(split).map(|(p, &j)| p[j]);
    match agg {
        Aggregation::Sum => parts.fold((0.0, 0.0), |acc, h| (acc.0 + h.0, acc.1 + h.1)),
        Aggregation::Max => parts.fold((0.0, 0.0), |acc, h| (acc.0.max(h.0), acc.1.max(h.1))),
    }
}

fn visit_splits(split: &mut [usize], at: usize, left: usize, f: &mut impl FnMut(&[usize])) {
    if at + 1 == split.len() {
        split[at] = left;
        f(split);
        return;
    }
    for j in 0..=left {
        split[at] = j;
        visit_splits(split, at + 1, left - j, f);
    }
}

/// Running supremum `mu(N) = max_{k≤N} h_r(k)/h_l(k)`.
pub fn mu_table(h_r: &[f64], h_l: &[f64]) -> Vec<f64> {
    assert_eq!(h_r.len(), h_l.len(), "democracy arrays differ in length");
    let mut running = f64::NEG_INFINITY;
    h_r.iter()
        .zip(h_l)
        .map(|(&r, &l)| {
            debug_assert!(l > 0.0);
            running = running.max(r / l);
            running
        })
        .collect()
}

/// Prefix sums `v(N) = Σ_{k≤N} mu(k)/k`.
pub fn v_table(mu: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    mu.iter()
        .enumerate()
        .map(|(i, &m)| {
            acc += m / (i + 1) as f64;
            acc
        })
        .collect()
}

/// Per-`N` democracy quantities for `N = 1..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct DemocracyTable {
    /// Window used by the exhaustive oracle, if any.
    pub window: Option<usize>,
    /// `h_r(1..=n_max)`.
    pub h_r: Vec<f64>,
    /// `h_l(1..=n_max)`.
    pub h_l: Vec<f64>,
    /// `mu(1..=n_max)`.
    pub mu: Vec<f64>,
    /// `v(1..=n_max)`.
    pub v: Vec<f64>,
}

impl DemocracyTable {
    /// Assembles a table from democracy values.
    pub fn from_democracy(h_r: Vec<f64>, h_l: Vec<f64>, window: Option<usize>) -> Self {
        let mu = mu_table(&h_r, &h_l);
        let v = v_table(&mu);
        Self {
            window,
            h_r,
            h_l,
            mu,
            v,
        }
    }

    /// Table from the exhaustive oracle over `{1..window}`.
    pub fn bruteforce(space: &SpaceSpec, n_max: usize, window: usize) -> Result<Self> {
        let (mut h_r, mut h_l) = (Vec::with_capacity(n_max), Vec::with_capacity(n_max));
        for n in 1..=n_max {
            let e = democracy_bruteforce(space, n, window)?;
            h_r.push(e.h_r);
            h_l.push(e.h_l);
        }
        Ok(Self::from_democracy(h_r, h_l, Some(window)))
    }

    /// Parallel variant of [`DemocracyTable::bruteforce`].
    #[cfg(feature = "parallel")]
    pub fn bruteforce_par(space: &SpaceSpec, n_max: usize, window: usize) -> Result<Self> {
        let (mut h_r, mut h_l) = (Vec::with_capacity(n_max), Vec::with_capacity(n_max));
        for n in 1..=n_max {
            let e = democracy_bruteforce_par(space, n, window)?;
            h_r.push(e.h_r);
            h_l.push(e.h_l);
        }
        Ok(Self::from_democracy(h_r, h_l, Some(window)))
    }

    /// Table from the analytic oracle.
    pub fn closed_form(space: &SpaceSpec, n_max: usize) -> Self {
        let (h_r, h_l) = (1..=n_max).map(|n| democracy_closed_form(space, n)).unzip();
        Self::from_democracy(h_r, h_l, None)
    }

    /// Largest tabulated `N`.
    pub fn n_max(&self) -> usize {
        self.h_r.len()
    }

    /// `mu(n)`, 1-based.
    pub fn mu_at(&self, n: usize) -> f64 {
        self.mu[n - 1]
    }

    /// `v(n)`, 1-based, with `v(0) = 0`.
    pub fn v_at(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.v[n - 1]
        }
    }

    /// `mu(2n)/mu(n)` when `2n` is tabulated.
    pub fn doubling_ratio(&self, n: usize) -> Option<f64> {
        (n >= 1 && 2 * n <= self.n_max()).then(|| self.mu[2 * n - 1] / self.mu[n - 1])
    }
}

/// One row of [`doubling_report`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoublingEntry {
    /// `k`.
    pub k: usize,
    /// `mu(2k)/mu(k)`.
    pub ratio: f64,
    /// `2K²`.
    pub bound: f64,
    /// `ratio <= bound` within tolerance.
    pub holds: bool,
}

/// Doubling ratios of `mu` against the bound `2K²`.
pub fn doubling_report(mu: &[f64], k_const: f64) -> Vec<DoublingEntry> {
    let bound = 2.0 * k_const * k_const;
    (1..=mu.len() / 2)
        .map(|k| {
            let ratio = mu[2 * k - 1] / mu[k - 1];
            DoublingEntry {
                k,
                ratio,
                bound,
                holds: crate::math::le_tol(ratio, bound),
            }
        })
        .collect()
}

/// Growth regime reported by [`dilation_remark_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DilationRegime {
    /// `mu` is constant: `v(N)/mu(N) = H_N` grows like `log N`, so no
    /// positive dilation index.
    DemocraticLog,
    /// `mu` grows; the reported supremum says whether `v ≲ mu` on the range.
    Growing,
}

/// Summary of `v(N)/mu(N)` over the tabulated range.
#[derive(Debug, Clone, PartialEq)]
pub struct DilationReport {
    /// `v(N)/mu(N)` for `N = 1..`.
    pub ratios: Vec<f64>,
    /// Supremum of `ratios`.
    pub sup_ratio: f64,
    /// `N` attaining the supremum.
    pub argmax: usize,
    /// Growth regime.
    pub regime: DilationRegime,
    /// `v(N) <= mu(N) H_N` for every `N`.
    pub log_bound_holds: bool,
}

/// Reports `sup_N v(N)/mu(N)` and whether `mu` is in the democratic regime.
pub fn dilation_remark_check(mu: &[f64], v: &[f64]) -> DilationReport {
    assert_eq!(mu.len(), v.len(), "mu and v differ in length");
    let ratios: Vec<f64> = v.iter().zip(mu).map(|(v, m)| v / m).collect();
    let (argmax, sup_ratio) =
        ratios
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &r)| {
                if r > best.1 {
                    (i + 1, r)
                } else {
                    best
                }
            });
    let regime = if mu.iter().all(|&m| m == mu[0]) {
        DilationRegime::DemocraticLog
    } else {
        DilationRegime::Growing
    };
    let log_bound_holds =
        (1..=mu.len()).all(|n| crate::math::le_tol(v[n - 1], mu[n - 1] * harmonic(n)));
    DilationReport {
        ratios,
        sup_ratio,
        argmax,
        regime,
        log_bound_holds,
    }
}

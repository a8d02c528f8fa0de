//! Coordinate-monotone sequence-space norms.
//!
//! Three families are supported, all 1-unconditional with `‖e_k‖ = 1`:
//!
//! * `ℓ^p`, `1 <= p <= ∞`;
//! * weighted Lorentz spaces `(Σ (a_k*)^p w_k)^{1/p}` with nonincreasing
//!   weights and `w_1 = 1`;
//! * finite direct sums of the above, aggregated by `sum` or `max`.
//!
//! In a direct sum with `m` components, index `k` belongs to component
//! `(k - 1) mod m` and sits at local position `(k - 1) / m + 1` there.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::math::{powf, sqrt};
use crate::vector::SparseVector;
use crate::{Error, Result};

/// Exponent of an `ℓ^p`-type norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    /// Finite `p >= 1`.
    Finite(f64),
    /// `p = ∞`.
    Infinity,
}

impl Exponent {
    fn validate(self) -> Result<()> {
        match self {
            Exponent::Finite(p) if p.is_finite() && p >= 1.0 => Ok(()),
            Exponent::Finite(p) => Err(Error::Config(format!("exponent p = {p} must be >= 1"))),
            Exponent::Infinity => Ok(()),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

/// Rule generating Lorentz weights past the explicit prefix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// `w_k = w_L r^{k-L}` where `L` is the prefix length; `w_k = r^{k-1}`
    /// without a prefix.
    Geometric(f64),
    /// `w_k = k^{-alpha}`.
    Power(f64),
}

/// Nonincreasing positive weights with `w_1 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights {
    prefix: Vec<f64>,
    tail: Tail,
}

impl Weights {
    /// Explicit prefix followed by a tail rule. Validated on construction.
    pub fn new(prefix: Vec<f64>, tail: Tail) -> Result<Self> {
        let w = Self { prefix, tail };
        w.validate()?;
        Ok(w)
    }

    /// `w_k = r^{k-1}`.
    pub fn geometric(ratio: f64) -> Result<Self> {
        Self::new(Vec::new(), Tail::Geometric(ratio))
    }

    /// `w_k = k^{-alpha}`.
    pub fn power(alpha: f64) -> Result<Self> {
        Self::new(Vec::new(), Tail::Power(alpha))
    }

    /// The explicit prefix.
    pub fn prefix(&self) -> &[f64] {
        &self.prefix
    }

    /// The tail rule.
    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// Weight `w_k`, `k >= 1`.
    pub fn weight(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        let len = self.prefix.len();
        if k <= len {
            return self.prefix[k - 1];
        }
        match self.tail {
            Tail::Geometric(r) => {
                let (mut w, from) = match self.prefix.last() {
                    Some(&last) => (last, len),
                    None => (1.0, 1),
                };
                for _ in from..k {
                    w *= r;
                }
                w
            }
            Tail::Power(1.0) => 1.0 / k as f64,
            Tail::Power(alpha) => powf(k as f64, -alpha),
        }
    }

    fn validate(&self) -> Result<()> {
        match self.tail {
            Tail::Geometric(r) if !(r > 0.0 && r <= 1.0) => {
                return Err(Error::Config(format!(
                    "geometric ratio {r} must lie in (0, 1]"
                )))
            }
            Tail::Power(a) if !(a.is_finite() && a >= 0.0) => {
                return Err(Error::Config(format!("power exponent {a} must be >= 0")))
            }
            _ => {}
        }
        if let Some(&first) = self.prefix.first() {
            if first != 1.0 {
                return Err(Error::Config(format!("w_1 must be 1, got {first}")));
            }
        }
        // Checking one step past the prefix covers the junction; both tail
        // rules are nonincreasing on their own.
        let mut prev = f64::INFINITY;
        for k in 1..=self.prefix.len() + 1 {
            let w = self.weight(k);
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::Config(format!(
                    "weight w_{k} = {w} must be positive"
                )));
            }
            if w > prev {
                return Err(Error::Config(format!("weights increase at k = {k}")));
            }
            prev = w;
        }
        Ok(())
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            write!(f, "{:?} then ", self.prefix)?;
        }
        match self.tail {
            Tail::Geometric(r) => write!(f, "geometric {r}"),
            Tail::Power(a) => write!(f, "k^-{a}"),
        }
    }
}

/// How a direct sum combines its component norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregation {
    /// `‖x‖ = Σ_i ‖x_i‖`.
    #[default]
    Sum,
    /// `‖x‖ = max_i ‖x_i‖`.
    Max,
}

/// Assignment of global indices to direct-sum components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentMap {
    /// Index `k` goes to component `(k - 1) mod modulus`.
    Mod(usize),
}

impl ComponentMap {
    /// `(component, local index)` of global index `k`.
    #[inline]
    pub fn locate(&self, k: usize) -> (usize, usize) {
        match *self {
            ComponentMap::Mod(m) => ((k - 1) % m, (k - 1) / m + 1),
        }
    }
}

/// Unvalidated description of a space. Wrap it with [`SpaceSpec::new`].
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceKind {
    /// `ℓ^p`.
    Lp(Exponent),
    /// Weighted Lorentz space with finite exponent.
    Lorentz {
        /// Exponent `p >= 1`.
        p: f64,
        /// Nonincreasing weights.
        weights: Weights,
    },
    /// Finite direct sum.
    DirectSum {
        /// Component spaces.
        components: Vec<SpaceSpec>,
        /// Index-to-component assignment.
        map: ComponentMap,
        /// Norm aggregation.
        aggregation: Aggregation,
    },
}

/// A validated coordinate-monotone norm on [`SparseVector`]s.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceSpec {
    kind: Box<SpaceKind>,
}

impl SpaceSpec {
    /// Validates `kind`.
    pub fn new(kind: SpaceKind) -> Result<Self> {
        match &kind {
            SpaceKind::Lp(p) => p.validate()?,
            SpaceKind::Lorentz { p, weights } => {
                Exponent::Finite(*p).validate()?;
                weights.validate()?;
            }
            SpaceKind::DirectSum {
                components, map, ..
            } => {
                if components.is_empty() {
                    return Err(Error::Config(
                        "direct sum needs at least one component".into(),
                    ));
                }
                let ComponentMap::Mod(m) = *map;
                if m != components.len() {
                    return Err(Error::Config(format!(
                        "component map modulus {m} must equal the number of components {}",
                        components.len()
                    )));
                }
            }
        }
        Ok(Self {
            kind: Box::new(kind),
        })
    }

    /// `ℓ^p` for finite `p >= 1`.
    pub fn lp(p: f64) -> Result<Self> {
        Self::new(SpaceKind::Lp(Exponent::Finite(p)))
    }

    /// `ℓ^∞`.
    pub fn linf() -> Self {
        Self {
            kind: Box::new(SpaceKind::Lp(Exponent::Infinity)),
        }
    }

    /// Lorentz space with exponent `p` and the given weights.
    pub fn lorentz(p: f64, weights: Weights) -> Result<Self> {
        Self::new(SpaceKind::Lorentz { p, weights })
    }

    /// Direct sum with the modular component map.
    pub fn direct_sum(components: Vec<SpaceSpec>, aggregation: Aggregation) -> Result<Self> {
        let m = components.len();
        Self::new(SpaceKind::DirectSum {
            components,
            map: ComponentMap::Mod(m),
            aggregation,
        })
    }

    /// `ℓ¹ ⊕ ℓ²` with odd indices in `ℓ¹`, even in `ℓ²`, summed.
    pub fn l1_plus_l2() -> Self {
        let l1 = Self {
            kind: Box::new(SpaceKind::Lp(Exponent::Finite(1.0))),
        };
        let l2 = Self {
            kind: Box::new(SpaceKind::Lp(Exponent::Finite(2.0))),
        };
        Self::direct_sum(alloc::vec![l1, l2], Aggregation::Sum)
            .expect("two-component sum is well formed")
    }

    /// The descriptor.
    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    /// `‖x‖`.
    pub fn norm(&self, x: &SparseVector) -> f64 {
        self.norm_entries(x.entries())
    }

    /// `‖Σ_{k∈Γ} e_k‖`.
    pub fn indicator_norm<I: IntoIterator<Item = usize>>(&self, set: I) -> f64 {
        self.norm(&SparseVector::indicator(set))
    }

    /// Norm of sorted `(index, coefficient)` entries. Zero coefficients are
    /// tolerated and contribute nothing.
    pub fn norm_entries(&self, entries: &[(usize, f64)]) -> f64 {
        match &*self.kind {
            SpaceKind::Lp(Exponent::Infinity) => {
                entries.iter().fold(0.0, |m, e| f64::max(m, e.1.abs()))
            }
            SpaceKind::Lp(Exponent::Finite(p)) => lp_norm(entries.iter().map(|e| e.1), *p),
            SpaceKind::Lorentz { p, weights } => {
                let mut mags: Vec<f64> = entries.iter().map(|e| e.1.abs()).collect();
                mags.sort_unstable_by(|a, b| b.total_cmp(a));
                lorentz_norm(&mags, *p, weights)
            }
            SpaceKind::DirectSum {
                components,
                map,
                aggregation,
            } => {
                let mut parts: Vec<Vec<(usize, f64)>> =
                    components.iter().map(|_| Vec::new()).collect();
                for &(k, a) in entries {
                    let (c, local) = map.locate(k);
                    parts[c].push((local, a));
                }
                let norms = components
                    .iter()
                    .zip(&parts)
                    .map(|(s, e)| s.norm_entries(e));
                match aggregation {
                    Aggregation::Sum => norms.sum(),
                    Aggregation::Max => norms.fold(0.0, f64::max),
                }
            }
        }
    }

    /// Number of rearrangement-invariant leaves (1 unless a direct sum).
    pub fn leaf_count(&self) -> usize {
        match &*self.kind {
            SpaceKind::DirectSum { components, .. } => {
                components.iter().map(|c| c.leaf_count()).sum()
            }
            _ => 1,
        }
    }

    /// Leaf containing global index `k`. Within a leaf the norm is
    /// rearrangement-invariant.
    pub fn leaf_of(&self, k: usize) -> usize {
        match &*self.kind {
            SpaceKind::DirectSum {
                components, map, ..
            } => {
                let (c, local) = map.locate(k);
                let offset: usize = components[..c].iter().map(|s| s.leaf_count()).sum();
                offset + components[c].leaf_of(local)
            }
            _ => 0,
        }
    }

    /// Smallest `M` such that `{1..M}` holds at least `n` indices of every leaf.
    pub fn min_window(&self, n: usize) -> usize {
        let leaves = self.leaf_count();
        let mut counts = alloc::vec![0usize; leaves];
        let mut m = 0;
        while counts.iter().any(|&c| c < n) {
            m += 1;
            counts[self.leaf_of(m)] += 1;
        }
        m
    }

    /// True when `{1..window}` holds at least `n` indices of every leaf.
    pub fn window_feasible(&self, n: usize, window: usize) -> bool {
        let mut counts = alloc::vec![0usize; self.leaf_count()];
        for k in 1..=window {
            counts[self.leaf_of(k)] += 1;
        }
        counts.iter().all(|&c| c >= n)
    }

    /// All implemented kinds are 1-unconditional.
    pub fn is_coordinate_monotone(&self) -> bool {
        true
    }
}

fn lp_norm(values: impl Iterator<Item = f64>, p: f64) -> f64 {
    if p == 1.0 {
        values.map(f64::abs).sum()
    } else if p == 2.0 {
        sqrt(values.map(|a| a * a).sum())
    } else {
        powf(values.map(|a| powf(a.abs(), p)).sum(), 1.0 / p)
    }
}

/// `mags` must be sorted nonincreasingly.
fn lorentz_norm(mags: &[f64], p: f64, weights: &Weights) -> f64 {
    let first_tail = weights.prefix().len() + 1;
    let mut acc = 0.0;
    let mut w = 1.0;
    for (i, &a) in mags.iter().enumerate() {
        let k = i + 1;
        // Same repeated-product sequence as `Weights::weight`, without the O(k) replay.
        w = match weights.tail() {
            Tail::Geometric(r) if k > first_tail => w * r,
            _ => weights.weight(k),
        };
        let term = if p == 1.0 {
            a
        } else if p == 2.0 {
            a * a
        } else {
            powf(a, p)
        };
        acc += term * w;
    }
    if p == 1.0 {
        acc
    } else if p == 2.0 {
        sqrt(acc)
    } else {
        powf(acc, 1.0 / p)
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.kind {
            SpaceKind::Lp(p) => write!(f, "l{p}"),
            SpaceKind::Lorentz { p, weights } => write!(f, "Lorentz(p={p}, w={weights})"),
            SpaceKind::DirectSum {
                components,
                aggregation,
                ..
            } => {
                f.write_str("(")?;
                for (i, c) in components.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{c}")?;
                }
                let agg = match aggregation {
                    Aggregation::Sum => "sum",
                    Aggregation::Max => "max",
                };
                write!(f, "; {agg})")
            }
        }
    }
}

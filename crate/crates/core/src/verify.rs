//! Checkers for the quasi-greedy inequalities, with explicit constants.
//!
//! Every checker produces a [`VerificationReport`] holding both sides of the
//! inequality. A report passes when `lhs <= rhs (1 + 1e-9)`. The asymptotic
//! `≲` of the Lebesgue-type bounds is made explicit through `slack_factor`;
//! with `K = 1` the bounds hold at `slack_factor = 1`.
//!
//! `K` is always an input. On non-monotone norms a `K̂` from [`estimate_k`]
//! only bounds the true constant from below, so a failure there is
//! inconclusive.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::approx::sigma;
use crate::democracy::DemocracyTable;
use crate::greedy::{greedy_ordering, greedy_split, greedy_sum, project, GreedyOrdering};
use crate::math::{le_tol, powi};
use crate::spaces::SpaceSpec;
use crate::vector::{IndexSet, SparseVector};
use crate::{Error, Result};

/// Names of the individual checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    /// `‖G_N x‖, ‖x - G_N x‖ <= K ‖x‖`.
    QuasiGreedy,
    /// Left half of the two-sided indicator bound.
    TwoSidedLower,
    /// Right half of the two-sided indicator bound.
    TwoSidedUpper,
    /// Upper bound of `‖x‖` by the weighted rearrangement sum.
    Lemma21,
    /// `sup_k a_k* η(k) <= 4K³ C₂ ‖x‖`.
    Lemma22,
    /// Projection bound `‖S_Γ x‖ <= 8K⁴ v(|Γ|) ‖x‖`.
    Lemma23,
    /// `‖x - G_N x‖ <= 8K⁵ v(N) σ_N(x)`.
    Theorem1,
    /// `‖1_B‖ <= K ‖1_A‖` for `B ⊆ A`.
    NestedIndicator,
    /// Step-by-step replay of the Lebesgue-bound decomposition.
    Theorem1Trace,
}

impl CheckId {
    /// Every check, in report order.
    pub const ALL: [CheckId; 9] = [
        CheckId::QuasiGreedy,
        CheckId::TwoSidedLower,
        CheckId::TwoSidedUpper,
        CheckId::Lemma21,
        CheckId::Lemma22,
        CheckId::Lemma23,
        CheckId::Theorem1,
        CheckId::NestedIndicator,
        CheckId::Theorem1Trace,
    ];

    /// Stable snake-case name.
    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::QuasiGreedy => "quasi_greedy",
            CheckId::TwoSidedLower => "two_sided_lower",
            CheckId::TwoSidedUpper => "two_sided_upper",
            CheckId::Lemma21 => "lemma_2_1",
            CheckId::Lemma22 => "lemma_2_2",
            CheckId::Lemma23 => "lemma_2_3",
            CheckId::Theorem1 => "theorem_1",
            CheckId::NestedIndicator => "nested_indicator",
            CheckId::Theorem1Trace => "theorem_1_trace",
        }
    }

    /// Inverse of [`CheckId::as_str`].
    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == name)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Constants entering a check.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Constants {
    /// Quasi-greedy constant `K`.
    pub k: f64,
    /// `C₁` of the upper democracy hypothesis.
    pub c1: Option<f64>,
    /// `C₂` of the lower democracy hypothesis.
    pub c2: Option<f64>,
    /// `C_η` of the rearrangement-sum bound.
    pub c_eta: Option<f64>,
    /// Multiplier standing in for `≲`.
    pub slack_factor: Option<f64>,
}

impl Constants {
    fn with_k(k: f64) -> Self {
        Self {
            k,
            ..Self::default()
        }
    }
}

/// Outcome of one inequality check.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// Which inequality.
    pub check: CheckId,
    /// Human-readable description of the inputs.
    pub inputs: String,
    /// Left-hand side.
    pub lhs: f64,
    /// Right-hand side.
    pub rhs: f64,
    /// Constants used.
    pub constants: Constants,
    /// `lhs <= rhs` within tolerance.
    pub pass: bool,
    /// `lhs / rhs` (0 when both vanish).
    pub slack_ratio: f64,
}

impl VerificationReport {
    /// Evaluates `lhs <= rhs` and the slack ratio.
    pub fn new(check: CheckId, inputs: String, lhs: f64, rhs: f64, constants: Constants) -> Self {
        Self {
            check,
            inputs,
            lhs,
            rhs,
            constants,
            pass: le_tol(lhs, rhs),
            slack_ratio: slack(lhs, rhs),
        }
    }
}

fn slack(lhs: f64, rhs: f64) -> f64 {
    if rhs == 0.0 {
        if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        lhs / rhs
    }
}

fn fmt_set<'a>(set: impl IntoIterator<Item = &'a usize>) -> String {
    let items: Vec<String> = set.into_iter().map(|k| format!("{k}")).collect();
    format!("{{{}}}", items.join(", "))
}

/// `K̂ = max ‖G_N x‖/‖x‖, ‖x - G_N x‖/‖x‖` over the corpus and `0 <= N <= |supp x|`.
pub fn estimate_k(space: &SpaceSpec, corpus: &[SparseVector]) -> Result<f64> {
    if corpus.is_empty() {
        return Err(Error::Argument("empty corpus".into()));
    }
    let mut best = 0.0f64;
    for (i, x) in corpus.iter().enumerate() {
        if x.is_empty() {
            return Err(Error::Argument(format!("corpus element {i} is zero")));
        }
        best = best.max(quasi_greedy_ratio(space, x));
    }
    Ok(best)
}

fn quasi_greedy_ratio(space: &SpaceSpec, x: &SparseVector) -> f64 {
    let norm = space.norm(x);
    (0..=x.len())
        .map(|n| {
            let (g, r) = greedy_split(x, n);
            space.norm(&g).max(space.norm(&r)) / norm
        })
        .fold(0.0, f64::max)
}

/// `(1/4K²) min|a| ‖1_Γ‖ <= ‖Σ a_k e_k‖ <= 2K max|a| ‖1_Γ‖` with `Γ = supp(coefficients)`.
pub fn check_two_sided_indicator(
    space: &SpaceSpec,
    coefficients: &SparseVector,
    k: f64,
) -> Result<(VerificationReport, VerificationReport)> {
    if coefficients.is_empty() {
        return Err(Error::Argument("Γ must be nonempty".into()));
    }
    let ind = space.indicator_norm(coefficients.iter().map(|e| e.0));
    let mid = space.norm(coefficients);
    let inputs = format!("space={space}; a={coefficients}");
    let lower = VerificationReport::new(
        CheckId::TwoSidedLower,
        inputs.clone(),
        coefficients.min_abs() * ind / (4.0 * k * k),
        mid,
        Constants::with_k(k),
    );
    let upper = VerificationReport::new(
        CheckId::TwoSidedUpper,
        inputs,
        mid,
        2.0 * k * coefficients.max_abs() * ind,
        Constants::with_k(k),
    );
    Ok((lower, upper))
}

/// Parameters of [`check_lemma_2_1`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma21Params {
    /// `C₁` in `‖1_Γ‖ <= C₁ η(|Γ|)`.
    pub c1: f64,
    /// Quasi-greedy constant.
    pub k: f64,
    /// `C_η`; `None` uses `4 C₁ D_η` with `D_η` the measured doubling constant.
    pub c_eta: Option<f64>,
}

impl Default for Lemma21Params {
    fn default() -> Self {
        Self {
            c1: 1.0,
            k: 1.0,
            c_eta: None,
        }
    }
}

/// Doubling constant `max η(2k)/η(k)` over `2k <= len`, after checking
/// `η` is positive and nondecreasing.
pub fn measured_doubling(eta: &[f64]) -> Result<f64> {
    if let Some((i, _)) = eta
        .iter()
        .enumerate()
        .find(|(_, e)| !(e.is_finite() && **e > 0.0))
    {
        return Err(Error::Hypothesis(format!("η({}) is not positive", i + 1)));
    }
    if let Some(i) = (1..eta.len()).find(|&i| eta[i] < eta[i - 1]) {
        return Err(Error::Hypothesis(format!("η decreases at {}", i + 1)));
    }
    Ok((1..=eta.len() / 2)
        .map(|k| eta[2 * k - 1] / eta[k - 1])
        .fold(1.0, f64::max))
}

fn need_eta(eta: &[f64], len: usize) -> Result<()> {
    if eta.len() < len {
        return Err(Error::Argument(format!(
            "η tabulated up to {} but support has {len}",
            eta.len()
        )));
    }
    Ok(())
}

/// Dyadic blocks `{π(k) : 2^j <= k < 2^{j+1}}` of an ordering (1-based ranks).
fn dyadic_blocks(order: &GreedyOrdering) -> Vec<IndexSet> {
    let mut blocks = Vec::new();
    let mut start = 1;
    while start <= order.len() {
        let end = (2 * start - 1).min(order.len());
        blocks.push(order.pi[start - 1..end].iter().copied().collect());
        start *= 2;
    }
    blocks
}

/// `‖x‖ <= 2K C_η Σ_k a_k* η(k)/k`, after spot-verifying
/// `‖1_Γ‖ <= C₁ η(|Γ|)` on the dyadic blocks and prefixes of the ordering.
pub fn check_lemma_2_1(
    space: &SpaceSpec,
    x: &SparseVector,
    eta: &[f64],
    params: Lemma21Params,
) -> Result<VerificationReport> {
    let order = greedy_ordering(x);
    need_eta(eta, order.len())?;
    let doubling = measured_doubling(&eta[..order.len().max(1).min(eta.len())])?;
    let mut sets = dyadic_blocks(&order);
    sets.extend((1..=order.len()).map(|m| order.head(m)));
    for set in &sets {
        let lhs = space.indicator_norm(set.iter().copied());
        if !le_tol(lhs, params.c1 * eta[set.len() - 1]) {
            return Err(Error::Hypothesis(format!(
                "‖1_Γ‖ = {lhs} exceeds C₁ η({}) for Γ = {}",
                set.len(),
                fmt_set(set)
            )));
        }
    }
    let c_eta = params.c_eta.unwrap_or(4.0 * params.c1 * doubling);
    let weighted: f64 = order
        .rearranged
        .iter()
        .enumerate()
        .map(|(i, a)| a * eta[i] / (i + 1) as f64)
        .sum();
    Ok(VerificationReport::new(
        CheckId::Lemma21,
        format!("space={space}; x={x}"),
        space.norm(x),
        2.0 * params.k * c_eta * weighted,
        Constants {
            k: params.k,
            c1: Some(params.c1),
            c_eta: Some(c_eta),
            ..Constants::default()
        },
    ))
}

/// `sup_k a_k* η(k) <= 4K³ C₂ ‖x‖`, after spot-verifying
/// `η(|Γ|)/C₂ <= ‖1_Γ‖` on the prefixes of the ordering.
pub fn check_lemma_2_2(
    space: &SpaceSpec,
    x: &SparseVector,
    eta: &[f64],
    c2: f64,
    k: f64,
) -> Result<VerificationReport> {
    let order = greedy_ordering(x);
    need_eta(eta, order.len())?;
    for m in 1..=order.len() {
        let ind = space.indicator_norm(order.pi[..m].iter().copied());
        if !le_tol(eta[m - 1] / c2, ind) {
            return Err(Error::Hypothesis(format!(
                "η({m})/C₂ = {} exceeds ‖1_Γ‖ = {ind} for Γ = {}",
                eta[m - 1] / c2,
                fmt_set(&order.pi[..m])
            )));
        }
    }
    let sup = order
        .rearranged
        .iter()
        .zip(eta)
        .map(|(a, e)| a * e)
        .fold(0.0, f64::max);
    Ok(VerificationReport::new(
        CheckId::Lemma22,
        format!("space={space}; x={x}"),
        sup,
        c2 * 4.0 * k * k * k * space.norm(x),
        Constants {
            k,
            c2: Some(c2),
            ..Constants::default()
        },
    ))
}

fn need_table(table: &DemocracyTable, n: usize) -> Result<()> {
    if n > table.n_max() {
        return Err(Error::Argument(format!(
            "democracy table stops at {} but {n} is needed",
            table.n_max()
        )));
    }
    Ok(())
}

/// `‖S_Γ x‖ <= slack · 8K⁴ v(|Γ|) ‖x‖`.
pub fn check_lemma_2_3(
    space: &SpaceSpec,
    x: &SparseVector,
    gamma: &IndexSet,
    k: f64,
    table: &DemocracyTable,
    slack_factor: f64,
) -> Result<VerificationReport> {
    need_table(table, gamma.len())?;
    let lhs = space.norm(&project(x, gamma));
    let rhs = slack_factor * 8.0 * powi(k, 4) * table.v_at(gamma.len()) * space.norm(x);
    Ok(VerificationReport::new(
        CheckId::Lemma23,
        format!("space={space}; x={x}; Γ={}", fmt_set(gamma)),
        lhs,
        rhs,
        Constants {
            k,
            slack_factor: Some(slack_factor),
            ..Constants::default()
        },
    ))
}

/// `‖x - G_N x‖ <= slack · 8K⁵ v(N) σ_N(x)`. With `σ_N(x) = 0` a pass
/// requires `‖x - G_N x‖ = 0`.
pub fn check_theorem_1(
    space: &SpaceSpec,
    x: &SparseVector,
    n: usize,
    k: f64,
    table: &DemocracyTable,
    slack_factor: f64,
) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::Argument("N must be positive".into()));
    }
    need_table(table, n)?;
    let best = sigma(space, x, n)?.value;
    let (_, res) = greedy_split(x, n);
    let lhs = space.norm(&res);
    let rhs = slack_factor * 8.0 * powi(k, 5) * table.v_at(n) * best;
    Ok(VerificationReport::new(
        CheckId::Theorem1,
        format!("space={space}; x={x}; N={n}"),
        lhs,
        rhs,
        Constants {
            k,
            slack_factor: Some(slack_factor),
            ..Constants::default()
        },
    ))
}

/// `‖1_B‖ <= K ‖1_A‖` for `B ⊆ A`.
pub fn check_nested_indicator(
    space: &SpaceSpec,
    b: &IndexSet,
    a: &IndexSet,
    k: f64,
) -> Result<VerificationReport> {
    if !b.is_subset(a) {
        return Err(Error::Argument(format!(
            "{} is not a subset of {}",
            fmt_set(b),
            fmt_set(a)
        )));
    }
    Ok(VerificationReport::new(
        CheckId::NestedIndicator,
        format!("space={space}; B={}; A={}", fmt_set(b), fmt_set(a)),
        space.indicator_norm(b.iter().copied()),
        k * space.indicator_norm(a.iter().copied()),
        Constants::with_k(k),
    ))
}

/// One intermediate inequality of [`theorem_1_trace`].
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    /// Short name of the step.
    pub name: &'static str,
    /// Left-hand side.
    pub lhs: f64,
    /// Right-hand side.
    pub rhs: f64,
    /// Whether the step holds.
    pub pass: bool,
}

impl TraceStep {
    fn le(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Self {
            name,
            lhs,
            rhs,
            pass: le_tol(lhs, rhs),
        }
    }

    fn eq(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Self {
            name,
            lhs,
            rhs,
            pass: le_tol(lhs, rhs) && le_tol(rhs, lhs),
        }
    }
}

/// Quantities of the Lebesgue-bound decomposition for one `(x, N, p_N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem1Trace {
    /// `N`.
    pub n: usize,
    /// Greedy set `Γ`, `|Γ| = N`.
    pub gamma: IndexSet,
    /// `P = supp(p_N)`.
    pub p: IndexSet,
    /// `P \ Γ`.
    pub p_minus_gamma: IndexSet,
    /// `Γ \ P`.
    pub gamma_minus_p: IndexSet,
    /// `‖x - G_N x‖`.
    pub greedy_error: f64,
    /// `‖x - p_N‖`.
    pub approx_error: f64,
    /// `‖S_P(x - p_N)‖`.
    pub projected_error: f64,
    /// `‖S_P x - S_Γ x‖`.
    pub support_gap: f64,
    /// `‖S_{P∖Γ} x‖`.
    pub outside_greedy: f64,
    /// `‖S_{Γ∖P} x‖`.
    pub outside_p: f64,
    /// Every intermediate inequality, in proof order.
    pub steps: Vec<TraceStep>,
}

impl Theorem1Trace {
    /// True when every step holds.
    pub fn all_pass(&self) -> bool {
        self.steps.iter().all(|s| s.pass)
    }

    /// Looks up a step by name.
    pub fn step(&self, name: &str) -> Option<&TraceStep> {
        self.steps.iter().find(|s| s.name == name)
    }
}

/// Greedy set of size exactly `n`; once the support is exhausted the
/// zero-coefficient indices follow in ascending order.
fn padded_greedy_set(x: &SparseVector, n: usize) -> IndexSet {
    let mut gamma = greedy_ordering(x).head(n);
    let mut k = 1;
    while gamma.len() < n {
        if x.get(k) == 0.0 {
            gamma.insert(k);
        }
        k += 1;
    }
    gamma
}

/// Replays the decomposition
/// `‖x - G_N x‖ <= ‖x - p_N‖ + ‖S_P(x - p_N)‖ + ‖S_P x - S_Γ x‖`
/// and the bounds on `‖S_{Γ∖P} x‖` and `‖S_{P∖Γ} x‖`, checking each step
/// with the given `K` and `slack_factor`.
pub fn theorem_1_trace(
    space: &SpaceSpec,
    x: &SparseVector,
    n: usize,
    p_n: &SparseVector,
    k: f64,
    table: &DemocracyTable,
    slack_factor: f64,
) -> Result<Theorem1Trace> {
    if p_n.len() != n {
        return Err(Error::Argument(format!(
            "p_N has {} nonzero coefficients, expected N = {n}",
            p_n.len()
        )));
    }
    need_table(table, n)?;
    let gamma = padded_greedy_set(x, n);
    let p = p_n.support();
    let p_minus_gamma: IndexSet = p.difference(&gamma).copied().collect();
    let gamma_minus_p: IndexSet = gamma.difference(&p).copied().collect();

    let diff = x.sub(p_n);
    let greedy_error = space.norm(&x.sub(&greedy_sum(x, n)));
    let approx_error = space.norm(&diff);
    let projected_error = space.norm(&project(&diff, &p));
    let s_p = project(x, &p);
    let support_gap = space.norm(&s_p.sub(&project(x, &gamma)));
    let outside_greedy = space.norm(&project(x, &p_minus_gamma));
    let outside_p = space.norm(&project(x, &gamma_minus_p));

    let k4 = 8.0 * powi(k, 4) * slack_factor;
    let k5 = 8.0 * powi(k, 5) * slack_factor;
    let v_n = table.v_at(n);
    let m = gamma_minus_p.len();
    let mut steps = alloc::vec![
        TraceStep::le(
            "triangle",
            greedy_error,
            approx_error + projected_error + support_gap
        ),
        TraceStep::eq(
            "projection_identity",
            space.norm(&p_n.sub(&s_p)),
            projected_error
        ),
        TraceStep::le("projection_bound", projected_error, k4 * v_n * approx_error),
        TraceStep::le("split", support_gap, outside_greedy + outside_p),
        TraceStep::eq("cardinality", p_minus_gamma.len() as f64, m as f64),
    ];

    let top_outside = p_minus_gamma
        .iter()
        .map(|&i| x.get(i).abs())
        .fold(0.0, f64::max);
    let low_inside = gamma_minus_p
        .iter()
        .map(|&i| x.get(i).abs())
        .reduce(f64::min)
        .unwrap_or(0.0);
    steps.push(TraceStep::le("threshold", top_outside, low_inside));

    // a_j*(S_{P∖Γ} x) <= a_j*(S_{Γ∖P} x), rank by rank
    let rank_lhs = greedy_ordering(&project(x, &p_minus_gamma)).rearranged;
    let rank_rhs = greedy_ordering(&project(x, &gamma_minus_p)).rearranged;
    steps.push(worst_rank_step("rank_threshold", &rank_lhs, &rank_rhs));

    // S_{Γ∖P}(x) = S_{Γ∖P}(x - p_N), and its rearrangement is dominated by G_m(x - p_N)
    steps.push(TraceStep::eq(
        "vanishes_off_p",
        outside_p,
        space.norm(&project(&diff, &gamma_minus_p)),
    ));
    let head = greedy_sum(&diff, m);
    let head_order = greedy_ordering(&head).rearranged;
    steps.push(worst_rank_step(
        "rearrangement_dominance",
        &rank_rhs,
        &head_order,
    ));

    let sup_hl = head_order
        .iter()
        .enumerate()
        .map(|(j, a)| a * table.h_l[j])
        .fold(0.0, f64::max);
    let head_norm = space.norm(&head);
    steps.push(TraceStep::le(
        "lower_democracy_bound",
        sup_hl,
        4.0 * powi(k, 3) * head_norm,
    ));
    steps.push(TraceStep::le(
        "quasi_greedy_bound",
        head_norm,
        k * approx_error,
    ));

    steps.push(TraceStep::le(
        "bound_outside_p",
        outside_p,
        k4 * table.v_at(m) * approx_error,
    ));
    steps.push(TraceStep::le(
        "bound_outside_p_by_v_n",
        outside_p,
        k4 * v_n * approx_error,
    ));
    steps.push(TraceStep::le(
        "bound_outside_greedy",
        outside_greedy,
        k5 * v_n * approx_error,
    ));
    let assembled =
        (1.0 + k4 * v_n) * approx_error + k4 * v_n * approx_error + k5 * v_n * approx_error;
    steps.push(TraceStep::le("assembled", greedy_error, assembled));

    Ok(Theorem1Trace {
        n,
        gamma,
        p,
        p_minus_gamma,
        gamma_minus_p,
        greedy_error,
        approx_error,
        projected_error,
        support_gap,
        outside_greedy,
        outside_p,
        steps,
    })
}

/// Rank-wise `lhs[j] <= rhs[j]`; reports the pair with the largest excess.
/// Missing ranks count as zero.
fn worst_rank_step(name: &'static str, lhs: &[f64], rhs: &[f64]) -> TraceStep {
    let len = lhs.len().max(rhs.len());
    let at = |v: &[f64], j: usize| v.get(j).copied().unwrap_or(0.0);
    let mut worst = TraceStep::le(name, 0.0, 0.0);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut all = true;
    for j in 0..len {
        let step = TraceStep::le(name, at(lhs, j), at(rhs, j));
        all &= step.pass;
        let excess = step.lhs - step.rhs;
        if excess > worst_excess {
            worst_excess = excess;
            worst = step;
        }
    }
    worst.pass = all;
    worst
}

/// Options for [`run_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    /// Checks to run, one report each per corpus vector.
    pub checks: Vec<CheckId>,
    /// Quasi-greedy constant.
    pub k: f64,
    /// Multiplier standing in for `≲`.
    pub slack_factor: f64,
    /// Largest `N` for the Lebesgue bound and its trace.
    pub n_max: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            checks: CheckId::ALL.to_vec(),
            k: 1.0,
            slack_factor: 1.0,
            n_max: 8,
        }
    }
}

/// Runs every requested check on one vector, one report per check.
///
/// Canonical inputs: `Γ = supp x` for the two-sided bound; `η = h_r`,
/// `C₁ = 1` and `η = h_l`, `C₂ = 1` for the rearrangement lemmas; the
/// even-ranked greedy indices for the projection bound; the worst
/// `N <= n_max` for the Lebesgue bound; the top half of the ordering
/// inside the support for the nested-indicator check; and for the trace,
/// `N = max(1, s/2)` with `p_N = S_P x` on the even-ranked indices.
pub fn check_vector(
    space: &SpaceSpec,
    x: &SparseVector,
    table: &DemocracyTable,
    opts: &SuiteOptions,
) -> Result<Vec<VerificationReport>> {
    if x.is_empty() {
        return Err(Error::Argument("zero vector in corpus".into()));
    }
    need_table(table, x.len())?;
    let order = greedy_ordering(x);
    let k = opts.k;
    let mut out = Vec::with_capacity(opts.checks.len());
    for &check in &opts.checks {
        let report = match check {
            CheckId::QuasiGreedy => VerificationReport::new(
                check,
                format!("space={space}; x={x}"),
                quasi_greedy_ratio(space, x) * space.norm(x),
                k * space.norm(x),
                Constants::with_k(k),
            ),
            CheckId::TwoSidedLower => check_two_sided_indicator(space, x, k)?.0,
            CheckId::TwoSidedUpper => check_two_sided_indicator(space, x, k)?.1,
            CheckId::Lemma21 => check_lemma_2_1(
                space,
                x,
                &table.h_r,
                Lemma21Params {
                    c1: 1.0,
                    k,
                    c_eta: None,
                },
            )?,
            CheckId::Lemma22 => check_lemma_2_2(space, x, &table.h_l, 1.0, k)?,
            CheckId::Lemma23 => {
                let gamma: IndexSet = order.pi.iter().skip(1).step_by(2).copied().collect();
                check_lemma_2_3(space, x, &gamma, k, table, opts.slack_factor)?
            }
            CheckId::Theorem1 => {
                let mut worst: Option<VerificationReport> = None;
                for n in 1..=opts.n_max {
                    let r = check_theorem_1(space, x, n, k, table, opts.slack_factor)?;
                    let replace = match &worst {
                        None => true,
                        Some(w) => {
                            (!r.pass && w.pass)
                                || (r.pass == w.pass && r.slack_ratio > w.slack_ratio)
                        }
                    };
                    if replace {
                        worst = Some(r);
                    }
                }
                worst.ok_or_else(|| Error::Argument("n_max must be positive".into()))?
            }
            CheckId::NestedIndicator => {
                let b = order.head(order.len().div_ceil(2));
                check_nested_indicator(space, &b, &x.support(), k)?
            }
            CheckId::Theorem1Trace => {
                let s = order.len();
                let n = (s / 2).max(1);
                let p: IndexSet = if s == 1 {
                    order.head(1)
                } else {
                    order
                        .pi
                        .iter()
                        .skip(1)
                        .step_by(2)
                        .take(n)
                        .copied()
                        .collect()
                };
                let p_n = project(x, &p);
                let trace = theorem_1_trace(space, x, n, &p_n, k, table, opts.slack_factor)?;
                let last = trace
                    .step("assembled")
                    .expect("assembled step is always recorded");
                let mut report = VerificationReport::new(
                    check,
                    format!("space={space}; x={x}; N={n}; P={}", fmt_set(&trace.p)),
                    last.lhs,
                    last.rhs,
                    Constants {
                        k,
                        slack_factor: Some(opts.slack_factor),
                        ..Constants::default()
                    },
                );
                report.pass = trace.all_pass();
                report
            }
        };
        out.push(report);
    }
    Ok(out)
}

/// Runs [`check_vector`] over a corpus; reports sorted by check then inputs.
pub fn run_suite(
    space: &SpaceSpec,
    corpus: &[SparseVector],
    table: &DemocracyTable,
    opts: &SuiteOptions,
) -> Result<Vec<VerificationReport>> {
    let mut all = Vec::new();
    for x in corpus {
        all.extend(check_vector(space, x, table, opts)?);
    }
    sort_reports(&mut all);
    Ok(all)
}

/// Parallel [`run_suite`]; the sorted output is identical.
#[cfg(feature = "parallel")]
pub fn run_suite_par(
    space: &SpaceSpec,
    corpus: &[SparseVector],
    table: &DemocracyTable,
    opts: &SuiteOptions,
) -> Result<Vec<VerificationReport>> {
    use rayon::prelude::*;
    let parts: Result<Vec<Vec<VerificationReport>>> = corpus
        .par_iter()
        .map(|x| check_vector(space, x, table, opts))
        .collect();
    let mut all: Vec<VerificationReport> = parts?.into_iter().flatten().collect();
    sort_reports(&mut all);
    Ok(all)
}

fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| {
        a.check
            .as_str()
            .cmp(b.check.as_str())
            .then_with(|| a.inputs.cmp(&b.inputs))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::democracy::DemocracyTable;

    fn v(pairs: &[(usize, f64)]) -> SparseVector {
        SparseVector::from_pairs(pairs.iter().copied()).unwrap()
    }

    fn x321() -> SparseVector {
        v(&[(1, 3.0), (2, 2.0), (3, 1.0)])
    }

    fn witness2() -> SparseVector {
        v(&[(1, 1.0), (2, 1.01), (3, 1.0), (4, 1.01)])
    }

    fn l2() -> SpaceSpec {
        SpaceSpec::lp(2.0).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn estimate_k_examples() {
        assert_eq!(
            estimate_k(&SpaceSpec::lp(1.0).unwrap(), &[x321()]).unwrap(),
            1.0
        );
        assert_eq!(
            estimate_k(&SpaceSpec::l1_plus_l2(), &[witness2()]).unwrap(),
            1.0
        );
        assert!(estimate_k(&l2(), &[SparseVector::new()]).is_err());
        assert!(estimate_k(&l2(), &[]).is_err());
    }

    #[test]
    fn two_sided_examples() {
        let (lo, hi) = check_two_sided_indicator(&l2(), &x321(), 1.0).unwrap();
        assert!(close(lo.lhs, 0.25 * 3f64.sqrt(), 1e-15) && close(lo.rhs, 14f64.sqrt(), 1e-15));
        assert!(close(hi.rhs, 6.0 * 3f64.sqrt(), 1e-14));
        assert!(lo.pass && hi.pass);

        let a = v(&[(1, 3.0), (2, -1.0)]);
        let (lo, hi) = check_two_sided_indicator(&SpaceSpec::l1_plus_l2(), &a, 1.0).unwrap();
        assert_eq!((lo.lhs, lo.rhs, hi.lhs, hi.rhs), (0.5, 4.0, 4.0, 12.0));

        let c = v(&[(2, 0.7), (5, 0.7), (6, 0.7)]);
        let (lo, hi) = check_two_sided_indicator(&SpaceSpec::l1_plus_l2(), &c, 1.0).unwrap();
        assert!(lo.pass && hi.pass);
        assert!(close(hi.slack_ratio, 0.5, 1e-15));

        assert!(check_two_sided_indicator(&l2(), &SparseVector::new(), 1.0).is_err());
    }

    #[test]
    fn lemma_2_1_examples() {
        let eta: Vec<f64> = (1..=3).map(|k| (k as f64).sqrt()).collect();
        let r = check_lemma_2_1(
            &l2(),
            &x321(),
            &eta,
            Lemma21Params {
                c_eta: Some(4.0),
                ..Default::default()
            },
        )
        .unwrap();
        let sum = 3.0 + 2.0 / 2f64.sqrt() + 1.0 / 3f64.sqrt();
        assert!(close(sum, 4.99156, 1e-5));
        assert!(close(r.rhs, 8.0 * sum, 1e-13));
        assert!(r.pass);

        let single = v(&[(7, 5.0)]);
        let r = check_lemma_2_1(
            &l2(),
            &single,
            &[1.0],
            Lemma21Params {
                c_eta: Some(0.5),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!((r.lhs, r.rhs), (5.0, 5.0));
        assert!(r.pass);

        let ds = SpaceSpec::l1_plus_l2();
        let hr = [1.0, 2.0, 3.0, 4.0];
        let r = check_lemma_2_1(
            &ds,
            &witness2(),
            &hr,
            Lemma21Params {
                c_eta: Some(4.0),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(close(r.lhs, 2.0 + 1.01 * 2f64.sqrt(), 1e-14));
        assert!(close(r.rhs, 32.16, 1e-12));
        assert!(r.pass);
    }

    #[test]
    fn lemma_2_1_default_constant_and_hypotheses() {
        let eta: Vec<f64> = (1..=3).map(|k| (k as f64).sqrt()).collect();
        let r = check_lemma_2_1(&l2(), &x321(), &eta, Lemma21Params::default()).unwrap();
        assert!(close(r.constants.c_eta.unwrap(), 4.0 * 2f64.sqrt(), 1e-15));
        // η = 1 underestimates ‖1_Γ‖ in l2
        assert!(matches!(
            check_lemma_2_1(&l2(), &x321(), &[1.0, 1.0, 1.0], Lemma21Params::default()),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            check_lemma_2_1(&l2(), &x321(), &[1.0, 2.0, 1.5], Lemma21Params::default()),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            check_lemma_2_1(&l2(), &x321(), &[1.0, 2.0], Lemma21Params::default()),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn lemma_2_2_examples() {
        let eta: Vec<f64> = (1..=3).map(|k| (k as f64).sqrt()).collect();
        let r = check_lemma_2_2(&l2(), &x321(), &eta, 1.0, 1.0).unwrap();
        // sup{3·1, 2·√2, 1·√3} = 3
        assert_eq!(r.lhs, 3.0);
        assert!(close(r.rhs, 4.0 * 14f64.sqrt(), 1e-14));
        assert!(r.pass);

        let r = check_lemma_2_2(&l2(), &v(&[(1, 1.0)]), &[1.0], 1.0, 1.0).unwrap();
        assert_eq!((r.lhs, r.rhs), (1.0, 4.0));

        let ds = SpaceSpec::l1_plus_l2();
        let t = DemocracyTable::closed_form(&ds, 4);
        let r = check_lemma_2_2(&ds, &witness2(), &t.h_l, 1.0, 1.0).unwrap();
        assert!(close(r.lhs, 2.0, 1e-15));
        assert!(close(r.rhs, 4.0 * (2.0 + 1.01 * 2f64.sqrt()), 1e-13));
        assert!(r.pass);

        // h_r overestimates ‖1_Γ‖ for the even-indexed block
        assert!(matches!(
            check_lemma_2_2(&ds, &witness2(), &t.h_r, 1.0, 1.0),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn lemma_2_3_examples() {
        let ds = SpaceSpec::l1_plus_l2();
        let t = DemocracyTable::closed_form(&ds, 4);
        let r = check_lemma_2_3(&ds, &witness2(), &[2, 4].into(), 1.0, &t, 1.0).unwrap();
        assert!(close(r.lhs, 1.01 * 2f64.sqrt(), 1e-15));
        let expect = 8.0 * (1.0 + 2f64.sqrt() / 2.0) * (2.0 + 1.01 * 2f64.sqrt());
        assert!(close(r.rhs, expect, 1e-12));
        assert!(close(r.rhs, 46.83, 0.01));
        assert!(r.pass);

        let r = check_lemma_2_3(&ds, &witness2(), &witness2().support(), 1.0, &t, 1.0).unwrap();
        assert!(r.pass && r.lhs == ds.norm(&witness2()));

        let r = check_lemma_2_3(&ds, &witness2(), &IndexSet::new(), 1.0, &t, 1.0).unwrap();
        assert!(r.pass && r.lhs == 0.0 && r.rhs == 0.0);
    }

    #[test]
    fn theorem_1_examples() {
        let ds = SpaceSpec::l1_plus_l2();
        let t = DemocracyTable::closed_form(&ds, 4);
        let r = check_theorem_1(&ds, &witness2(), 2, 1.0, &t, 1.0).unwrap();
        assert_eq!(r.lhs, 2.0);
        assert!(close(
            r.rhs,
            8.0 * (1.0 + 2f64.sqrt() / 2.0) * 1.01 * 2f64.sqrt(),
            1e-12
        ));
        assert!(close(r.rhs, 19.51, 0.01));
        assert!(r.pass);

        let t2 = DemocracyTable::closed_form(&l2(), 4);
        let r = check_theorem_1(&l2(), &x321(), 1, 1.0, &t2, 1.0).unwrap();
        assert!(close(r.lhs, 5f64.sqrt(), 1e-15));
        assert!(close(r.slack_ratio, 0.125, 1e-15));

        let r = check_theorem_1(&l2(), &x321(), 3, 1.0, &t2, 1.0).unwrap();
        assert_eq!((r.lhs, r.rhs, r.pass), (0.0, 0.0, true));

        let r = check_theorem_1(&l2(), &x321(), 1, 1.0, &t2, 0.0).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn nested_examples() {
        let r =
            check_nested_indicator(&l2(), &[3, 4].into(), &[1, 2, 3, 4, 5].into(), 1.0).unwrap();
        assert_eq!((r.lhs, r.rhs), (2f64.sqrt(), 5f64.sqrt()));
        let a: IndexSet = [2, 9, 11].into();
        let r = check_nested_indicator(&l2(), &a, &a, 1.0).unwrap();
        assert!(r.pass && r.slack_ratio == 1.0);
        let r = check_nested_indicator(
            &SpaceSpec::l1_plus_l2(),
            &[2, 4].into(),
            &[1, 2, 3, 4].into(),
            1.0,
        )
        .unwrap();
        assert!(close(r.rhs, 2.0 + 2f64.sqrt(), 1e-15) && r.pass);
        assert!(check_nested_indicator(&l2(), &[6].into(), &[1].into(), 1.0).is_err());
    }

    #[test]
    fn trace_examples() {
        let ds = SpaceSpec::l1_plus_l2();
        let t = DemocracyTable::closed_form(&ds, 4);
        let x = witness2();
        let p_n = project(&x, &[1, 3].into());
        let tr = theorem_1_trace(&ds, &x, 2, &p_n, 1.0, &t, 1.0).unwrap();
        assert_eq!(tr.p_minus_gamma, [1, 3].into());
        assert_eq!(tr.gamma_minus_p, [2, 4].into());
        assert!(tr.all_pass(), "{:?}", tr.steps);

        let g = greedy_sum(&x, 2);
        let tr = theorem_1_trace(&ds, &x, 2, &g, 1.0, &t, 1.0).unwrap();
        assert!(tr.p_minus_gamma.is_empty() && tr.gamma_minus_p.is_empty());
        assert_eq!(tr.support_gap, 0.0);
        assert_eq!(tr.projected_error, 0.0);
        assert!(tr.all_pass());

        let t2 = DemocracyTable::closed_form(&l2(), 3);
        let tr = theorem_1_trace(&l2(), &x321(), 1, &v(&[(2, 2.0)]), 1.0, &t2, 1.0).unwrap();
        let th = tr.step("threshold").unwrap();
        assert_eq!((th.lhs, th.rhs, th.pass), (2.0, 3.0, true));
        assert!(tr.all_pass());

        assert!(theorem_1_trace(&l2(), &x321(), 2, &v(&[(2, 2.0)]), 1.0, &t2, 1.0).is_err());
    }

    #[test]
    fn trace_pads_short_supports() {
        let t = DemocracyTable::closed_form(&l2(), 4);
        let x = v(&[(2, 1.0)]);
        let p_n = v(&[(5, 0.5), (7, 0.1), (9, 2.0)]);
        let tr = theorem_1_trace(&l2(), &x, 3, &p_n, 1.0, &t, 1.0).unwrap();
        assert_eq!(tr.gamma, [1, 2, 3].into());
        assert!(tr.all_pass(), "{:?}", tr.steps);
    }

    #[test]
    fn check_ids_round_trip() {
        for c in CheckId::ALL {
            assert_eq!(CheckId::parse(c.as_str()), Some(c));
        }
        assert_eq!(CheckId::parse("nope"), None);
    }

    #[test]
    fn suite_yields_one_report_per_check_and_vector() {
        let ds = SpaceSpec::l1_plus_l2();
        let t = DemocracyTable::closed_form(&ds, 8);
        let corpus = [x321(), witness2(), v(&[(5, -0.3)])];
        let opts = SuiteOptions {
            n_max: 4,
            ..Default::default()
        };
        let reports = run_suite(&ds, &corpus, &t, &opts).unwrap();
        assert_eq!(reports.len(), 3 * CheckId::ALL.len());
        assert!(reports.iter().all(|r| r.pass), "{reports:#?}");

        let zero = SuiteOptions {
            slack_factor: 0.0,
            checks: alloc::vec![CheckId::Theorem1],
            n_max: 2,
            k: 1.0,
        };
        let reports = run_suite(&ds, &corpus, &t, &zero).unwrap();
        assert!(reports.iter().any(|r| !r.pass));
    }
}

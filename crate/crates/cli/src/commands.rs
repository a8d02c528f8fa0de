//! Subcommand implementations. Each returns the process exit code.

use std::path::PathBuf;

use qgreedy::approx::{adversarial_witness, greedy_efficiency, sigma, sigma_tilde};
use qgreedy::democracy::{democracy_closed_form, DemocracyTable};
use qgreedy::greedy::{greedy_ordering, greedy_split};
use qgreedy::verify::{run_suite, run_suite_par, SuiteOptions, VerificationReport};
use qgreedy::{SpaceSpec, SparseVector};
use serde::Serialize;

use crate::config::RunConfig;
use crate::corpus;
use crate::error::{CliError, Result, EXIT_CHECK_FAILED, EXIT_OK};
use crate::formats::{
    democracy_csv, space_slug, to_json_pretty, write_atomic, ReportJson, SpaceDto, VectorJson,
};
use crate::plot::{Chart, Series};

/// Relative agreement demanded between brute force and closed forms.
pub const CROSS_CHECK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub written: Vec<PathBuf>,
    pub summary: String,
}

/// Brute-force table for `1..=n_max` over the configured window,
/// cross-checked against the closed forms.
pub fn democracy_table(cfg: &RunConfig) -> Result<DemocracyTable> {
    let table = if cfg.parallel {
        DemocracyTable::bruteforce_par(&cfg.space, cfg.n_max, cfg.window)?
    } else {
        DemocracyTable::bruteforce(&cfg.space, cfg.n_max, cfg.window)?
    };
    for n in 1..=cfg.n_max {
        let (r, l) = democracy_closed_form(&cfg.space, n);
        for (what, brute, closed) in [("h_r", table.h_r[n - 1], r), ("h_l", table.h_l[n - 1], l)] {
            if (brute - closed).abs() > CROSS_CHECK_TOL * closed.abs() {
                return Err(CliError::Inconsistent(format!(
                    "{what}({n}) on {}: brute force {brute} vs closed form {closed}",
                    cfg.space
                )));
            }
        }
    }
    Ok(table)
}

/// Extends a brute-force table with closed-form values up to `len`.
pub fn extend_table(space: &SpaceSpec, table: &DemocracyTable, len: usize) -> DemocracyTable {
    if len <= table.n_max() {
        return table.clone();
    }
    let (mut h_r, mut h_l) = (table.h_r.clone(), table.h_l.clone());
    for n in table.n_max() + 1..=len {
        let (r, l) = democracy_closed_form(space, n);
        h_r.push(r);
        h_l.push(l);
    }
    DemocracyTable::from_democracy(h_r, h_l, table.window)
}

pub fn democracy(cfg: &RunConfig) -> Result<Outcome> {
    let table = democracy_table(cfg)?;
    let path = cfg
        .output_dir
        .join(format!("democracy_{}.csv", space_slug(&cfg.space)));
    write_atomic(&path, &democracy_csv(&table)?)?;
    Ok(Outcome {
        code: EXIT_OK,
        summary: format!(
            "{}: mu({}) = {}",
            cfg.space,
            cfg.n_max,
            table.mu_at(cfg.n_max)
        ),
        written: vec![path],
    })
}

/// Runs the configured checks over the corpus, sorted by check then inputs.
pub fn verification_reports(
    cfg: &RunConfig,
    corpus: &[SparseVector],
) -> Result<Vec<VerificationReport>> {
    let base = democracy_table(cfg)?;
    let longest = corpus.iter().map(SparseVector::len).max().unwrap_or(0);
    let table = extend_table(&cfg.space, &base, longest);
    let opts = SuiteOptions {
        checks: cfg.checks.clone(),
        k: 1.0,
        slack_factor: cfg.slack_factor,
        n_max: cfg.n_max,
    };
    let reports = if cfg.parallel {
        run_suite_par(&cfg.space, corpus, &table, &opts)?
    } else {
        run_suite(&cfg.space, corpus, &table, &opts)?
    };
    Ok(reports)
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome> {
    let corpus = corpus::build(cfg)?;
    let reports = verification_reports(cfg, &corpus)?;
    let json: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
    let path = cfg.output_dir.join("verify.json");
    write_atomic(&path, &to_json_pretty(&json))?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    let worst = reports.iter().map(|r| r.slack_ratio).fold(0.0, f64::max);
    Ok(Outcome {
        code: if failed == 0 {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        },
        summary: format!(
            "{} reports over {} vectors, {failed} failed, max slack ratio {worst}",
            reports.len(),
            corpus.len()
        ),
        written: vec![path],
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Labels {
    #[serde(rename = "e_N_hat")]
    pub e_n_hat: &'static str,
    pub witness_lower_bound: &'static str,
}

const LABELS: Labels = Labels {
    e_n_hat: "empirical",
    witness_lower_bound: "certified lower bound",
};

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub space: SpaceDto,
    #[serde(rename = "N")]
    pub n: usize,
    pub epsilon: f64,
    pub vector: VectorJson,
    pub set_a: Vec<usize>,
    pub set_b: Vec<usize>,
    pub lower_bound: f64,
    pub sigma: f64,
    pub sigma_tilde: f64,
    #[serde(rename = "e_N_hat")]
    pub e_n_hat: f64,
    #[serde(rename = "e_tilde_N_hat")]
    pub e_tilde_n_hat: f64,
    pub witness_lower_bound: f64,
    pub witness_vector: VectorJson,
    pub mu: f64,
    pub labels: Labels,
}

pub fn witness_report(cfg: &RunConfig, n: usize) -> Result<WitnessReport> {
    if n == 0 {
        return Err(CliError::Config("N must be positive".into()));
    }
    let window = cfg.window.max(cfg.space.min_window(n)).max(2 * n);
    let w = adversarial_witness(&cfg.space, n, cfg.epsilon, window)?;
    let s = sigma(&cfg.space, &w.vector, n)?.value;
    let st = sigma_tilde(&cfg.space, &w.vector, n)?.value;
    let eff = greedy_efficiency(&cfg.space, std::slice::from_ref(&w.vector), n)?;
    let mu = DemocracyTable::closed_form(&cfg.space, n).mu_at(n);
    Ok(WitnessReport {
        space: SpaceDto::from_space(&cfg.space),
        n,
        epsilon: cfg.epsilon,
        vector: VectorJson(w.vector.clone()),
        set_a: w.set_a,
        set_b: w.set_b,
        lower_bound: w.lower_bound,
        sigma: s,
        sigma_tilde: st,
        e_n_hat: eff.e_hat,
        e_tilde_n_hat: eff.e_tilde_hat,
        witness_lower_bound: w.lower_bound,
        witness_vector: VectorJson(w.vector),
        mu,
        labels: LABELS,
    })
}

pub fn witness(cfg: &RunConfig, n: Option<usize>) -> Result<Outcome> {
    let n = n.unwrap_or(cfg.n_max);
    let report = witness_report(cfg, n)?;
    let path = cfg
        .output_dir
        .join(format!("witness_{}_N{n}.json", space_slug(&cfg.space)));
    write_atomic(&path, &to_json_pretty(&report))?;
    Ok(Outcome {
        code: EXIT_OK,
        summary: format!(
            "{}: N = {n}, certified lower bound {}",
            cfg.space, report.lower_bound
        ),
        written: vec![path],
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GreedyVectorReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub vector: VectorJson,
    pub greedy_order: Vec<usize>,
    pub greedy_sum: VectorJson,
    pub residual: VectorJson,
    pub residual_norm: f64,
    pub sigma: f64,
    pub sigma_tilde: f64,
    pub sigma_witness: Vec<usize>,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EfficiencyRow {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "e_N_hat")]
    pub e_n_hat: f64,
    #[serde(rename = "e_tilde_N_hat")]
    pub e_tilde_n_hat: f64,
    pub argmax: usize,
    pub mu: f64,
    pub v: f64,
    /// `8 v(N)`, the Lebesgue-type bound with `K = 1`.
    pub bound: f64,
    pub label: &'static str,
}

pub fn greedy_vector(space: &SpaceSpec, x: &SparseVector, n: usize) -> Result<GreedyVectorReport> {
    let (g, r) = greedy_split(x, n);
    let s = sigma(space, x, n)?;
    let st = sigma_tilde(space, x, n)?;
    let residual_norm = space.norm(&r);
    Ok(GreedyVectorReport {
        n,
        vector: VectorJson(x.clone()),
        greedy_order: greedy_ordering(x).pi,
        greedy_sum: VectorJson(g),
        residual: VectorJson(r),
        residual_norm,
        sigma: s.value,
        sigma_tilde: st.value,
        sigma_witness: s.witness_set.into_iter().collect(),
        ratio: qgreedy::approx::error_ratio(residual_norm, s.value),
    })
}

pub fn efficiency_rows(
    cfg: &RunConfig,
    corpus: &[SparseVector],
    ns: &[usize],
) -> Result<Vec<EfficiencyRow>> {
    let last = ns.iter().copied().max().unwrap_or(1);
    let table = DemocracyTable::closed_form(&cfg.space, last);
    ns.iter()
        .map(|&n| {
            let e = greedy_efficiency(&cfg.space, corpus, n)?;
            Ok(EfficiencyRow {
                n,
                e_n_hat: e.e_hat,
                e_tilde_n_hat: e.e_tilde_hat,
                argmax: e.argmax,
                mu: table.mu_at(n),
                v: table.v_at(n),
                bound: 8.0 * table.v_at(n),
                label: LABELS.e_n_hat,
            })
        })
        .collect()
}

pub fn greedy(cfg: &RunConfig, vector: Option<&SparseVector>, n: Option<usize>) -> Result<Outcome> {
    let path = cfg.output_dir.join("greedy.json");
    match vector {
        Some(x) => {
            let n = n.unwrap_or(1);
            let report = greedy_vector(&cfg.space, x, n)?;
            write_atomic(&path, &to_json_pretty(&report))?;
            Ok(Outcome {
                code: EXIT_OK,
                summary: format!(
                    "N = {n}: residual {} vs sigma {} (ratio {})",
                    report.residual_norm, report.sigma, report.ratio
                ),
                written: vec![path],
            })
        }
        None => {
            let corpus = corpus::build(cfg)?;
            let ns: Vec<usize> = match n {
                Some(n) => vec![n],
                None => (1..=cfg.n_max).collect(),
            };
            let rows = efficiency_rows(cfg, &corpus, &ns)?;
            write_atomic(&path, &to_json_pretty(&rows))?;
            let worst = rows.iter().map(|r| r.e_n_hat / r.bound).fold(0.0, f64::max);
            Ok(Outcome {
                code: EXIT_OK,
                summary: format!("{} rows; max e_N_hat / (8 v(N)) = {worst}", rows.len()),
                written: vec![path],
            })
        }
    }
}

pub fn plot(cfg: &RunConfig) -> Result<Outcome> {
    let table = democracy_table(cfg)?;
    let corpus = corpus::build(cfg)?;
    let ns: Vec<usize> = (1..=cfg.n_max).collect();
    let rows = efficiency_rows(cfg, &corpus, &ns)?;
    let xy = |values: &[f64]| -> Vec<(f64, f64)> {
        values
            .iter()
            .enumerate()
            .map(|(i, &v)| ((i + 1) as f64, v))
            .collect()
    };
    let mut series = vec![
        Series::new("h_r", xy(&table.h_r)),
        Series::new("h_l", xy(&table.h_l)),
        Series::new("mu", xy(&table.mu)),
        Series::new("v", xy(&table.v)),
        Series::new(
            "e_N_hat",
            rows.iter().map(|r| (r.n as f64, r.e_n_hat)).collect(),
        ),
    ];
    let mut notes = Vec::new();
    if !cfg.checks.is_empty() {
        let reports = verification_reports(cfg, &corpus)?;
        let passed = reports.iter().filter(|r| r.pass).count();
        series.push(
            Series::new(
                "8 v(N) bound",
                xy(&table
                    .v
                    .iter()
                    .map(|v| 8.0 * cfg.slack_factor * v)
                    .collect::<Vec<_>>()),
            )
            .dashed(),
        );
        notes.push(format!("checks: {passed}/{} passed", reports.len()));
    }
    let chart = Chart {
        title: format!("Democracy and greedy efficiency on {}", cfg.space),
        x_label: "N".into(),
        log_x: cfg.log_x,
        series,
        notes,
    };
    let path = cfg
        .output_dir
        .join(format!("democracy_{}.svg", space_slug(&cfg.space)));
    write_atomic(&path, chart.render().as_bytes())?;
    Ok(Outcome {
        code: EXIT_OK,
        summary: format!("plotted {}", cfg.space),
        written: vec![path],
    })
}

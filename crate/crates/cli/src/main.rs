use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qgreedy_cli::commands::{self, Outcome};
use qgreedy_cli::config::{RawConfig, RunConfig};
use qgreedy_cli::error::{CliError, Result};
use qgreedy_cli::formats::{parse_vector, SpaceDto};

#[derive(Debug, Parser)]
#[command(
    name = "qgreedy",
    version,
    about = "Greedy approximation diagnostics on sequence spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate h_r, h_l, mu, v and doubling ratios as CSV.
    Democracy(Common),
    /// Run the inequality checks over a corpus; exits 1 if any fails.
    Verify(Common),
    /// Build the adversarial witness for one N and report its errors.
    Witness {
        #[command(flatten)]
        common: Common,
        /// Number of terms (defaults to n_max).
        #[arg(long)]
        n: Option<usize>,
        /// Perturbation of the greedy-selected block.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Greedy approximation of one vector, or corpus efficiencies per N.
    Greedy {
        #[command(flatten)]
        common: Common,
        /// Sparse vector as JSON, e.g. '{"1": 3, "2": -1}'.
        #[arg(long)]
        vector: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Write an SVG chart of the democracy functions and efficiencies.
    Plot {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        log_x: bool,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// RunConfig JSON file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Inline space descriptor JSON; overrides the config.
    #[arg(long)]
    space: Option<String>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    window: Option<usize>,
    /// Corpus seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    slack: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated check ids; an empty string selects none.
    #[arg(long)]
    checks: Option<String>,
    /// Disable parallel enumeration.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn resolve(&self) -> Result<RawConfig> {
        let mut raw = match &self.config {
            Some(path) => RawConfig::from_file(path)?,
            None => RawConfig::default(),
        };
        if let Some(space) = &self.space {
            raw.space = Some(
                serde_json::from_str::<SpaceDto>(space)
                    .map_err(|e| CliError::json("--space", e))?,
            );
        }
        if let Some(n) = self.nmax {
            raw.n_max = n;
        }
        if self.window.is_some() {
            raw.window = self.window;
        }
        if let Some(seed) = self.seed {
            raw.corpus.seed = seed;
        }
        if let Some(slack) = self.slack {
            raw.slack_factor = slack;
        }
        if let Some(out) = &self.out {
            raw.output_dir = out.clone();
        }
        if let Some(checks) = &self.checks {
            raw.checks = Some(
                checks
                    .split(',')
                    .map(str::trim)
                    .filter(|c| !c.is_empty())
                    .map(String::from)
                    .collect(),
            );
        }
        if self.sequential {
            raw.parallel = false;
        }
        Ok(raw)
    }

    fn config(&self) -> Result<RunConfig> {
        self.resolve()?.validate()
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Democracy(c) => commands::democracy(&c.config()?),
        Command::Verify(c) => commands::verify(&c.config()?),
        Command::Witness { common, n, eps } => {
            let mut raw = common.resolve()?;
            if let Some(eps) = eps {
                raw.epsilon = eps;
            }
            commands::witness(&raw.validate()?, n)
        }
        Command::Greedy { common, vector, n } => {
            let cfg = common.config()?;
            let x = vector.map(|v| parse_vector(&v, "--vector")).transpose()?;
            commands::greedy(&cfg, x.as_ref(), n)
        }
        Command::Plot { common, log_x } => {
            let mut raw = common.resolve()?;
            raw.log_x |= log_x;
            commands::plot(&raw.validate()?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            for path in &outcome.written {
                println!("wrote {}", path.display());
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(err) => {
            eprintln!("qgreedy: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

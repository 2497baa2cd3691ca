//! Experiment runner behind the `tailscore` binary.
//!
//! Each invocation runs one experiment and writes one CSV table (header
//! row first). Exit status: 0 on success, 2 when a spec, grid or flag does
//! not parse, 3 on a numerical failure, 1 when the output cannot be
//! written.

mod format;
mod spec;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use format::{fmt_num, parse_counts, parse_grid};
pub use spec::{parse_distribution, parse_function, parse_rule, parse_score, ParseError, ScoreSpec};

use crate::distributions::Distribution;
use crate::functional::Functional;
use crate::lab::Lab;
use crate::quadrature::QuadConfig;
use crate::scoring::{ScoreEngine, ScoringFunction, ScoringRule};
use crate::tail::{tail_compare, MIndex};
use format::fmt_opt;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{flag}: {source}")]
    Parse {
        flag: &'static str,
        #[source]
        source: ParseError,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] crate::Error),
    #[error("cannot write output: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tailscore", version, about = "Scoring-rule and tail-functional experiments, as CSV")]
pub struct Cli {
    /// Write the CSV here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Absolute tolerance per quadrature integral.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_quad: f64,
    /// Multiple of the summed abs_error allowed as numerical slack.
    #[arg(long, global = true, default_value_t = crate::lab::DEFAULT_SLACK)]
    pub tol_slack: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tail profile of a distribution: endpoints, mean, evi, rv_index, m_index.
    Profile { spec: String },
    /// Mixing weight at which two point forecasts score equally.
    Crossing(CrossingArgs),
    /// Diagonal-continuity bound on a grid of mixing weights.
    Bound(PairArgs),
    /// Score gap and bound along the mixture path, for plotting.
    Curve(PairArgs),
    /// ε-close mixture that keeps the alternative's tail.
    Epsilon(EpsilonArgs),
    /// Tail comparison with the survival-ratio probe table.
    Tailcmp { first: String, second: String },
    /// Monte-Carlo detection rate of the truth against an alternative.
    Power(PowerArgs),
}

#[derive(Debug, Args)]
pub struct CrossingArgs {
    #[arg(long)]
    pub score: String,
    #[arg(long, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub x1: f64,
    #[arg(long)]
    pub f0: String,
    #[arg(long)]
    pub f1: String,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub score: String,
    #[arg(long)]
    pub truth: String,
    #[arg(long)]
    pub alt: String,
    /// `v1,v2,...`, `lin:start:stop:count` or `geom:start:stop:count`, in [0, 1).
    #[arg(long, default_value = "0,0.01,0.1,0.25,0.5")]
    pub grid: String,
}

#[derive(Debug, Args)]
pub struct EpsilonArgs {
    #[arg(long)]
    pub score: String,
    #[arg(long)]
    pub truth: String,
    #[arg(long)]
    pub alt: String,
    #[arg(long)]
    pub eps: f64,
    #[arg(long, default_value = "evi")]
    pub functional: String,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    #[arg(long)]
    pub score: String,
    #[arg(long)]
    pub truth: String,
    #[arg(long)]
    pub alt: String,
    /// Sample sizes, in the grid syntax.
    #[arg(long, default_value = "100,1000,10000")]
    pub n: String,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// A fully parsed invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub output: Option<PathBuf>,
    pub quad_abs_tol: f64,
    pub slack_factor: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Experiment {
    Profile(Distribution),
    Crossing {
        score: ScoringFunction,
        x0: f64,
        x1: f64,
        f0: Distribution,
        f1: Distribution,
    },
    Bound {
        rule: ScoringRule,
        truth: Distribution,
        alt: Distribution,
        grid: Vec<f64>,
    },
    Curve {
        rule: ScoringRule,
        truth: Distribution,
        alt: Distribution,
        grid: Vec<f64>,
    },
    Epsilon {
        rule: ScoringRule,
        truth: Distribution,
        alt: Distribution,
        epsilon: f64,
        functional: Functional,
    },
    Tailcmp(Distribution, Distribution),
    Power {
        rule: ScoringRule,
        truth: Distribution,
        alt: Distribution,
        n: Vec<usize>,
        reps: usize,
        seed: u64,
    },
}

fn flag<T>(name: &'static str, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Parse { flag: name, source })
}

fn dist(name: &'static str, src: &str) -> Result<Distribution, CliError> {
    flag(name, parse_distribution(src))
}

fn unit_grid(src: &str) -> Result<Vec<f64>, CliError> {
    let grid = flag("--grid", parse_grid(src))?;
    match grid.iter().find(|l| !(0.0..1.0).contains(*l)) {
        Some(l) => Err(CliError::Usage(format!("--grid: mixing weight {l} is outside [0, 1)"))),
        None => Ok(grid),
    }
}

impl ExperimentConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        if !(cli.tol_quad >= 0.0 && cli.tol_quad.is_finite()) {
            return Err(CliError::Usage(format!("--tol-quad must be a nonnegative number, got {}", cli.tol_quad)));
        }
        if !(cli.tol_slack >= 0.0 && cli.tol_slack.is_finite()) {
            return Err(CliError::Usage(format!("--tol-slack must be a nonnegative number, got {}", cli.tol_slack)));
        }
        let experiment = match cli.command {
            Command::Profile { spec } => Experiment::Profile(dist("spec", &spec)?),
            Command::Crossing(a) => Experiment::Crossing {
                score: flag("--score", parse_function(&a.score))?,
                x0: a.x0,
                x1: a.x1,
                f0: dist("--f0", &a.f0)?,
                f1: dist("--f1", &a.f1)?,
            },
            Command::Bound(a) => Experiment::Bound {
                rule: flag("--score", parse_rule(&a.score))?,
                truth: dist("--truth", &a.truth)?,
                alt: dist("--alt", &a.alt)?,
                grid: unit_grid(&a.grid)?,
            },
            Command::Curve(a) => Experiment::Curve {
                rule: flag("--score", parse_rule(&a.score))?,
                truth: dist("--truth", &a.truth)?,
                alt: dist("--alt", &a.alt)?,
                grid: unit_grid(&a.grid)?,
            },
            Command::Epsilon(a) => {
                if !(a.eps > 0.0) {
                    return Err(CliError::Usage(format!("--eps must be positive, got {}", a.eps)));
                }
                Experiment::Epsilon {
                    rule: flag("--score", parse_rule(&a.score))?,
                    truth: dist("--truth", &a.truth)?,
                    alt: dist("--alt", &a.alt)?,
                    epsilon: a.eps,
                    functional: a.functional.parse().map_err(|m| CliError::Usage(format!("--functional: {m}")))?,
                }
            }
            Command::Tailcmp { first, second } => Experiment::Tailcmp(dist("first", &first)?, dist("second", &second)?),
            Command::Power(a) => {
                if a.reps < 2 {
                    return Err(CliError::Usage(format!("--reps must be at least 2, got {}", a.reps)));
                }
                Experiment::Power {
                    rule: flag("--score", parse_rule(&a.score))?,
                    truth: dist("--truth", &a.truth)?,
                    alt: dist("--alt", &a.alt)?,
                    n: flag("--n", parse_counts(&a.n))?,
                    reps: a.reps,
                    seed: a.seed,
                }
            }
        };
        Ok(Self {
            experiment,
            output: cli.output,
            quad_abs_tol: cli.tol_quad,
            slack_factor: cli.tol_slack,
        })
    }

    fn lab(&self) -> Lab {
        let quad = QuadConfig::default().with_abs_tol(self.quad_abs_tol);
        Lab::new(ScoreEngine::new(quad), self.slack_factor)
    }
}

struct Table(csv::Writer<Vec<u8>>);

impl Table {
    fn new(header: &[&str]) -> Self {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).expect("in-memory write");
        Self(w)
    }

    fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) {
        self.0.write_record(fields.into_iter().collect::<Vec<_>>()).expect("in-memory write");
    }

    fn finish(self) -> String {
        String::from_utf8(self.0.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }
}

fn m_index_field(m: MIndex) -> String {
    match m {
        MIndex::Finite(v) => fmt_num(v),
        MIndex::NegInfinity => "-inf".into(),
        MIndex::Undetermined => "undetermined".into(),
        MIndex::Undefined => "undefined".into(),
    }
}

/// Runs the experiment and returns the CSV text.
pub fn run(config: &ExperimentConfig) -> Result<String, CliError> {
    let lab = config.lab();
    let csv = match &config.experiment {
        Experiment::Profile(d) => {
            let p = d.tail_profile();
            let mut t = Table::new(&["field", "value"]);
            t.row(["spec".to_string(), d.to_string()]);
            t.row(["lower_endpoint".to_string(), fmt_num(d.lower_endpoint())]);
            t.row(["upper_endpoint".to_string(), fmt_num(p.upper_endpoint)]);
            t.row(["mean".to_string(), d.mean().map_or("undefined".into(), fmt_num)]);
            t.row(["evi".to_string(), p.evi.map_or("undefined".into(), fmt_num)]);
            t.row(["rv_index".to_string(), p.rv_index.map_or("undefined".into(), fmt_num)]);
            t.row(["m_index".to_string(), m_index_field(p.m_index)]);
            t.finish()
        }
        Experiment::Crossing { score, x0, x1, f0, f1 } => {
            let r = lab.crossing_lambda(score, *x0, *x1, f0, f1)?;
            let mut t = Table::new(&["a", "b", "lambda_star", "residual"]);
            t.row([r.a, r.b, r.lambda_star, r.residual].map(fmt_num));
            t.finish()
        }
        Experiment::Bound { rule, truth, alt, grid } | Experiment::Curve { rule, truth, alt, grid } => {
            let rows = lab.score_gap_curve(rule, alt, truth, grid)?;
            let mut t = Table::new(&["lambda", "gap", "bound", "satisfied"]);
            for r in rows {
                t.row([fmt_num(r.lambda), fmt_num(r.gap), fmt_num(r.bound), r.satisfied.to_string()]);
            }
            t.finish()
        }
        Experiment::Epsilon {
            rule,
            truth,
            alt,
            epsilon,
            functional,
        } => {
            let c = lab.epsilon_mixture(rule, alt, truth, *epsilon, *functional)?;
            if let Some(w) = &c.warning {
                eprintln!("warning: {w}");
            }
            let mut t = Table::new(&[
                "epsilon",
                "D",
                "lambda_eps",
                "measured_gap",
                "t_truth",
                "t_construct",
                "tail_verdict",
            ]);
            t.row([
                fmt_num(c.epsilon),
                fmt_num(c.d),
                fmt_num(c.lambda_eps),
                fmt_num(c.measured_gap),
                fmt_opt(c.t_truth),
                fmt_opt(c.t_construct),
                c.tail_verdict.verdict.name().to_string(),
            ]);
            t.finish()
        }
        Experiment::Tailcmp(f, g) => {
            let c = tail_compare(f, g);
            let verdict = c.verdict.name().to_string();
            let ratio = fmt_opt(c.verdict.ratio());
            let mut t = Table::new(&["verdict", "ratio", "probe_x", "probe_ratio"]);
            if c.evidence.is_empty() {
                t.row([verdict.clone(), ratio.clone(), String::new(), String::new()]);
            }
            for (x, r) in &c.evidence {
                t.row([verdict.clone(), ratio.clone(), fmt_num(*x), fmt_num(*r)]);
            }
            t.finish()
        }
        Experiment::Power {
            rule,
            truth,
            alt,
            n,
            reps,
            seed,
        } => {
            let rows = lab.mc_power_study(rule, truth, alt, n, *reps, *seed)?;
            let mut t = Table::new(&["n", "mean_diff", "stderr", "detect_frac"]);
            for r in rows {
                t.row([r.n.to_string(), fmt_num(r.mean_diff), fmt_num(r.stderr), fmt_num(r.detect_frac)]);
            }
            t.finish()
        }
    };
    Ok(csv)
}

/// Parses `args` (program name first), runs, and writes the CSV to the
/// configured destination. Returns the CSV text as well.
pub fn run_args<I, T>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    let config = ExperimentConfig::from_cli(cli)?;
    let csv = run(&config)?;
    if let Some(path) = &config.output {
        std::fs::write(path, &csv).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(csv)
}

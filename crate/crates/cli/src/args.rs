//! Command-line flags, folded into a [`CliConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{CliConfig, Command, Family, Format, NumericsOverrides, Target};
use crate::parse::parse_assignments;

#[derive(Debug, Parser)]
#[command(name = "qdilog", version, about = "Quantum dilogarithms on self-dual groups: evaluate, verify, tabulate")]
pub struct Cli {
    /// JSON document with the same fields as the flags; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Sub>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Run a verification suite or a single check; prints JSON lines.
    Verify(VerifyArgs),
    /// Evaluate a function over a 1-D or 2-D grid; prints CSV.
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Faddeev parameter, e.g. `0.809+0.588i`.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// DGG nome.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// Cyclic order for the `cyclic` family.
    #[arg(long)]
    pub n: Option<u32>,
    /// Angle of `b = e^{i theta}` for the `cyclic` family.
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Absolute and relative tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub max_nodes: Option<usize>,
    #[arg(long)]
    pub max_shells: Option<usize>,
    #[arg(long)]
    pub contour_nodes: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub contour_radius: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub contour_shift: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub target: Option<Target>,
    /// Comma-separated `name=value` list, e.g. `z=0+1i,m=3`.
    #[arg(long, allow_hyphen_values = true)]
    pub args: Option<String>,
    /// Representation: `product|integral|woronowicz|auto`, `closed|series`,
    /// `direct|ratio|factored`, or `generic|contour|sum|residue|bhatb|special`.
    #[arg(long)]
    pub rep: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// One of `core`, `faddeev`, `ybe`, `advisory`, `all`.
    #[arg(long, conflicts_with = "check")]
    pub suite: Option<String>,
    /// A single check by name.
    #[arg(long)]
    pub check: Option<String>,
    /// `name=value` list overriding the check's default point.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Number of seeded samples for sampling checks.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub target: Option<Target>,
    /// `name=a:b:n` or `name=circle:r:n`; give once or twice.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Vec<String>,
    /// Fixed arguments shared by every row.
    #[arg(long, allow_hyphen_values = true)]
    pub args: Option<String>,
    #[arg(long)]
    pub rep: Option<String>,
}

impl Common {
    fn into_config(self, command: Command) -> CliConfig {
        CliConfig {
            command: Some(command),
            family: self.family,
            b: self.b,
            q: self.q,
            n: self.n,
            theta: self.theta,
            seed: self.seed,
            format: self.format,
            output: self.output,
            numerics: NumericsOverrides {
                tol: self.tol,
                abs_tol: self.abs_tol,
                rel_tol: self.rel_tol,
                max_nodes: self.max_nodes,
                max_shells: self.max_shells,
                contour_nodes_initial: self.contour_nodes,
                contour_radius: self.contour_radius,
                contour_shift: self.contour_shift,
            },
            ..Default::default()
        }
    }
}

impl Sub {
    /// The flags as a config layer to put over the `--config` document.
    pub fn into_config(self) -> Result<CliConfig, String> {
        Ok(match self {
            Sub::Eval(a) => CliConfig {
                target: a.target,
                rep: a.rep,
                args: a.args.as_deref().map(parse_assignments).transpose()?.unwrap_or_default(),
                ..a.common.into_config(Command::Eval)
            },
            Sub::Verify(a) => CliConfig {
                suite: a.suite,
                check: a.check,
                samples: a.samples,
                point: a.point.as_deref().map(parse_assignments).transpose()?.unwrap_or_default(),
                ..a.common.into_config(Command::Verify)
            },
            Sub::Table(a) => CliConfig {
                target: a.target,
                rep: a.rep,
                grid: a.grid,
                args: a.args.as_deref().map(parse_assignments).transpose()?.unwrap_or_default(),
                ..a.common.into_config(Command::Table)
            },
        })
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nearweight::tables::Preset;
use nearweight::{ChainMode, ChainRule, DivisorVector};

mod commands;
mod config;

use config::{EvalSelection, OutputFormat, PathKind};

#[derive(Debug, Parser)]
#[command(name = "nearweight", version, about = "Near-weight bounds for multi-point codes on Hermitian curves")]
pub struct Cli {
    /// `key = value` settings file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Published table to reproduce (t1: q = 3, t2: q = 4).
    #[arg(long, global = true, value_parser = parse_preset)]
    pub preset: Option<Preset>,
    /// Divisor tuple, e.g. 2,2,1.
    #[arg(long, global = true)]
    pub a: Option<DivisorVector>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// csv or markdown.
    #[arg(long, global = true)]
    pub format: Option<OutputFormat>,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct BoundArgs {
    #[arg(long, value_parser = config::parse_mode)]
    pub mode: Option<ChainMode>,
    #[arg(long, value_parser = config::parse_rule)]
    pub rule: Option<ChainRule>,
    /// Fixed membership box; queries beyond it fail instead of growing it.
    #[arg(long = "box")]
    pub bound: Option<DivisorVector>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the rational places and their roles.
    Places,
    /// Membership and minimality for every tuple in a box.
    Semigroup {
        #[arg(long = "box")]
        bound: DivisorVector,
    },
    /// Dimension and basis of L(a).
    Rr,
    /// Largest admissible pair chain for coordinate k (1-based).
    Nu {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        bound: BoundArgs,
    },
    /// Lower bound on the dual minimum distance for one divisor.
    Bound {
        #[arg(long)]
        path: Option<PathKind>,
        #[command(flatten)]
        bound: BoundArgs,
    },
    /// Recompute a published table.
    Table {
        #[arg(long)]
        path: Option<PathKind>,
        #[command(flatten)]
        bound: BoundArgs,
    },
    /// Generator matrix of the evaluation code of L(a).
    Code {
        /// `all` or a list of place indices.
        #[arg(long)]
        eval: Option<EvalSelection>,
        /// Search the dual code for dependent column sets up to this size.
        #[arg(long)]
        dual_dmax: Option<usize>,
    },
    /// Run a verification suite.
    Check {
        #[arg(long, default_value = "all", value_parser = ["axioms", "complete", "all"])]
        suite: String,
        /// Random samples for the axiom suite.
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    Preset::parse(s).ok_or_else(|| format!("expected t1 or t2, got `{s}`"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

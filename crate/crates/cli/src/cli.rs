//! Argument parsing.

use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use partial_search_core::{Schedule, SearchSpace, DEFAULT_SV_CAP};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "partial-search",
    version,
    about = "Simulate and verify block-partial Grover search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one schedule and emit the per-step trace.
    Run(RunArgs),
    /// Evaluate a grid of schedules on the reduced engine.
    Sweep(SweepArgs),
    /// Check every closed-form claim against simulation.
    Verify(CommonArgs),
    /// Compare the canonical query count with the lower bound.
    Bound(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Reduced,
    Statevector,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Number of items N.
    #[arg(long = "n")]
    pub n_items: u64,
    /// Number of blocks K; must divide N.
    #[arg(long = "k")]
    pub n_blocks: u64,
    /// Block holding the marked item.
    #[arg(long, default_value_t = 0)]
    pub target_block: u64,
    /// Position of the marked item inside its block.
    #[arg(long, default_value_t = 0)]
    pub target_item: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest N the statevector engine accepts.
    #[arg(long = "sv-cap", default_value_t = DEFAULT_SV_CAP)]
    pub sv_cap: u64,
    /// Accepted for interface stability; the dynamics are deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Global iterations; defaults to the canonical schedule.
    #[arg(long)]
    pub j1: Option<u64>,
    /// Local iterations; defaults to the canonical schedule.
    #[arg(long)]
    pub j2: Option<u64>,
    /// Skip the final global iteration.
    #[arg(long)]
    pub no_final: bool,
    #[arg(long, value_enum, default_value_t = Engine::Reduced)]
    pub engine: Engine,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Global iteration range `lo:hi`, inclusive.
    #[arg(long = "j1-range", value_parser = parse_range)]
    pub j1_range: Option<IterRange>,
    /// Local iteration range `lo:hi`, inclusive.
    #[arg(long = "j2-range", value_parser = parse_range)]
    pub j2_range: Option<IterRange>,
}

/// Inclusive `lo:hi` range as given on the command line. `lo > hi` parses
/// and is rejected later as an empty range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterRange {
    pub lo: u64,
    pub hi: u64,
}

impl IterRange {
    pub fn inclusive(self) -> RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

fn parse_range(s: &str) -> Result<IterRange, String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got `{s}`"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<u64>()
            .map_err(|e| format!("bad range bound `{v}`: {e}"))
    };
    Ok(IterRange {
        lo: parse(lo)?,
        hi: parse(hi)?,
    })
}

/// Everything a command needs, resolved from the arguments.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub space: SearchSpace,
    pub schedule: Option<Schedule>,
    pub engine: Engine,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub sv_cap: u64,
}

impl RunConfig {
    pub fn from_common(args: &CommonArgs) -> Result<Self, CliError> {
        let space = SearchSpace::with_target(
            args.n_items,
            args.n_blocks,
            args.target_block,
            args.target_item,
        )?;
        Ok(Self {
            space,
            schedule: None,
            engine: Engine::Reduced,
            format: args.format,
            out: args.out.clone(),
            seed: args.seed,
            sv_cap: args.sv_cap,
        })
    }

    /// Statevector runs need `N <= sv_cap`.
    pub fn uses_statevector(&self) -> bool {
        matches!(self.engine, Engine::Statevector | Engine::Both)
    }
}

//! Subcommand implementations. Each produces the full output text and an
//! exit code; nothing here writes to the terminal.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use partial_search_core::analysis::{
    canonical_schedule, lower_bound, sweep_schedules, verify_all, Prediction, SweepPoint,
    SweepResult,
};
use partial_search_core::{
    max_engine_divergence, partial_search, sv_partial_search, tolerance, RunTrace, Schedule,
    SearchSpace,
};
use serde::Serialize;

use crate::cli::{Cli, Command, CommonArgs, Engine, Format, RunArgs, RunConfig, SweepArgs};
use crate::error::CliError;
use crate::format;
use crate::VERSION;

/// Rendered output of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub body: String,
    pub exit_code: i32,
    pub out: Option<PathBuf>,
}

impl Report {
    /// Writes the body to `out`, or to standard output.
    pub fn emit(&self) -> Result<(), CliError> {
        match &self.out {
            Some(path) => fs::write(path, &self.body)?,
            None => std::io::stdout().lock().write_all(self.body.as_bytes())?,
        }
        Ok(())
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bound(args) => cmd_bound(args),
    }
}

fn json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

fn ok(config: &RunConfig, body: String) -> Report {
    Report {
        body,
        exit_code: 0,
        out: config.out.clone(),
    }
}

fn canonical_or_usage(space: &SearchSpace) -> Result<Schedule, CliError> {
    canonical_schedule(space).map(|c| c.schedule).map_err(|e| {
        CliError::Usage(format!(
            "{e}; give the schedule explicitly (--j1/--j2 or --j1-range/--j2-range)"
        ))
    })
}

#[derive(Serialize)]
struct RunDocument<'a> {
    version: &'static str,
    command: &'static str,
    engine: Engine,
    space: SearchSpace,
    schedule: Schedule,
    query_count: u64,
    block_success_probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduced: Option<&'a RunTrace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    statevector: Option<&'a RunTrace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_abs_diff: Option<f64>,
}

/// `run`: one schedule on the chosen engine(s).
pub fn cmd_run(args: &RunArgs) -> Result<Report, CliError> {
    let mut config = RunConfig::from_common(&args.common)?;
    config.engine = args.engine;
    let space = config.space;
    let schedule = if args.j1.is_none() && args.j2.is_none() && !args.no_final {
        canonical_or_usage(&space)?
    } else {
        let fallback = canonical_schedule(&space).ok().map(|c| c.schedule);
        let pick = |given: Option<u64>, default: Option<u64>, flag: &str| {
            given.or(default).ok_or_else(|| {
                CliError::Usage(format!(
                    "canonical schedule undefined for this geometry; pass {flag}"
                ))
            })
        };
        Schedule::new(
            pick(args.j1, fallback.map(|s| s.global_iters), "--j1")?,
            pick(args.j2, fallback.map(|s| s.local_iters), "--j2")?,
            !args.no_final,
        )
    };
    config.schedule = Some(schedule);

    let reduced = matches!(config.engine, Engine::Reduced | Engine::Both)
        .then(|| partial_search(space, schedule));
    let dense = if config.uses_statevector() {
        Some(sv_partial_search(space, schedule, config.sv_cap)?)
    } else {
        None
    };
    let max_abs_diff = if config.engine == Engine::Both {
        Some(max_engine_divergence(
            space,
            schedule.steps(),
            config.sv_cap,
        )?)
    } else {
        None
    };
    let primary = reduced.as_ref().or(dense.as_ref()).expect("one engine ran");

    let body = match config.format {
        Format::Json => json(&RunDocument {
            version: VERSION,
            command: "run",
            engine: config.engine,
            space,
            schedule,
            query_count: primary.query_count,
            block_success_probability: primary.block_success_probability,
            reduced: reduced.as_ref(),
            statevector: dense.as_ref(),
            max_abs_diff,
        })?,
        Format::Csv => {
            let mut traces = Vec::new();
            if let Some(t) = &reduced {
                traces.push(("reduced", t));
            }
            if let Some(t) = &dense {
                traces.push(("statevector", t));
            }
            format::trace_csv(&traces)
        }
        Format::Human => {
            let mut out = String::new();
            if let Some(t) = &reduced {
                out.push_str(&format::trace_table("reduced", t));
            }
            if let Some(t) = &dense {
                out.push_str(&format::trace_table("statevector", t));
            }
            if let Some(d) = max_abs_diff {
                out.push_str(&format!("max |reduced - statevector| = {d:e}\n"));
            }
            out
        }
    };
    Ok(ok(&config, body))
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    version: &'static str,
    command: &'static str,
    success_threshold: f64,
    result: &'a SweepResult,
    cheapest_successful: Option<&'a SweepPoint>,
}

/// `sweep`: grid of schedules on the reduced engine. Missing ranges default
/// to the canonical counts plus or minus three.
pub fn cmd_sweep(args: &SweepArgs) -> Result<Report, CliError> {
    let config = RunConfig::from_common(&args.common)?;
    let space = config.space;
    let around = |centre: u64| centre.saturating_sub(3)..=centre + 3;
    let (global, local) = match (args.j1_range, args.j2_range) {
        (Some(g), Some(l)) => (g.inclusive(), l.inclusive()),
        (g, l) => {
            let c = canonical_or_usage(&space)?;
            (
                g.map_or_else(|| around(c.global_iters), |r| r.inclusive()),
                l.map_or_else(|| around(c.local_iters), |r| r.inclusive()),
            )
        }
    };
    let result = sweep_schedules(&space, global, local)?;
    let body = match config.format {
        Format::Json => json(&SweepDocument {
            version: VERSION,
            command: "sweep",
            success_threshold: tolerance::SUCCESS_THRESHOLD,
            cheapest_successful: result.cheapest_at(tolerance::SUCCESS_THRESHOLD),
            result: &result,
        })?,
        Format::Csv => format::sweep_csv(&result),
        Format::Human => format::sweep_table(&result),
    };
    Ok(ok(&config, body))
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    version: &'static str,
    command: &'static str,
    space: SearchSpace,
    all_passed: bool,
    predictions: &'a [Prediction],
}

/// `verify`: every check from the analysis layer. Exit 1 if a check that
/// applies to the geometry failed.
pub fn cmd_verify(args: &CommonArgs) -> Result<Report, CliError> {
    let config = RunConfig::from_common(args)?;
    let predictions = verify_all(&config.space);
    let all_passed = predictions.iter().all(Prediction::acceptable);
    let body = match config.format {
        Format::Json => json(&VerifyDocument {
            version: VERSION,
            command: "verify",
            space: config.space,
            all_passed,
            predictions: &predictions,
        })?,
        Format::Csv => format::predictions_csv(&predictions),
        Format::Human => format::predictions_table(&predictions),
    };
    let mut report = ok(&config, body);
    report.exit_code = if all_passed { 0 } else { 1 };
    Ok(report)
}

#[derive(Serialize)]
struct BoundDocument {
    version: &'static str,
    command: &'static str,
    space: SearchSpace,
    lower_bound: f64,
    query_count: Option<u64>,
    slack: Option<f64>,
    note: Option<String>,
}

/// `bound`: lower bound against the canonical query count.
pub fn cmd_bound(args: &CommonArgs) -> Result<Report, CliError> {
    let config = RunConfig::from_common(args)?;
    let space = config.space;
    let bound = lower_bound(&space);
    let (query_count, note) = match canonical_schedule(&space) {
        Ok(c) => (Some(c.schedule.query_count()), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let slack = query_count.map(|q| q as f64 - bound);
    let body = match config.format {
        Format::Json => json(&BoundDocument {
            version: VERSION,
            command: "bound",
            space,
            lower_bound: bound,
            query_count,
            slack,
            note,
        })?,
        Format::Csv => format!(
            "n_items,n_blocks,block_size,lower_bound,query_count,slack\n{},{},{},{},{},{}\n",
            space.n_items(),
            space.n_blocks(),
            space.block_size(),
            format::sig(bound, format::CSV_DIGITS),
            query_count.map(|q| q.to_string()).unwrap_or_default(),
            slack
                .map(|s| format::sig(s, format::CSV_DIGITS))
                .unwrap_or_default()
        ),
        Format::Human => {
            let mut out = format!(
                "N={} K={} b={}\nlower bound  {}\n",
                space.n_items(),
                space.n_blocks(),
                space.block_size(),
                format::human(bound)
            );
            match (query_count, slack) {
                (Some(q), Some(s)) => out.push_str(&format!(
                    "canonical Q  {q}\nslack        {}\n",
                    format::human(s)
                )),
                _ => out.push_str(&format!(
                    "canonical Q  n/a ({})\n",
                    note.as_deref().unwrap_or("undefined")
                )),
            }
            out
        }
    };
    Ok(ok(&config, body))
}

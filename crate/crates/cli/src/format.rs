//! Number formatting and the CSV / human renderers.

use std::fmt::Write as _;

use partial_search_core::analysis::{Prediction, SweepResult};
use partial_search_core::RunTrace;

/// Formats `x` with `digits` significant digits, `%g` style: fixed notation
/// for exponents in `[-5, digits)`, scientific otherwise, trailing zeros
/// removed.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Digits used in CSV output.
pub const CSV_DIGITS: usize = 12;

fn csv_num(x: f64) -> String {
    sig(x, CSV_DIGITS)
}

fn opt_csv(x: Option<f64>) -> String {
    x.map(csv_num).unwrap_or_default()
}

/// Sweep grid as `j1,j2,queries,probability`, rows in `(j1, j2)` order.
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from("j1,j2,queries,probability\n");
    for p in &result.grid {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            p.global_iters,
            p.local_iters,
            p.query_count,
            csv_num(p.block_success_probability)
        );
    }
    out
}

/// Per-step amplitudes of one or more runs.
pub fn trace_csv(traces: &[(&str, &RunTrace)]) -> String {
    let mut out = String::from(
        "engine,step,phase,amp_target,amp_block,amp_outside,block_success_probability\n",
    );
    for (engine, trace) in traces {
        for (i, s) in trace.steps.iter().enumerate() {
            let _ = writeln!(
                out,
                "{engine},{i},{},{},{},{},{}",
                phase_name(s.phase),
                csv_num(s.amp_target),
                csv_num(s.amp_block),
                csv_num(s.amp_outside),
                csv_num(s.block_success_probability)
            );
        }
    }
    out
}

pub fn predictions_csv(predictions: &[Prediction]) -> String {
    let mut out = String::from(
        "label,predicted,simulated,alternate,abs_error,rel_error,tolerance,metric,passed,skipped\n",
    );
    for p in predictions {
        let _ = writeln!(
            out,
            "{:?},{},{},{},{},{},{},{},{},{}",
            p.label,
            csv_num(p.predicted),
            opt_csv(p.simulated),
            opt_csv(p.alternate),
            csv_num(p.abs_error),
            csv_num(p.rel_error),
            csv_num(p.tolerance),
            metric_name(p),
            p.passed,
            p.skipped
        );
    }
    out
}

fn metric_name(p: &Prediction) -> &'static str {
    use partial_search_core::analysis::Metric;
    match p.metric {
        Metric::Absolute => "absolute",
        Metric::ScaleRelative => "scale_relative",
        Metric::AtLeast => "at_least",
    }
}

fn phase_name(phase: partial_search_core::Phase) -> &'static str {
    use partial_search_core::Phase;
    match phase {
        Phase::Initial => "initial",
        Phase::Global => "global",
        Phase::Local => "local",
        Phase::Final => "final",
    }
}

/// Fixed four-decimal rendering for tables.
pub fn human(x: f64) -> String {
    format!("{x:.4}")
}

fn human_opt(x: Option<f64>) -> String {
    x.map(human).unwrap_or_else(|| "-".to_string())
}

pub fn trace_table(engine: &str, trace: &RunTrace) -> String {
    let mut out = String::new();
    let s = &trace.space;
    let _ = writeln!(
        out,
        "{engine} engine: N={} K={} b={} schedule=({}, {}, {})",
        s.n_items(),
        s.n_blocks(),
        s.block_size(),
        trace.schedule.global_iters,
        trace.schedule.local_iters,
        if trace.schedule.apply_final_step {
            "final"
        } else {
            "no final"
        }
    );
    let _ = writeln!(
        out,
        "{:>6}  {:<7} {:>10} {:>10} {:>10} {:>10}",
        "step", "phase", "t", "u", "v", "P(block)"
    );
    for (i, st) in trace.steps.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>6}  {:<7} {:>10} {:>10} {:>10} {:>10}",
            i,
            phase_name(st.phase),
            human(st.amp_target),
            human(st.amp_block),
            human(st.amp_outside),
            human(st.block_success_probability)
        );
    }
    let _ = writeln!(
        out,
        "queries {}  block probability {}  outside mass {}",
        trace.query_count,
        human(trace.block_success_probability),
        human(trace.outside_mass)
    );
    out
}

pub fn sweep_table(result: &SweepResult) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>6} {:>6} {:>8} {:>10}",
        "j1", "j2", "queries", "P(block)"
    );
    for p in &result.grid {
        let _ = writeln!(
            out,
            "{:>6} {:>6} {:>8} {:>10}",
            p.global_iters,
            p.local_iters,
            p.query_count,
            human(p.block_success_probability)
        );
    }
    let best = result.best();
    let _ = writeln!(
        out,
        "best ({}, {}) queries {} probability {}",
        best.global_iters,
        best.local_iters,
        best.query_count,
        human(best.block_success_probability)
    );
    match (result.canonical_schedule, result.canonical_gap) {
        (Some(c), Some(gap)) => {
            let _ = writeln!(
                out,
                "canonical ({}, {}) gap {}",
                c.global_iters, c.local_iters, gap
            );
        }
        _ => {
            let _ = writeln!(out, "canonical schedule not defined for this geometry");
        }
    }
    out
}

pub fn predictions_table(predictions: &[Prediction]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<13} {:>12} {:>12} {:>10} {:>10} {:>10}  status",
        "check", "predicted", "simulated", "abs err", "rel err", "tol"
    );
    for p in predictions {
        let status = if p.skipped {
            "SKIP"
        } else if p.passed {
            "PASS"
        } else {
            "FAIL"
        };
        let _ = writeln!(
            out,
            "{:<13} {:>12} {:>12} {:>10} {:>10} {:>10}  {}{}",
            format!("{:?}", p.label),
            human(p.predicted),
            human_opt(p.simulated),
            human(p.abs_error),
            human(p.rel_error),
            human(p.tolerance),
            status,
            p.note
                .as_deref()
                .map(|n| format!("  ({n})"))
                .unwrap_or_default()
        );
    }
    out
}

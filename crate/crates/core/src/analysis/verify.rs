use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;
use crate::reduced::partial_search;
use crate::space::SearchSpace;
use crate::tolerance;

use super::formulas::{
    asymptotic_query_count, canonical_schedule, full_search_iterations, lower_bound,
    optimal_local_iterations, predicted_savings,
};
use super::observations::{
    observation_a_predicted, observation_a_simulated, observation_b_predicted,
    observation_b_simulated, zeroing_check,
};

/// Which claim a [`Prediction`] checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Label {
    /// Amplitude scattered out of a basis state.
    ObservationA,
    /// Amplitude sum shortly before a full search completes.
    ObservationB,
    /// Cancellation of the non-target blocks by the last iteration.
    ZeroingC,
    /// Canonical schedule against the closed-form query count.
    QueryCount,
    /// Saved iterations against `(sqrt(3)/2 - pi/6) sqrt(b)`.
    Savings,
    /// Analytic against grid-search optimum of the local iteration count.
    OptimalEta,
    /// Canonical query count against the lower bound.
    LowerBound,
}

/// How `passed` is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Metric {
    /// `abs_error <= tolerance`.
    Absolute,
    /// `rel_error <= tolerance`, with `rel_error = abs_error / scale`.
    ScaleRelative,
    /// `predicted - simulated <= tolerance`.
    AtLeast,
}

/// A closed-form value confronted with its simulated counterpart.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Prediction {
    /// The claim.
    pub label: Label,
    /// Closed-form value.
    pub predicted: f64,
    /// Simulated or searched value; absent when skipped.
    pub simulated: Option<f64>,
    /// Secondary reading, e.g. the other sign convention.
    pub alternate: Option<f64>,
    /// `|simulated - predicted|`.
    pub abs_error: f64,
    /// `abs_error` divided by the scale of the claim.
    pub rel_error: f64,
    /// Threshold applied under `metric`.
    pub tolerance: f64,
    /// Comparison rule.
    pub metric: Metric,
    /// Whether the check held. False when skipped.
    pub passed: bool,
    /// The check could not run for this geometry.
    pub skipped: bool,
    /// Free-form context.
    pub note: Option<String>,
}

impl Prediction {
    /// Compares `simulated` against `predicted` under `metric`.
    pub fn compare(
        label: Label,
        predicted: f64,
        simulated: f64,
        scale: f64,
        tolerance: f64,
        metric: Metric,
    ) -> Self {
        let abs_error = (simulated - predicted).abs();
        let rel_error = if scale > 0.0 {
            abs_error / scale
        } else {
            abs_error
        };
        let passed = match metric {
            Metric::Absolute => abs_error <= tolerance,
            Metric::ScaleRelative => rel_error <= tolerance,
            Metric::AtLeast => predicted - simulated <= tolerance,
        };
        Self {
            label,
            predicted,
            simulated: Some(simulated),
            alternate: None,
            abs_error,
            rel_error,
            tolerance,
            metric,
            passed,
            skipped: false,
            note: None,
        }
    }

    /// A check that does not apply to the geometry.
    pub fn skipped(label: Label, predicted: f64, metric: Metric, note: String) -> Self {
        Self {
            label,
            predicted,
            simulated: None,
            alternate: None,
            abs_error: 0.0,
            rel_error: 0.0,
            tolerance: 0.0,
            metric,
            passed: false,
            skipped: true,
            note: Some(note),
        }
    }

    fn with_alternate(mut self, alternate: f64) -> Self {
        self.alternate = Some(alternate);
        self
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }

    /// True when the check passed or did not apply.
    pub fn acceptable(&self) -> bool {
        self.passed || self.skipped
    }
}

/// Half-width of the accepted window around the savings coefficient.
fn savings_tolerance(block_size: u64) -> f64 {
    if block_size >= 4096 {
        tolerance::SAVINGS_COEF_LARGE_BLOCK
    } else if block_size >= 256 {
        tolerance::SAVINGS_COEF_MEDIUM_BLOCK
    } else {
        2.0 / libm::sqrt(block_size as f64)
    }
}

/// Local iterations used to test the amplitude sum before completion.
const OBSERVATION_B_ETA: f64 = 4.0;

/// Runs every check on one geometry, in [`Label`] order.
///
/// Checks that need the canonical schedule are marked skipped when it does
/// not exist (see [`Error::RawNegative`]).
pub fn verify_all(space: &SearchSpace) -> Vec<Prediction> {
    let n = space.n_items();
    let b = space.block_size();
    let root_n = libm::sqrt(n as f64);
    let root_b = libm::sqrt(b as f64);
    let mut out = Vec::with_capacity(7);

    let optimum = optimal_local_iterations(b);
    let eta = optimum.eta_star;
    let predicted = observation_a_predicted(b, eta);
    out.push(match observation_a_simulated(b, eta) {
        Ok(sum) => Prediction::compare(
            Label::ObservationA,
            predicted,
            sum.value,
            root_b,
            tolerance::OBSERVATION_SLACK / root_b,
            Metric::ScaleRelative,
        )
        .with_alternate(sum.alternate)
        .with_note(alloc::format!(
            "b={b}, eta={eta:.4}; alternate is the signed sum"
        )),
        Err(e) => Prediction::skipped(
            Label::ObservationA,
            predicted,
            Metric::ScaleRelative,
            e.to_string(),
        ),
    });

    let eta = OBSERVATION_B_ETA.min(libm::round(full_search_iterations(n)));
    let predicted = observation_b_predicted(n, eta);
    out.push(match observation_b_simulated(n, eta) {
        Ok(sum) => Prediction::compare(
            Label::ObservationB,
            predicted,
            sum.value,
            root_n,
            tolerance::OBSERVATION_SLACK / root_n,
            Metric::ScaleRelative,
        )
        .with_alternate(sum.alternate)
        .with_note(alloc::format!(
            "N={n}, eta={eta}; alternate has the target sign flipped"
        )),
        Err(e) => Prediction::skipped(
            Label::ObservationB,
            predicted,
            Metric::ScaleRelative,
            e.to_string(),
        ),
    });

    let canonical = canonical_schedule(space);
    let bound = lower_bound(space);
    let savings = predicted_savings(b as f64);
    let asymptotic_q = asymptotic_query_count(space);
    match canonical {
        Ok(c) => {
            let trace = partial_search(*space, c.schedule);
            let queries = trace.query_count as f64;
            let zeroing = if b < tolerance::ZEROING_MIN_BLOCK {
                Err(Error::BlockTooSmall { block_size: b })
            } else {
                zeroing_check(&trace, tolerance::ZEROING_RATIO, tolerance::OUTSIDE_LEAK)
            };
            out.push(zeroing.unwrap_or_else(|e| {
                Prediction::skipped(Label::ZeroingC, 1.0, Metric::Absolute, e.to_string())
            }));
            out.push(
                Prediction::compare(
                    Label::QueryCount,
                    asymptotic_q,
                    queries,
                    1.0,
                    0.5,
                    Metric::Absolute,
                )
                .with_note(alloc::format!(
                    "schedule ({}, {}, final)",
                    c.schedule.global_iters,
                    c.schedule.local_iters
                )),
            );
            out.push(Prediction::compare(
                Label::Savings,
                savings,
                full_search_iterations(n) - queries,
                root_b,
                savings_tolerance(b),
                Metric::ScaleRelative,
            ));
            out.push(optimum_prediction(b));
            out.push(Prediction::compare(
                Label::LowerBound,
                bound,
                queries,
                1.0,
                0.0,
                Metric::AtLeast,
            ));
        }
        Err(e) => {
            let note = |e: &Error| e.to_string();
            out.push(Prediction::skipped(
                Label::ZeroingC,
                1.0,
                Metric::Absolute,
                note(&e),
            ));
            out.push(Prediction::skipped(
                Label::QueryCount,
                asymptotic_q,
                Metric::Absolute,
                note(&e),
            ));
            out.push(Prediction::skipped(
                Label::Savings,
                savings,
                Metric::ScaleRelative,
                note(&e),
            ));
            out.push(optimum_prediction(b));
            out.push(Prediction::skipped(
                Label::LowerBound,
                bound,
                Metric::AtLeast,
                note(&e),
            ));
        }
    }
    out
}

fn optimum_prediction(block_size: u64) -> Prediction {
    let o = optimal_local_iterations(block_size);
    Prediction::compare(
        Label::OptimalEta,
        o.eta_star,
        o.grid_argmax as f64,
        1.0,
        1.0,
        Metric::Absolute,
    )
    .with_alternate(o.max_saving)
    .with_note("alternate is f(eta*)".to_string())
}

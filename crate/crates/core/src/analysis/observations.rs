use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::reduced::{ReducedState, RunTrace, Step};
use crate::space::SearchSpace;

use super::formulas::{full_search_iterations, saving_function};
use super::verify::{Label, Metric, Prediction};

/// A simulated amplitude sum under two sign conventions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeSum {
    /// Value compared against the prediction.
    pub value: f64,
    /// The same quantity under the other sign convention.
    pub alternate: f64,
}

/// `sqrt(b) sin(2 eta / sqrt(b))`: total amplitude scattered out of a single
/// basis state by `eta` Grover iterations on `b` items.
pub fn observation_a_predicted(block_size: u64, eta: f64) -> f64 {
    let root = libm::sqrt(block_size as f64);
    root * libm::sin(2.0 * eta / root)
}

/// Starts a `b`-item search with all amplitude on the marked item, runs
/// `round(eta)` Grover iterations and sums the amplitudes.
///
/// With `a -> 2 mean - a` the scattered sum comes out negative, so `value`
/// is its magnitude and `alternate` keeps the sign.
pub fn observation_a_simulated(block_size: u64, eta: f64) -> Result<AmplitudeSum> {
    if block_size < 2 {
        return Err(Error::BlockTooSmall { block_size });
    }
    let max = full_search_iterations(block_size);
    if !(0.0..=max).contains(&eta) {
        return Err(Error::EtaOutOfRange { eta, max });
    }
    let space = SearchSpace::new(block_size, 1)?;
    let state = ReducedState::target_basis(space).iterate(Step::Global, libm::round(eta) as u64);
    let sum = state.amplitude_sum();
    Ok(AmplitudeSum {
        value: sum.abs(),
        alternate: sum,
    })
}

/// `sqrt(N) sin(2 eta / sqrt(N))`: total amplitude `eta` iterations before a
/// full search completes. Tends to `2 eta` for `eta << sqrt(N)`.
pub fn observation_b_predicted(n_items: u64, eta: f64) -> f64 {
    observation_a_predicted(n_items, eta)
}

/// Runs `round((pi/4) sqrt(N)) - round(eta)` Grover iterations from uniform
/// and sums all `N` amplitudes. `alternate` is the same sum with the target
/// amplitude's sign flipped, i.e. read right after the next oracle call.
pub fn observation_b_simulated(n_items: u64, eta: f64) -> Result<AmplitudeSum> {
    let total = libm::round(full_search_iterations(n_items)) as u64;
    let early = libm::round(eta);
    if early < 0.0 || early as u64 > total {
        return Err(Error::EtaOutOfRange {
            eta,
            max: total as f64,
        });
    }
    let space = SearchSpace::new(n_items, 1)?;
    let state = ReducedState::uniform(space).iterate(Step::Global, total - early as u64);
    let sum = state.amplitude_sum();
    Ok(AmplitudeSum {
        value: sum,
        alternate: sum - 2.0 * state.amp_target(),
    })
}

/// `v / (2 mean)` for the state entering the final iteration, taken after
/// its oracle call. The final diffusion zeroes `v` exactly when this is 1.
pub fn zeroing_ratio(before_final: &ReducedState) -> Result<f64> {
    if before_final.space().outside_class_size() == 0 {
        return Err(Error::NoOutsideBlocks);
    }
    let queried = before_final.oracle();
    Ok(queried.amp_outside() / (2.0 * queried.mean()))
}

/// Checks that the last iteration of `trace` cancels the non-target blocks:
/// `|v / (2 mean) - 1| <= ratio_tolerance` before it and outside mass at most
/// `leak_tolerance` after it.
pub fn zeroing_check(
    trace: &RunTrace,
    ratio_tolerance: f64,
    leak_tolerance: f64,
) -> Result<Prediction> {
    if !trace.schedule.apply_final_step {
        return Err(Error::NoFinalStep);
    }
    let ratio = zeroing_ratio(&trace.before_final_step())?;
    let mut p = Prediction::compare(
        Label::ZeroingC,
        1.0,
        ratio,
        1.0,
        ratio_tolerance,
        Metric::Absolute,
    );
    p.alternate = Some(trace.outside_mass);
    p.passed &= trace.outside_mass <= leak_tolerance;
    p.note = Some(alloc::format!(
        "outside mass after final step {:.3e} (limit {leak_tolerance})",
        trace.outside_mass
    ));
    Ok(p)
}

/// Measured and predicted saving for one local iteration count.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SavingsPoint {
    /// Local iterations.
    pub eta: u64,
    /// Global iterations that best cancel the outside blocks for this `eta`.
    pub global_iters: u64,
    /// `f(eta)`.
    pub predicted: f64,
    /// `(pi/4) sqrt(N) - (global_iters + eta)`, Step 3 excluded as in the
    /// closed-form count.
    pub simulated: f64,
    /// Block probability reached.
    pub block_success_probability: f64,
}

/// For each `eta`, finds the number of global iterations that minimizes the
/// probability left outside the target block after `eta` local iterations
/// and a final global iteration, and reports the resulting saving.
pub fn savings_profile(space: &SearchSpace, etas: &[u64]) -> Vec<SavingsPoint> {
    let full = full_search_iterations(space.n_items());
    let max_global = libm::ceil(full) as u64 + 1;
    let b = space.block_size() as f64;
    etas.iter()
        .map(|&eta| {
            let mut prefix = ReducedState::uniform(*space);
            let mut best: Option<(u64, ReducedState)> = None;
            for global_iters in 0..=max_global {
                let end = prefix.iterate(Step::Local, eta).global_grover_step();
                if best.is_none_or(|(_, s)| end.outside_mass() < s.outside_mass()) {
                    best = Some((global_iters, end));
                }
                prefix = prefix.global_grover_step();
            }
            let (global_iters, end) = best.expect("at least one candidate");
            SavingsPoint {
                eta,
                global_iters,
                predicted: saving_function(b, eta as f64),
                simulated: full - (global_iters + eta) as f64,
                block_success_probability: end.block_success_probability(),
            }
        })
        .collect()
}

//! Dense simulation over all `N` items.
//!
//! Shares no arithmetic with the reduced engine: every operator here acts on
//! the full amplitude array, so agreement between the two is evidence that the
//! three-class reduction is exact.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{AmplitudeClass, Error, Result};
use crate::reduced::{Phase, ReducedState, RunTrace, Step, TraceStep};
use crate::space::{Schedule, SearchSpace};
use crate::tolerance;

/// Default upper bound on `N` for the dense engine.
pub const DEFAULT_SV_CAP: u64 = 1 << 14;

/// Real amplitudes for every item, blocks laid out contiguously.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<f64>,
    space: SearchSpace,
}

fn check_cap(space: &SearchSpace, cap: u64) -> Result<()> {
    if space.n_items() > cap {
        return Err(Error::CapExceeded {
            n_items: space.n_items(),
            cap,
        });
    }
    Ok(())
}

impl StateVector {
    /// Uniform superposition, limited to [`DEFAULT_SV_CAP`] items.
    pub fn uniform(space: SearchSpace) -> Result<Self> {
        Self::uniform_with_cap(space, DEFAULT_SV_CAP)
    }

    /// Uniform superposition with an explicit item cap.
    pub fn uniform_with_cap(space: SearchSpace, cap: u64) -> Result<Self> {
        check_cap(&space, cap)?;
        let n = space.n_items() as usize;
        Ok(Self {
            amps: vec![1.0 / libm::sqrt(n as f64); n],
            space,
        })
    }

    /// Wraps explicit amplitudes after checking length and normalization.
    pub fn from_amplitudes(space: SearchSpace, amps: Vec<f64>) -> Result<Self> {
        if amps.len() as u64 != space.n_items() {
            return Err(Error::LengthMismatch {
                expected: space.n_items(),
                actual: amps.len() as u64,
            });
        }
        let sv = Self { amps, space };
        let norm_squared = sv.norm_squared();
        if (norm_squared - 1.0).abs() > tolerance::DENSE_NORM {
            return Err(Error::NotNormalized { norm_squared });
        }
        Ok(sv)
    }

    /// Dense expansion of a reduced state.
    pub fn from_reduced(state: &ReducedState, cap: u64) -> Result<Self> {
        let space = state.space();
        check_cap(&space, cap)?;
        let amps = (0..space.n_items())
            .map(|i| state.amplitude_at(i))
            .collect();
        Ok(Self { amps, space })
    }

    /// Amplitudes indexed by item.
    pub fn amplitudes(&self) -> &[f64] {
        &self.amps
    }

    /// Geometry.
    pub fn space(&self) -> SearchSpace {
        self.space
    }

    /// Sum of squared amplitudes.
    pub fn norm_squared(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum()
    }

    fn target_block_range(&self) -> core::ops::Range<usize> {
        let b = self.space.block_size() as usize;
        let start = self.space.target_block() as usize * b;
        start..start + b
    }

    /// Probability mass on the target block.
    pub fn block_success_probability(&self) -> f64 {
        self.amps[self.target_block_range()]
            .iter()
            .map(|a| a * a)
            .sum()
    }

    /// Probability mass on every other block.
    pub fn outside_mass(&self) -> f64 {
        let range = self.target_block_range();
        self.amps[..range.start]
            .iter()
            .chain(&self.amps[range.end..])
            .map(|a| a * a)
            .sum()
    }

    /// Negates the target item.
    pub fn oracle(&mut self) {
        let target = self.space.target_index() as usize;
        self.amps[target] = -self.amps[target];
    }

    /// `a_i -> 2 mean - a_i` over all items.
    pub fn global_diffusion(&mut self) {
        invert_about_mean(&mut self.amps);
    }

    /// `a_i -> 2 mean - a_i` inside every block independently.
    pub fn local_diffusion(&mut self) {
        let b = self.space.block_size() as usize;
        self.amps.chunks_exact_mut(b).for_each(invert_about_mean);
    }

    /// Oracle then global diffusion.
    pub fn global_grover_step(&mut self) {
        self.oracle();
        self.global_diffusion();
    }

    /// Oracle then block-local diffusion.
    pub fn local_grover_step(&mut self) {
        self.oracle();
        self.local_diffusion();
    }

    /// Applies one Grover iteration of the given kind.
    pub fn apply(&mut self, step: Step) {
        match step {
            Step::Global => self.global_grover_step(),
            Step::Local => self.local_grover_step(),
        }
    }

    /// Projects onto `(t, u, v)`.
    ///
    /// Fails with [`Error::NotClassUniform`] if the non-target items of the
    /// target block, or the items outside it, do not share one amplitude to
    /// within [`tolerance::CLASS_UNIFORM`]. Empty classes read as zero.
    pub fn reduce(&self) -> Result<ReducedState> {
        let target = self.space.target_index() as usize;
        let range = self.target_block_range();
        let block = range.clone().filter(|&i| i != target).map(|i| self.amps[i]);
        let outside = self.amps[..range.start]
            .iter()
            .chain(&self.amps[range.end..])
            .copied();
        let amp_block = class_value(block, AmplitudeClass::Block)?;
        let amp_outside = class_value(outside, AmplitudeClass::Outside)?;
        Ok(ReducedState::from_parts(
            self.space,
            self.amps[target],
            amp_block,
            amp_outside,
        ))
    }

    /// Largest per-item difference from the dense expansion of `state`.
    pub fn max_abs_diff_reduced(&self, state: &ReducedState) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, a)| (a - state.amplitude_at(i as u64)).abs())
            .fold(0.0, f64::max)
    }
}

fn invert_about_mean(amps: &mut [f64]) {
    let twice_mean = 2.0 * amps.iter().sum::<f64>() / amps.len() as f64;
    for a in amps {
        *a = twice_mean - *a;
    }
}

fn class_value(mut values: impl Iterator<Item = f64>, class: AmplitudeClass) -> Result<f64> {
    let Some(first) = values.next() else {
        return Ok(0.0);
    };
    let spread = values.map(|a| (a - first).abs()).fold(0.0, f64::max);
    if spread > tolerance::CLASS_UNIFORM {
        return Err(Error::NotClassUniform { class, spread });
    }
    Ok(first)
}

/// Runs the same iterations on both engines from uniform and returns the
/// largest per-item amplitude difference seen after any step.
pub fn max_engine_divergence(
    space: SearchSpace,
    steps: impl IntoIterator<Item = Step>,
    cap: u64,
) -> Result<f64> {
    let mut sv = StateVector::uniform_with_cap(space, cap)?;
    let mut reduced = ReducedState::uniform(space);
    let mut worst = sv.max_abs_diff_reduced(&reduced);
    for step in steps {
        sv.apply(step);
        reduced = reduced.apply(step);
        worst = worst.max(sv.max_abs_diff_reduced(&reduced));
    }
    Ok(worst)
}

/// Dense counterpart of [`crate::partial_search`]. Every recorded step is
/// projected with [`StateVector::reduce`]; the summary probabilities are
/// computed from the dense amplitudes directly.
pub fn sv_partial_search(space: SearchSpace, schedule: Schedule, cap: u64) -> Result<RunTrace> {
    let mut sv = StateVector::uniform_with_cap(space, cap)?;
    let mut steps = Vec::with_capacity(schedule.query_count() as usize + 1);
    let mut record = |phase, sv: &StateVector| -> Result<()> {
        let reduced = sv.reduce()?;
        let mut step = TraceStep::record(phase, &reduced);
        step.block_success_probability = sv.block_success_probability();
        steps.push(step);
        Ok(())
    };
    record(Phase::Initial, &sv)?;
    for _ in 0..schedule.global_iters {
        sv.global_grover_step();
        record(Phase::Global, &sv)?;
    }
    for _ in 0..schedule.local_iters {
        sv.local_grover_step();
        record(Phase::Local, &sv)?;
    }
    if schedule.apply_final_step {
        sv.global_grover_step();
        record(Phase::Final, &sv)?;
    }
    let mut trace = RunTrace::new(space, schedule, steps);
    trace.outside_mass = sv.outside_mass();
    Ok(trace)
}

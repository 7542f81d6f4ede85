//! Exact evolution in the three-class symmetric subspace.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::space::{Schedule, SearchSpace};
use crate::tolerance;

/// Partial-search state as three real amplitudes.
///
/// `amp_target` is the marked item, `amp_block` is each of the `b - 1` other
/// items of the target block and `amp_outside` is each of the `N - b` items
/// of the other blocks. The amplitude of an empty class (`b = 1` or `K = 1`)
/// is held at zero.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ReducedState {
    amp_target: f64,
    amp_block: f64,
    amp_outside: f64,
    space: SearchSpace,
}

/// One Grover iteration: the oracle followed by an inversion about the mean.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Step {
    /// Inversion about the mean of all `N` items.
    Global,
    /// Inversion about the mean of each block separately.
    Local,
}

impl ReducedState {
    /// Uniform superposition, every amplitude `1 / sqrt(N)`.
    pub fn uniform(space: SearchSpace) -> Self {
        let a = 1.0 / space.sqrt_n();
        Self::from_parts(space, a, a, a)
    }

    /// All amplitude on the target item.
    pub fn target_basis(space: SearchSpace) -> Self {
        Self::from_parts(space, 1.0, 0.0, 0.0)
    }

    /// Builds a state from explicit class amplitudes, rejecting anything
    /// that is not normalized to [`tolerance::REDUCED_NORM`].
    pub fn from_amplitudes(
        space: SearchSpace,
        amp_target: f64,
        amp_block: f64,
        amp_outside: f64,
    ) -> Result<Self> {
        let state = Self::from_parts(space, amp_target, amp_block, amp_outside);
        let norm_squared = state.norm_squared();
        if (norm_squared - 1.0).abs() > tolerance::REDUCED_NORM {
            return Err(Error::NotNormalized { norm_squared });
        }
        Ok(state)
    }

    pub(crate) fn from_parts(
        space: SearchSpace,
        amp_target: f64,
        amp_block: f64,
        amp_outside: f64,
    ) -> Self {
        // Empty classes are pinned to zero.
        Self {
            amp_target,
            amp_block: if space.block_class_size() == 0 {
                0.0
            } else {
                amp_block
            },
            amp_outside: if space.outside_class_size() == 0 {
                0.0
            } else {
                amp_outside
            },
            space,
        }
    }

    /// Amplitude of the marked item (`t`).
    pub fn amp_target(&self) -> f64 {
        self.amp_target
    }

    /// Amplitude of each other item in the target block (`u`).
    pub fn amp_block(&self) -> f64 {
        self.amp_block
    }

    /// Amplitude of each item outside the target block (`v`).
    pub fn amp_outside(&self) -> f64 {
        self.amp_outside
    }

    /// Geometry the state lives in.
    pub fn space(&self) -> SearchSpace {
        self.space
    }

    fn block_weight(&self) -> f64 {
        self.space.block_class_size() as f64
    }

    fn outside_weight(&self) -> f64 {
        self.space.outside_class_size() as f64
    }

    /// `t^2 + (b-1) u^2 + (N-b) v^2`.
    pub fn norm_squared(&self) -> f64 {
        self.block_success_probability() + self.outside_mass()
    }

    /// Probability that measuring the block register returns the target
    /// block, `t^2 + (b-1) u^2`.
    pub fn block_success_probability(&self) -> f64 {
        self.amp_target * self.amp_target + self.block_weight() * self.amp_block * self.amp_block
    }

    /// Probability left in the non-target blocks, `(N-b) v^2`.
    pub fn outside_mass(&self) -> f64 {
        self.outside_weight() * self.amp_outside * self.amp_outside
    }

    /// Sum of the amplitudes of the target block, `t + (b-1) u`.
    pub fn target_block_sum(&self) -> f64 {
        self.amp_target + self.block_weight() * self.amp_block
    }

    /// Sum of all `N` amplitudes.
    pub fn amplitude_sum(&self) -> f64 {
        self.target_block_sum() + self.outside_weight() * self.amp_outside
    }

    /// Mean amplitude over all `N` items.
    pub fn mean(&self) -> f64 {
        self.amplitude_sum() / self.space.n_items() as f64
    }

    /// Amplitude of global item `index` in the dense picture.
    pub fn amplitude_at(&self, index: u64) -> f64 {
        if index == self.space.target_index() {
            self.amp_target
        } else if self.space.block_of(index) == self.space.target_block() {
            self.amp_block
        } else {
            self.amp_outside
        }
    }

    /// Largest difference between corresponding class amplitudes.
    pub fn max_abs_diff(&self, other: &ReducedState) -> f64 {
        (self.amp_target - other.amp_target)
            .abs()
            .max((self.amp_block - other.amp_block).abs())
            .max((self.amp_outside - other.amp_outside).abs())
    }

    /// Selective inversion: flips the sign of the target amplitude.
    #[must_use]
    pub fn oracle(self) -> Self {
        Self {
            amp_target: -self.amp_target,
            ..self
        }
    }

    /// Inversion about the mean of all items, `a -> 2 mean - a`.
    #[must_use]
    pub fn global_diffusion(self) -> Self {
        let twice_mean = 2.0 * self.mean();
        Self::from_parts(
            self.space,
            twice_mean - self.amp_target,
            twice_mean - self.amp_block,
            twice_mean - self.amp_outside,
        )
    }

    /// Inversion about the mean inside every block. Non-target blocks are
    /// uniform, so `v` is left untouched.
    #[must_use]
    pub fn local_diffusion(self) -> Self {
        let twice_mean = 2.0 * self.target_block_sum() / self.space.block_size() as f64;
        Self::from_parts(
            self.space,
            twice_mean - self.amp_target,
            twice_mean - self.amp_block,
            self.amp_outside,
        )
    }

    /// Oracle then global diffusion.
    #[must_use]
    pub fn global_grover_step(self) -> Self {
        self.oracle().global_diffusion()
    }

    /// Oracle then block-local diffusion.
    #[must_use]
    pub fn local_grover_step(self) -> Self {
        self.oracle().local_diffusion()
    }

    /// Applies one Grover iteration of the given kind.
    #[must_use]
    pub fn apply(self, step: Step) -> Self {
        match step {
            Step::Global => self.global_grover_step(),
            Step::Local => self.local_grover_step(),
        }
    }

    /// Applies `count` iterations of the same kind.
    #[must_use]
    pub fn iterate(self, step: Step, count: u64) -> Self {
        (0..count).fold(self, |s, _| s.apply(step))
    }
}

/// Which part of the algorithm produced a trace entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Phase {
    /// The starting state.
    Initial,
    /// Step 1.
    Global,
    /// Step 2.
    Local,
    /// Step 3.
    Final,
}

/// Class amplitudes after one step of a run.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TraceStep {
    /// Step that produced this entry.
    pub phase: Phase,
    /// `t`.
    pub amp_target: f64,
    /// `u`.
    pub amp_block: f64,
    /// `v`.
    pub amp_outside: f64,
    /// `t^2 + (b-1) u^2`.
    pub block_success_probability: f64,
}

impl TraceStep {
    pub(crate) fn record(phase: Phase, state: &ReducedState) -> Self {
        Self {
            phase,
            amp_target: state.amp_target,
            amp_block: state.amp_block,
            amp_outside: state.amp_outside,
            block_success_probability: state.block_success_probability(),
        }
    }
}

/// Per-step history of one run plus its summary figures.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RunTrace {
    /// Geometry.
    pub space: SearchSpace,
    /// Schedule that was executed.
    pub schedule: Schedule,
    /// Initial state followed by the state after every iteration.
    pub steps: Vec<TraceStep>,
    /// Oracle calls spent.
    pub query_count: u64,
    /// Block probability of the final state.
    pub block_success_probability: f64,
    /// `(N-b) v^2` of the final state.
    pub outside_mass: f64,
}

impl RunTrace {
    pub(crate) fn new(space: SearchSpace, schedule: Schedule, steps: Vec<TraceStep>) -> Self {
        let last = steps.last().expect("trace always holds the initial state");
        let outside_mass = space.outside_class_size() as f64 * last.amp_outside * last.amp_outside;
        Self {
            space,
            schedule,
            query_count: schedule.query_count(),
            block_success_probability: last.block_success_probability,
            outside_mass,
            steps,
        }
    }

    /// The state recorded at trace position `index` (0 is the initial state).
    pub fn state(&self, index: usize) -> Option<ReducedState> {
        self.steps
            .get(index)
            .map(|s| ReducedState::from_parts(self.space, s.amp_target, s.amp_block, s.amp_outside))
    }

    /// State at the end of the run.
    pub fn final_state(&self) -> ReducedState {
        self.state(self.steps.len() - 1).expect("non-empty trace")
    }

    /// State after Steps 1 and 2, before the final iteration.
    pub fn before_final_step(&self) -> ReducedState {
        let index = self.schedule.global_iters + self.schedule.local_iters;
        self.state(index as usize).expect("trace covers every step")
    }
}

/// Runs `schedule` from the uniform superposition.
pub fn partial_search(space: SearchSpace, schedule: Schedule) -> RunTrace {
    partial_search_from(ReducedState::uniform(space), schedule)
}

/// Runs `schedule` from an arbitrary starting state: `global_iters` global
/// iterations, `local_iters` local iterations, then optionally one more global
/// iteration.
pub fn partial_search_from(initial: ReducedState, schedule: Schedule) -> RunTrace {
    let space = initial.space;
    let mut steps = Vec::with_capacity(schedule.query_count() as usize + 1);
    steps.push(TraceStep::record(Phase::Initial, &initial));
    let mut state = initial;
    for _ in 0..schedule.global_iters {
        state = state.global_grover_step();
        steps.push(TraceStep::record(Phase::Global, &state));
    }
    for _ in 0..schedule.local_iters {
        state = state.local_grover_step();
        steps.push(TraceStep::record(Phase::Local, &state));
    }
    if schedule.apply_final_step {
        state = state.global_grover_step();
        steps.push(TraceStep::record(Phase::Final, &state));
    }
    RunTrace::new(space, schedule, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn space(n: u64, k: u64) -> SearchSpace {
        SearchSpace::new(n, k).unwrap()
    }

    fn state(n: u64, k: u64, t: f64, u: f64, v: f64) -> ReducedState {
        ReducedState::from_parts(space(n, k), t, u, v)
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn uniform_amplitudes() {
        let s = ReducedState::uniform(space(4, 1));
        assert_eq!(
            (s.amp_target(), s.amp_block(), s.amp_outside()),
            (0.5, 0.5, 0.0)
        );
        assert_eq!(s.outside_mass(), 0.0);

        let s = ReducedState::uniform(space(16, 4));
        assert_eq!(
            (s.amp_target(), s.amp_block(), s.amp_outside()),
            (0.25, 0.25, 0.25)
        );

        let s = ReducedState::uniform(space(1 << 20, 16));
        let expected = 2f64.powi(-10);
        assert_eq!(
            (s.amp_target(), s.amp_block(), s.amp_outside()),
            (expected, expected, expected)
        );
        assert_close(s.norm_squared(), 1.0, 1e-12);
    }

    #[test]
    fn from_amplitudes_checks_norm() {
        assert!(ReducedState::from_amplitudes(space(4, 1), 1.0, 0.0, 0.0).is_ok());
        assert!(matches!(
            ReducedState::from_amplitudes(space(4, 1), 1.0, 0.5, 0.0),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn oracle_flips_target() {
        let s = state(4, 1, 0.5, 0.5, 0.0).oracle();
        assert_eq!(
            (s.amp_target(), s.amp_block(), s.amp_outside()),
            (-0.5, 0.5, 0.0)
        );
        assert_eq!(s.oracle(), state(4, 1, 0.5, 0.5, 0.0));

        let s = ReducedState::uniform(space(16, 4)).oracle();
        assert_eq!(
            (s.amp_target(), s.amp_block(), s.amp_outside()),
            (-0.25, 0.25, 0.25)
        );
    }

    #[test]
    fn global_diffusion_examples() {
        // mean = (-0.5 + 3 * 0.5) / 4 = 0.25
        let s = state(4, 1, -0.5, 0.5, 0.5).global_diffusion();
        assert_close(s.amp_target(), 1.0, 1e-15);
        assert_close(s.amp_block(), 0.0, 1e-15);

        let u = ReducedState::uniform(space(64, 8));
        assert!(u.global_diffusion().max_abs_diff(&u) < 1e-15);
    }

    #[test]
    fn local_diffusion_examples() {
        // block mean = (-0.25 + 3 * 0.25) / 4 = 0.125
        let s = state(16, 4, -0.25, 0.25, 0.25).local_diffusion();
        assert_close(s.amp_target(), 0.5, 1e-15);
        assert_close(s.amp_block(), 0.0, 1e-15);
        assert_eq!(s.amp_outside(), 0.25);

        let s = state(16, 4, 0.3, 0.3, 0.1).local_diffusion();
        assert_close(s.amp_target(), 0.3, 1e-15);
        assert_close(s.amp_block(), 0.3, 1e-15);
    }

    #[test]
    fn single_global_step_on_four_items_finds_target() {
        let s = ReducedState::uniform(space(4, 1)).global_grover_step();
        assert_close(s.amp_target(), 1.0, 1e-15);
        assert_close(s.amp_block(), 0.0, 1e-15);
        assert_close(s.block_success_probability(), 1.0, 1e-15);
    }

    #[test]
    fn single_local_step_on_sixteen_items() {
        let s = ReducedState::uniform(space(16, 4)).local_grover_step();
        assert_close(s.amp_target(), 0.5, 1e-15);
        assert_close(s.amp_block(), 0.0, 1e-15);
        assert_eq!(s.amp_outside(), 0.25);
    }

    #[test]
    fn unit_blocks_make_local_step_an_oracle_call() {
        let s = ReducedState::uniform(space(8, 8)).global_grover_step();
        assert_eq!(s.local_grover_step(), s.oracle());
    }

    #[test]
    fn full_grover_matches_rotation_closed_form() {
        // sin(theta) = 1/sqrt(N); after k iterations t = sin((2k + 1) theta).
        let n: u64 = 1 << 20;
        let theta = (1.0 / (n as f64).sqrt()).asin();
        let k = (PI / 4.0 * (n as f64).sqrt()).round() as u64;
        assert_eq!(k, 804);
        let s = ReducedState::uniform(space(n, 1)).iterate(Step::Global, k);
        let expected = ((2 * k + 1) as f64 * theta).sin();
        assert_close(s.amp_target(), expected, 1e-9);
        assert!(s.amp_target() * s.amp_target() >= 0.999);
        assert!(s.amp_target() * s.amp_target() >= 1.0 - 1.0 / n as f64);
        assert_close(s.norm_squared(), 1.0, 1e-12);
    }

    #[test]
    fn empty_schedule_is_uniform() {
        let trace = partial_search(space(16, 4), Schedule::default());
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.query_count, 0);
        assert_eq!(trace.block_success_probability, 0.25);
        assert_eq!(trace.final_state(), ReducedState::uniform(space(16, 4)));
    }

    #[test]
    fn trace_layout() {
        let trace = partial_search(space(1024, 4), Schedule::new(11, 8, true));
        assert_eq!(trace.query_count, 20);
        assert_eq!(trace.steps.len(), 21);
        assert_eq!(trace.steps[0].phase, Phase::Initial);
        assert_eq!(trace.steps[11].phase, Phase::Global);
        assert_eq!(trace.steps[12].phase, Phase::Local);
        assert_eq!(trace.steps[20].phase, Phase::Final);
        assert_eq!(trace.before_final_step(), trace.state(19).unwrap());
        // Step 2 drives the target block sum negative.
        assert!(trace.before_final_step().target_block_sum() < 0.0);
        // Local steps leave v alone.
        let v = trace.steps[11].amp_outside;
        assert!(trace.steps[12..20].iter().all(|s| s.amp_outside == v));
        assert!(trace.block_success_probability > 0.99);
        assert_close(
            trace.block_success_probability + trace.outside_mass,
            1.0,
            1e-12,
        );
    }

    fn geometry() -> impl Strategy<Value = SearchSpace> {
        (0u32..=16, 0u32..=16).prop_filter_map("K must divide N", |(n_exp, k_exp)| {
            (k_exp <= n_exp).then(|| space(1 << n_exp, 1 << k_exp))
        })
    }

    proptest! {
        #[test]
        fn operators_are_norm_preserving_involutions(
            space in geometry(),
            steps in proptest::collection::vec(any::<bool>(), 0..200),
        ) {
            let mut s = ReducedState::uniform(space);
            for local in steps {
                s = s.apply(if local { Step::Local } else { Step::Global });
                prop_assert!((s.norm_squared() - 1.0).abs() <= tolerance::REDUCED_NORM);
            }
            prop_assert_eq!(s.oracle().oracle(), s);
            prop_assert!(s.global_diffusion().global_diffusion().max_abs_diff(&s) <= 1e-12);
            prop_assert!(s.local_diffusion().local_diffusion().max_abs_diff(&s) <= 1e-12);
            prop_assert_eq!(s.local_diffusion().amp_outside().to_bits(), s.amp_outside().to_bits());
            prop_assert!(
                (s.block_success_probability() - (1.0 - s.outside_mass())).abs() <= 1e-12
            );
        }
    }
}

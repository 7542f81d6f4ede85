use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::reduced::{ReducedState, Step};
use crate::space::{Schedule, SearchSpace};

use super::formulas::canonical_schedule;

/// One evaluated schedule of a sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SweepPoint {
    /// Step-1 iterations.
    pub global_iters: u64,
    /// Step-2 iterations.
    pub local_iters: u64,
    /// Block probability after the final global iteration.
    pub block_success_probability: f64,
    /// Oracle calls, final iteration included.
    pub query_count: u64,
}

impl SweepPoint {
    /// The schedule this point evaluated.
    pub fn schedule(&self) -> Schedule {
        Schedule::new(self.global_iters, self.local_iters, true)
    }
}

/// Grid of block probabilities over `(global_iters, local_iters)`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SweepResult {
    /// Geometry.
    pub space: SearchSpace,
    /// Points in lexicographic `(global_iters, local_iters)` order.
    pub grid: Vec<SweepPoint>,
    /// Highest probability; ties go to fewer queries, then fewer global
    /// iterations.
    pub best_schedule: Schedule,
    /// Canonical schedule, absent when it does not exist for this geometry.
    pub canonical_schedule: Option<Schedule>,
    /// Chebyshev distance between best and canonical `(j1, j2)`.
    pub canonical_gap: Option<u64>,
}

impl SweepResult {
    /// The grid entry for `best_schedule`.
    pub fn best(&self) -> &SweepPoint {
        self.point(&self.best_schedule)
            .expect("best schedule is on the grid")
    }

    /// Grid entry for a schedule, if it was swept.
    pub fn point(&self, schedule: &Schedule) -> Option<&SweepPoint> {
        self.grid.iter().find(|p| {
            p.global_iters == schedule.global_iters && p.local_iters == schedule.local_iters
        })
    }

    /// Cheapest point whose probability reaches `threshold`, ties to fewer
    /// global iterations.
    pub fn cheapest_at(&self, threshold: f64) -> Option<&SweepPoint> {
        self.grid
            .iter()
            .filter(|p| p.block_success_probability >= threshold)
            .min_by_key(|p| (p.query_count, p.global_iters))
    }
}

fn better(candidate: &SweepPoint, incumbent: &SweepPoint) -> bool {
    if candidate.block_success_probability != incumbent.block_success_probability {
        return candidate.block_success_probability > incumbent.block_success_probability;
    }
    (candidate.query_count, candidate.global_iters)
        < (incumbent.query_count, incumbent.global_iters)
}

/// Evaluates every schedule `(j1, j2, final)` with `j1` in `global_range` and
/// `j2` in `local_range` on the reduced engine.
///
/// States are built incrementally, so the cost is one Grover iteration per
/// grid point plus the shared prefixes.
pub fn sweep_schedules(
    space: &SearchSpace,
    global_range: RangeInclusive<u64>,
    local_range: RangeInclusive<u64>,
) -> Result<SweepResult> {
    if global_range.is_empty() || local_range.is_empty() {
        return Err(Error::EmptyRange);
    }
    let (global_lo, global_hi) = global_range.into_inner();
    let (local_lo, local_hi) = local_range.into_inner();
    let width = (local_hi - local_lo + 1) as usize;
    let mut grid = Vec::with_capacity((global_hi - global_lo + 1) as usize * width);

    let mut prefix = ReducedState::uniform(*space).iterate(Step::Global, global_lo);
    for global_iters in global_lo..=global_hi {
        let mut local = prefix.iterate(Step::Local, local_lo);
        for local_iters in local_lo..=local_hi {
            let end = local.global_grover_step();
            grid.push(SweepPoint {
                global_iters,
                local_iters,
                block_success_probability: end.block_success_probability(),
                query_count: global_iters + local_iters + 1,
            });
            local = local.local_grover_step();
        }
        prefix = prefix.global_grover_step();
    }

    let best = grid
        .iter()
        .skip(1)
        .fold(&grid[0], |best, p| if better(p, best) { p } else { best });
    let best_schedule = best.schedule();
    let canonical = canonical_schedule(space).ok().map(|c| c.schedule);
    Ok(SweepResult {
        space: *space,
        best_schedule,
        canonical_gap: canonical.map(|c| c.distance(&best_schedule)),
        canonical_schedule: canonical,
        grid,
    })
}

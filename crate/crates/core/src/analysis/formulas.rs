use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::space::{Schedule, SearchSpace};

/// Savings per `sqrt(b)` quoted for the earlier, more involved partial search
/// algorithm.
pub const PRIOR_SAVINGS_COEFFICIENT: f64 = 0.33;

/// `sqrt(3)/2 - pi/6`, the number of iterations saved per `sqrt(b)`.
pub fn savings_coefficient() -> f64 {
    libm::sqrt(3.0) / 2.0 - PI / 6.0
}

/// `(pi/4) sqrt(N)`, iterations of a full search.
pub fn full_search_iterations(n_items: u64) -> f64 {
    PI / 4.0 * libm::sqrt(n_items as f64)
}

/// Real-valued total query count `(pi/4) sqrt(N) - (sqrt(3)/2 - pi/6) sqrt(b)`.
pub fn asymptotic_query_count(space: &SearchSpace) -> f64 {
    full_search_iterations(space.n_items()) - savings_coefficient() * space.sqrt_b()
}

/// Iterations saved relative to full search, `(sqrt(3)/2 - pi/6) sqrt(b)`.
pub fn predicted_savings(block_size: f64) -> f64 {
    savings_coefficient() * libm::sqrt(block_size)
}

/// Oracle calls spent by `schedule`.
pub fn query_count(schedule: &Schedule) -> u64 {
    schedule.query_count()
}

/// `f(eta) = -eta + sqrt(b) sin(2 eta / sqrt(b))`: net saving when `eta`
/// local iterations are used.
pub fn saving_function(block_size: f64, eta: f64) -> f64 {
    let root = libm::sqrt(block_size);
    -eta + root * libm::sin(2.0 * eta / root)
}

/// Lower bound `(pi/4)(sqrt(N) - sqrt(b))` on the queries of any partial
/// search.
pub fn lower_bound(space: &SearchSpace) -> f64 {
    PI / 4.0 * (space.sqrt_n() - space.sqrt_b())
}

/// The canonical schedule together with the real-valued counts it was
/// rounded from.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CanonicalSchedule {
    /// Integer schedule.
    pub schedule: Schedule,
    /// `(pi/4) sqrt(N) - sqrt(3b/4)`.
    pub raw_global: f64,
    /// `(pi/6) sqrt(b)`.
    pub raw_local: f64,
    /// `raw_global + raw_local`.
    pub raw_queries: f64,
}

/// Schedule that follows the three-step recipe.
///
/// The total budget is `round(raw_global + raw_local)` queries and
/// `round(raw_local)` of them go to Step 2. Step 3 is a full Grover iteration
/// that costs one query, so Step 1 gets what remains after Step 3 is paid for.
pub fn canonical_schedule(space: &SearchSpace) -> Result<CanonicalSchedule> {
    let b = space.block_size() as f64;
    let raw_global = full_search_iterations(space.n_items()) - libm::sqrt(0.75 * b);
    let raw_local = PI / 6.0 * space.sqrt_b();
    let raw_queries = raw_global + raw_local;
    if raw_global < 0.0 {
        return Err(Error::RawNegative { raw_global });
    }
    let local_iters = libm::round(raw_local) as u64;
    let budget = libm::round(raw_queries) as u64;
    let Some(global_iters) = budget.checked_sub(local_iters + 1) else {
        return Err(Error::RawNegative { raw_global });
    };
    Ok(CanonicalSchedule {
        schedule: Schedule::new(global_iters, local_iters, true),
        raw_global,
        raw_local,
        raw_queries,
    })
}

/// Maximizer of [`saving_function`], analytic and by integer search.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OptimalEta {
    /// `(pi/6) sqrt(b)`.
    pub eta_star: f64,
    /// `f(eta_star) = (sqrt(3)/2 - pi/6) sqrt(b)`.
    pub max_saving: f64,
    /// Integer `eta` maximizing `f`, smallest on ties.
    pub grid_argmax: u64,
}

/// Analytic optimum of the local iteration count plus an integer grid search
/// over `0..=ceil((pi/2) sqrt(b))`, past which `f` is negative.
pub fn optimal_local_iterations(block_size: u64) -> OptimalEta {
    let b = block_size as f64;
    let root = libm::sqrt(b);
    let eta_star = PI / 6.0 * root;
    let max_saving = savings_coefficient() * root;
    let upper = libm::ceil(PI / 2.0 * root) as u64;
    let mut grid_argmax = 0;
    let mut best = saving_function(b, 0.0);
    for eta in 1..=upper {
        let value = saving_function(b, eta as f64);
        if value > best {
            best = value;
            grid_argmax = eta;
        }
    }
    OptimalEta {
        eta_star,
        max_saving,
        grid_argmax,
    }
}

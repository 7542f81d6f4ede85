//! Closed-form predictions for partial search and the checks that compare
//! them against the engines.
//!
//! The formulas are leading-order in `1/sqrt(b)` and `1/sqrt(N)`; the
//! simulated quantities are exact. Comparisons therefore carry an absolute
//! slack of a few iterations, expressed relative to `sqrt(b)` or `sqrt(N)`
//! where the formula scales that way.

mod formulas;
mod observations;
mod sweep;
mod verify;

pub use formulas::{
    asymptotic_query_count, canonical_schedule, full_search_iterations, lower_bound,
    optimal_local_iterations, predicted_savings, query_count, saving_function, savings_coefficient,
    CanonicalSchedule, OptimalEta, PRIOR_SAVINGS_COEFFICIENT,
};
pub use observations::{
    observation_a_predicted, observation_a_simulated, observation_b_predicted,
    observation_b_simulated, savings_profile, zeroing_check, zeroing_ratio, AmplitudeSum,
    SavingsPoint,
};
pub use sweep::{sweep_schedules, SweepPoint, SweepResult};
pub use verify::{verify_all, Label, Metric, Prediction};

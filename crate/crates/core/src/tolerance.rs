//! Numerical tolerances shared by the engines, the analysis checks and the
//! acceptance suite.

/// Normalization drift allowed for the reduced engine.
pub const REDUCED_NORM: f64 = 1e-12;

/// Normalization drift allowed for the dense engine.
pub const DENSE_NORM: f64 = 1e-10;

/// Largest spread inside an amplitude class that still counts as uniform.
pub const CLASS_UNIFORM: f64 = 1e-10;

/// Largest per-amplitude difference between the two engines.
pub const CROSS_ENGINE: f64 = 1e-10;

/// Absolute slack, in iterations, of the leading-order observation formulas.
pub const OBSERVATION_SLACK: f64 = 3.0;

/// Allowed distance of `v / (2 * mean)` from 1 before the last iteration.
pub const ZEROING_RATIO: f64 = 0.2;

/// Smallest block for which the last iteration is expected to cancel the
/// other blocks; below it the local search has too few items to rotate.
pub const ZEROING_MIN_BLOCK: u64 = 16;

/// Largest probability left outside the target block after a canonical run.
pub const OUTSIDE_LEAK: f64 = 0.05;

/// Block probability treated as success when reporting empirical savings.
pub const SUCCESS_THRESHOLD: f64 = 0.99;

/// Savings coefficient window half-width for `b >= 4096`.
pub const SAVINGS_COEF_LARGE_BLOCK: f64 = 0.03;

/// Savings coefficient window half-width for `256 <= b < 4096`.
pub const SAVINGS_COEF_MEDIUM_BLOCK: f64 = 0.07;

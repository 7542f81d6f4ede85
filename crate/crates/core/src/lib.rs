//! Block-partial quantum search, simulated two ways.
//!
//! A database of `N` items is split into `K` blocks of `b = N / K` items and
//! the search only has to name the block that holds the marked item. The
//! algorithm runs a few global Grover iterations, then Grover iterations
//! restricted to each block, then one last global iteration that cancels the
//! amplitude outside the target block.
//!
//! Every state the algorithm reaches from the uniform superposition is
//! symmetric under permutations of the non-target items inside the target
//! block and of the items outside it, so three real amplitudes describe it
//! exactly. [`ReducedState`] evolves those three numbers for any `N`.
//! [`StateVector`] keeps all `N` amplitudes and exists to certify the
//! reduced engine on small instances. [`analysis`] holds the closed-form
//! predictions and the checks that confront them with simulation.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![deny(missing_docs)]

extern crate alloc;

pub mod analysis;
mod error;
mod reduced;
mod space;
mod statevector;
pub mod tolerance;

pub use error::{AmplitudeClass, Error, Result};
pub use reduced::{
    partial_search, partial_search_from, Phase, ReducedState, RunTrace, Step, TraceStep,
};
pub use space::{Schedule, SearchSpace};
pub use statevector::{max_engine_divergence, sv_partial_search, StateVector, DEFAULT_SV_CAP};

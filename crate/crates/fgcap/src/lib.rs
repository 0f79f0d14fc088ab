//! Average entanglement capacity of fermionic Gaussian bipartite states.
//!
//! A bipartite fermionic Gaussian state restricted to a subsystem is fully
//! described by a spectrum of correlation levels `x_i` in `[-1, 1]`; its
//! entanglement capacity is `C = sum_i u(x_i)` with
//! `u(x) = (1 - x^2)/4 * (ln((1 + x)/(1 - x)))^2`. This crate evaluates the
//! ensemble average of `C` over random Gaussian states three independent
//! ways and cross-checks them against each other:
//!
//! * exact closed forms in polygamma values and finite rational sums
//!   ([`capacity`]),
//! * Monte Carlo sampling of the underlying random-matrix ensembles
//!   ([`ensembles`]),
//! * tanh-sinh quadrature of the one-point correlation kernel ([`kernel`],
//!   [`quad`]).
//!
//! Two ensembles are covered: subsystems of states with a fixed particle
//! number (parameterised by subsystem modes `m`, total modes `m + n`, and
//! particle count `p`) and subsystems of states with arbitrary particle
//! number (parameterised by `m` and `n`). The [`identities`] module fuzzes
//! the special-function and finite-sum identities the closed forms rest on.

// reference constants are written with guard digits past f64 precision so
// they can be compared against their sources digit by digit
#![allow(clippy::excessive_precision)]

pub mod capacity;
pub mod ensembles;
pub mod error;
pub mod exact;
pub mod identities;
pub mod kernel;
pub mod linalg;
pub mod quad;
pub mod special;

pub use capacity::{
    asymptotic_gap, asymptotic_limit, capacity_u, mean_capacity, mean_capacity_arbitrary,
    mean_capacity_fixed, mean_capacity_fixed_special, CapacityResult, EnsembleSpec,
};
pub use ensembles::{
    capacity_of_spectrum, estimate_mean_capacity, estimate_mean_capacity_serial,
    sample_arbitrary_spectrum, sample_fixed_spectrum, CapacityEstimate, RngStream, Spectrum,
};
pub use error::{Error, Result};
pub use exact::ExactValue;
pub use identities::{
    check_identity, fuzz_identities, FuzzEntry, FuzzReport, IdentityCheck, IdentityId,
    IdentityParams,
};
pub use kernel::quad_mean_capacity;
pub use quad::{integrate, QuadratureResult};

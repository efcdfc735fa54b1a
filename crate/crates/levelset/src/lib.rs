//! Level set estimation for black-box functions.
//!
//! Given a function or simulation with continuous inputs and one or more
//! continuous responses, this crate samples input configurations whose
//! responses match a target vector within a tolerance. The pieces:
//!
//! * [`design`] — Latin hypercube designs and unit-cube scaling,
//! * [`targets`] — benchmark functions behind a common evaluation trait,
//! * [`surrogate`] — a Gaussian-process emulator with predictive mean and
//!   variance,
//! * [`sampler`] — the MCMC algorithm family (random-walk Metropolis,
//!   hard-threshold ABC, smoothed level-set samplers, and a direct Gaussian
//!   target), selectable by name,
//! * [`diagnostics`] — chain summaries, coverage, correlations, sensitivity
//!   indices.
//!
//! Randomness is always explicit: every sampling entry point takes a seeded
//! generator or a seed, and identical inputs produce identical output.

pub mod design;
pub mod error;
pub mod targets;

pub use error::{Error, Result};

//! Free-space optical quantum key distribution link simulator.
//!
//! The crate chains four models to turn a weather scenario and a hardware
//! trace into a finite-key secure key rate per pulse:
//!
//! 1. [`atmosphere`]: geometric beam spreading, Mie scattering from
//!    visibility, rain, Rayleigh scattering, turbulence and molecular
//!    absorption, combined into an [`atmosphere::AttenuationBudget`].
//! 2. [`receiver`]: detector presets, per-basis insertion losses, passive
//!    basis split, dark-click probability and dead-time derating.
//! 3. [`detstats`]: weak-coherent gains and QBERs for each basis and
//!    intensity, and the expected counts for a block of sifted Z bits.
//! 4. [`finitekey`]: 1-decoy bounds on vacuum and single-photon events, the
//!    phase-error bound and the secure key length.
//!
//! [`mcsim`] is a pulse-level Monte Carlo that reproduces the analytic
//! detection model and serves as its oracle. [`scenario`] parses scenario
//! files, ships the weather and hardware presets, runs distance sweeps and
//! writes CSV/JSON.
//!
//! ```
//! use fso_qkd::scenario::{Scenario, run_sweep, cutoff_distance};
//!
//! let mut scenario = Scenario::from_presets("FOG", "NIR1550").unwrap();
//! scenario.sweep = fso_qkd::scenario::SweepSpec::uniform(1.0, 12.0, 1.0).unwrap();
//! let rows = run_sweep(&scenario);
//! let cutoff = cutoff_distance(&rows).unwrap();
//! assert!(cutoff > 3.0 && cutoff < 12.0);
//! ```

pub mod atmosphere;
pub mod detstats;
mod error;
pub mod finitekey;
pub mod mcsim;
pub mod receiver;
pub mod scenario;

pub use error::{Error, Result};

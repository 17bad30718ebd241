//! Spontaneous decay of a two-level transition dressed by an intense
//! low-frequency field.
//!
//! Exchanging up to `N` low-frequency photons during the transition turns the
//! single excited state into a multiplet of `2N + 1` closely spaced upper
//! levels, all decaying into the same ground state. The decay amplitudes of
//! the multiplet members interfere, and part of the population ends up
//! trapped in the upper manifold.
//!
//! The crate is organised in three layers:
//!
//! * [`multiplet`]: parameter types, validation and effective decay rates
//!   derived from the driving field.
//! * [`dynamics`]: the amplitude equations, propagated exactly in a rotating
//!   frame via [`expm`], plus an independent lab-frame Runge-Kutta integrator.
//! * [`analysis`]: trapped fractions, burst/quiescent phase detection and
//!   parameter sweeps.
//!
//! All rates are in units of the bare decay rate γ⁽⁰⁾ and all times in units
//! of 1/γ⁽⁰⁾.

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod expm;
pub mod linalg;
pub mod multiplet;

pub use num_complex::Complex64 as C64;

pub use analysis::{
    detect_phases, sweep, sweep_gamma_side, sweep_omega, trapped_fraction, PhaseReport, SweepParam,
    SweepResult, DEFAULT_PHASE_THRESHOLD, PERSISTENCE_SAMPLES,
};
pub use dynamics::{
    build_generator, integrate_lab, population_series, propagate, Generator, Trajectory,
};
pub use error::{Error, Result};
pub use multiplet::{
    effective_rates, validate, AmplitudeVector, DrivingFieldSpec, Frame, MultipletParams,
};

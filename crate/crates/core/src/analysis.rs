//! Derived quantities: trapped population, burst/quiescent phases and
//! parameter sweeps.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::dynamics::{propagate, Trajectory};
use crate::error::{Error, Result};
use crate::multiplet::{validate, MultipletParams};

/// Default rate threshold separating burst and quiescent phases, as a
/// fraction of γ⁽⁰⁾.
pub const DEFAULT_PHASE_THRESHOLD: f64 = 0.1;

/// Number of consecutive samples after the candidate boundary that must also
/// stay below the threshold.
pub const PERSISTENCE_SAMPLES: usize = 10;

const MIN_PHASE_SAMPLES: usize = 100;
const MIN_PHASE_SPAN: f64 = 10.0;

/// Long-time upper-state population for degenerate levels (`ω̄ = 0`).
///
/// With `v_j = sqrt(γ_j)` the generator is `-v vᵀ/2`: the component of the
/// initial amplitudes along `v` decays completely, everything orthogonal to
/// it is dark. Hence `Π∞ = |E₀|² - |v·E₀|²/|v|²`.
pub fn trapped_fraction(params: &MultipletParams) -> Result<f64> {
    let params = validate(params.clone())?;
    if params.omega_bar != 0.0 {
        return Err(Error::NonDegenerate(params.omega_bar));
    }
    let v = params.sqrt_rates();
    let v_norm2: f64 = params.gamma.iter().sum();
    if v_norm2 == 0.0 {
        return Err(Error::AllRatesZero);
    }
    let bright: C64 = v.iter().zip(&params.initial).map(|(v, e)| e * v).sum();
    Ok((params.initial_population() - bright.norm_sqr() / v_norm2).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseReport {
    /// Start of the quiescent phase.
    pub burst_end: f64,
    /// Least-squares decay rate of Π after `burst_end`.
    pub quiescent_rate: f64,
    pub threshold: f64,
}

/// Locate the end of the burst phase and fit the quiescent decay rate.
///
/// The instantaneous rate `r = -d ln Π/dt` is taken by centered differences
/// on the trajectory's own grid. The burst ends at the first sample where
/// `r` drops below `threshold` and stays there for the next
/// [`PERSISTENCE_SAMPLES`] samples. The quiescent rate is the least-squares
/// slope of `-ln Π` from there to the end of the grid.
pub fn detect_phases(traj: &Trajectory, threshold: f64) -> Result<PhaseReport> {
    if !(threshold > 0.0 && threshold.is_finite()) {
        return Err(Error::InvalidThreshold(threshold));
    }
    if traj.len() < MIN_PHASE_SAMPLES {
        return Err(Error::InsufficientTrajectory(format!(
            "{} samples, need at least {MIN_PHASE_SAMPLES}",
            traj.len()
        )));
    }
    let (t0, t1) = (traj.times[0], traj.times[traj.len() - 1]);
    if t0 != 0.0 || t1 < MIN_PHASE_SPAN {
        return Err(Error::InsufficientTrajectory(format!(
            "grid covers [{t0}, {t1}], need [0, {MIN_PHASE_SPAN}]"
        )));
    }

    // ln Π is undefined once the population underflows.
    let usable = traj.total.iter().take_while(|&&p| p > 0.0).count();
    if usable < PERSISTENCE_SAMPLES + 2 {
        return Err(Error::InsufficientTrajectory(format!(
            "population vanishes after {usable} samples"
        )));
    }
    let times = &traj.times[..usable];
    let neg_log: Vec<f64> = traj.total[..usable].iter().map(|p| -p.ln()).collect();
    let rate = centered_derivative(times, &neg_log);

    let below: Vec<bool> = rate.iter().map(|&r| r < threshold).collect();
    let start = below
        .windows(PERSISTENCE_SAMPLES + 1)
        .position(|w| w.iter().all(|&b| b))
        .ok_or(Error::NoQuiescentPhase(threshold))?;

    let quiescent_rate = least_squares_slope(&times[start..], &neg_log[start..]).max(0.0);
    if quiescent_rate >= threshold {
        return Err(Error::NoQuiescentPhase(threshold));
    }
    Ok(PhaseReport {
        burst_end: times[start],
        quiescent_rate,
        threshold,
    })
}

fn centered_derivative(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            let (a, b) = match k {
                0 => (0, 1),
                k if k == n - 1 => (n - 2, n - 1),
                k => (k - 1, k + 1),
            };
            (y[b] - y[a]) / (x[b] - x[a])
        })
        .collect()
}

fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (sxy, sxx) = x.iter().zip(y).fold((0.0, 0.0), |(sxy, sxx), (&xi, &yi)| {
        (sxy + (xi - mx) * (yi - my), sxx + (xi - mx) * (xi - mx))
    });
    sxy / sxx
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParam {
    /// Drive frequency ω̄.
    OmegaBar,
    /// Common rate of every non-central level.
    GammaSide,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::OmegaBar => "omega_bar",
            SweepParam::GammaSide => "gamma_side",
        }
    }

    /// Probe time matching the longest time shown for this kind of sweep.
    pub fn default_probe_time(self) -> f64 {
        match self {
            SweepParam::OmegaBar => 300.0,
            SweepParam::GammaSide => 20.0,
        }
    }

    fn apply(self, base: &MultipletParams, value: f64) -> MultipletParams {
        match self {
            SweepParam::OmegaBar => base.with_omega_bar(value),
            SweepParam::GammaSide => base.with_side_rate(value),
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "omega_bar" => Ok(SweepParam::OmegaBar),
            "gamma_side" => Ok(SweepParam::GammaSide),
            other => Err(format!("unknown sweep parameter `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub parameter: SweepParam,
    pub values: Vec<f64>,
    pub trajectories: Vec<Trajectory>,
    pub probe_time: f64,
    /// Π(probe_time) per value.
    pub summary: Vec<f64>,
}

/// Run one trajectory per parameter value, in parallel. Results keep the
/// order of `values`.
pub fn sweep(
    base: &MultipletParams,
    parameter: SweepParam,
    values: &[f64],
    times: &[f64],
    probe_time: f64,
) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(Error::EmptySweep);
    }
    if let Some(&bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::InvalidSweepValue(bad));
    }
    let points: Vec<(Trajectory, f64)> = values
        .par_iter()
        .map(|&value| {
            let params = parameter.apply(base, value);
            let traj = propagate(&params, times)?;
            let probe = propagate(&params, &[probe_time])?.total[0];
            Ok((traj, probe))
        })
        .collect::<Result<_>>()?;
    let (trajectories, summary) = points.into_iter().unzip();
    Ok(SweepResult {
        parameter,
        values: values.to_vec(),
        trajectories,
        probe_time,
        summary,
    })
}

pub fn sweep_omega(
    base: &MultipletParams,
    omegas: &[f64],
    times: &[f64],
    probe_time: f64,
) -> Result<SweepResult> {
    sweep(base, SweepParam::OmegaBar, omegas, times, probe_time)
}

/// Sets every side level `±1..=±N` to the same rate.
pub fn sweep_gamma_side(
    base: &MultipletParams,
    gammas: &[f64],
    times: &[f64],
    probe_time: f64,
) -> Result<SweepResult> {
    sweep(base, SweepParam::GammaSide, gammas, times, probe_time)
}

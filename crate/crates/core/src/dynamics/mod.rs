//! Amplitude dynamics of the decaying multiplet.
//!
//! In the lab frame the amplitudes obey
//!
//! ```text
//! dE_j/dt = -γ_j/2 E_j - Σ_{l≠j} sqrt(γ_l γ_j)/2 E_l exp(i (j-l) ω̄ t)
//! ```
//!
//! Substituting `F_j = E_j exp(-i j ω̄ t)` removes the explicit time
//! dependence: `dF/dt = A F` with `A = -v vᵀ/2 - i ω̄ diag(j)` and
//! `v_j = sqrt(γ_j)`. [`propagate`] evaluates `exp(A t) F(0)` directly;
//! [`integrate_lab`] steps the lab-frame equations with classical RK4 and
//! never touches `A`, so the two can check each other.

mod generator;
mod lab;

pub use generator::{build_generator, Generator};
pub use lab::{integrate_lab, MAX_STEP_STIFFNESS};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::expm::expm_scaled;
use crate::linalg::matvec;
use crate::multiplet::{validate, AmplitudeVector, Frame, MultipletParams};

/// Sampled solution of the amplitude equations.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// Lab-frame amplitudes, one per time.
    pub states: Vec<AmplitudeVector>,
    /// `|E_j(t)|²` per time, levels in ascending `j`.
    pub populations: Vec<Vec<f64>>,
    /// Total upper-state population Π(t).
    pub total: Vec<f64>,
}

impl Trajectory {
    pub(crate) fn from_states(times: Vec<f64>, states: Vec<AmplitudeVector>) -> Self {
        let populations: Vec<Vec<f64>> = states.iter().map(AmplitudeVector::populations).collect();
        let total = populations.iter().map(|p| p.iter().sum()).collect();
        Self {
            times,
            states,
            populations,
            total,
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Population history of level `j` (`-N..=N`).
    pub fn level(&self, level: i64) -> Option<Vec<f64>> {
        let half = self.states.first()?.amps.len() as i64 / 2;
        if level.abs() > half {
            return None;
        }
        let idx = (level + half) as usize;
        Some(self.populations.iter().map(|p| p[idx]).collect())
    }
}

/// Recompute per-level and total populations from the stored amplitudes.
///
/// Uses the same arithmetic as trajectory construction, so the result is
/// bit-identical to the stored `populations` and `total`.
pub fn population_series(traj: &Trajectory) -> (Vec<Vec<f64>>, Vec<f64>) {
    let populations: Vec<Vec<f64>> = traj.states.iter().map(AmplitudeVector::populations).collect();
    let total = populations.iter().map(|p| p.iter().sum()).collect();
    (populations, total)
}

pub(crate) fn check_grid(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::EmptyTimeGrid);
    }
    if !(times[0].is_finite() && times[0] >= 0.0) {
        return Err(Error::NonMonotoneTimeGrid(0));
    }
    for (k, w) in times.windows(2).enumerate() {
        if !(w[1].is_finite() && w[1] > w[0]) {
            return Err(Error::NonMonotoneTimeGrid(k + 1));
        }
    }
    Ok(())
}

/// Exact propagation on an arbitrary increasing time grid.
///
/// Each sample is computed independently as `exp(A t) F(0)`, so there is no
/// accumulation of error along the grid.
pub fn propagate(params: &MultipletParams, times: &[f64]) -> Result<Trajectory> {
    let params = validate(params.clone())?;
    check_grid(times)?;
    let generator = build_generator(&params)?;
    let initial = ndarray::Array1::from(params.initial.clone());

    let states = times
        .iter()
        .map(|&t| {
            let amps = if t == 0.0 {
                params.initial.clone()
            } else {
                let u = expm_scaled(generator.matrix.view(), t);
                matvec(u.view(), initial.view()).to_vec()
            };
            AmplitudeVector {
                amps,
                frame: Frame::Rotating,
                time: t,
            }
            .to_frame(Frame::Lab, params.omega_bar)
        })
        .collect();
    Ok(Trajectory::from_states(times.to_vec(), states))
}

/// Instantaneous population loss `-dΠ/dt = |Σ_j v_j F_j|²`, with `F` the
/// rotating-frame amplitudes.
pub fn loss_rate(params: &MultipletParams, state: &AmplitudeVector) -> f64 {
    let rotating = state.to_frame(Frame::Rotating, params.omega_bar);
    let overlap: C64 = params
        .sqrt_rates()
        .iter()
        .zip(&rotating.amps)
        .map(|(v, f)| f * v)
        .sum();
    overlap.norm_sqr()
}

/// `n` evenly spaced samples on `[0, t_max]`, both ends included.
pub fn uniform_grid(t_max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => {
            let step = t_max / (n - 1) as f64;
            let mut grid: Vec<f64> = (0..n).map(|k| k as f64 * step).collect();
            grid[n - 1] = t_max;
            grid
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplet::central_state;

    fn reference() -> MultipletParams {
        MultipletParams::symmetric(1, 1.0, 0.5, 0.1).unwrap()
    }

    #[test]
    fn identity_at_time_zero() {
        let p = MultipletParams::new(
            1,
            vec![0.3, 1.0, 0.9],
            0.4,
            vec![C64::new(0.2, 0.1), C64::new(0.5, 0.0), C64::new(0.0, -0.3)],
        )
        .unwrap();
        let traj = propagate(&p, &[0.0]).unwrap();
        assert_eq!(traj.states[0].amps, p.initial);
        assert_eq!(traj.total[0], p.initial_population());
    }

    #[test]
    fn decoupled_central_level_decays_exponentially() {
        for omega in [0.0, 0.1, 1.3] {
            let p = MultipletParams::central(1, vec![0.0, 1.0, 0.0], omega).unwrap();
            let grid = uniform_grid(30.0, 301);
            let traj = propagate(&p, &grid).unwrap();
            for (t, pi) in grid.iter().zip(&traj.total) {
                assert!((pi - (-t).exp()).abs() < 1e-14, "t = {t}");
            }
        }
    }

    #[test]
    fn bad_grids() {
        let p = reference();
        assert_eq!(propagate(&p, &[]), Err(Error::EmptyTimeGrid));
        assert_eq!(propagate(&p, &[0.0, 1.0, 1.0]), Err(Error::NonMonotoneTimeGrid(2)));
        assert_eq!(propagate(&p, &[-1.0, 1.0]), Err(Error::NonMonotoneTimeGrid(0)));
        assert_eq!(propagate(&p, &[0.0, f64::NAN]), Err(Error::NonMonotoneTimeGrid(1)));
    }

    #[test]
    fn population_series_is_bit_identical() {
        let traj = propagate(&reference(), &uniform_grid(50.0, 200)).unwrap();
        let (pops, total) = population_series(&traj);
        assert_eq!(pops, traj.populations);
        assert_eq!(total, traj.total);
        assert_eq!(traj.populations[0], vec![0.0, 1.0, 0.0]);
        assert_eq!(traj.total[0], 1.0);
    }

    #[test]
    fn undriven_side_levels_stay_empty() {
        let p = MultipletParams::central(1, vec![0.0, 1.0, 0.0], 0.1).unwrap();
        let traj = propagate(&p, &uniform_grid(20.0, 50)).unwrap();
        assert!(traj.level(-1).unwrap().iter().all(|&x| x == 0.0));
        assert!(traj.level(1).unwrap().iter().all(|&x| x == 0.0));
        assert!(traj.level(2).is_none());
    }

    #[test]
    fn side_populations_coincide_for_symmetric_rates() {
        let traj = propagate(&reference(), &uniform_grid(300.0, 1000)).unwrap();
        let lower = traj.level(-1).unwrap();
        let upper = traj.level(1).unwrap();
        for (a, b) in lower.iter().zip(&upper) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn linear_in_initial_amplitudes() {
        let full = reference();
        let mut half = full.clone();
        half.initial = central_state(1).iter().map(|a| a * 0.5).collect();
        let grid = uniform_grid(40.0, 81);
        let a = propagate(&full, &grid).unwrap();
        let b = propagate(&half, &grid).unwrap();
        for (sa, sb) in a.states.iter().zip(&b.states) {
            for (x, y) in sa.amps.iter().zip(&sb.amps) {
                assert!((x * 0.5 - y).norm() < 1e-15);
            }
        }
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn frozen_high_precision_values() {
        // 40-digit reference values from an arbitrary-precision matrix exponential.
        let cases = [
            (0.1, 300.0, 0.108_404_292_334_393_733_25),
            (0.3, 300.0, 7.637_999_742_670_201_199_3e-7),
            (0.1, 50.0, 0.398_227_846_956_831_130_38),
            (0.1, 10.0, 0.493_600_651_258_429_258_31),
            (0.5, 300.0, 6.980_862_602_280_156_798_2e-17),
        ];
        for (omega, t, want) in cases {
            let p = reference().with_omega_bar(omega);
            let got = propagate(&p, &[t]).unwrap().total[0];
            assert!(((got - want) / want).abs() < 1e-9, "omega {omega}, t {t}: {got}");
        }
        let p = MultipletParams::symmetric(1, 1.0, 5.0, 0.1).unwrap();
        let got = propagate(&p, &[20.0]).unwrap().total[0];
        assert!((got - 0.902_785_649_200_168_760_16).abs() < 1e-12);
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn frozen_two_photon_amplitudes() {
        let p = MultipletParams::new(
            2,
            vec![0.3, 0.7, 1.0, 0.2, 0.9],
            0.25,
            vec![
                C64::new(0.3, 0.1),
                C64::new(0.5, -0.2),
                C64::new(0.4, 0.0),
                C64::new(-0.1, 0.3),
                C64::new(0.2, 0.35),
            ],
        )
        .unwrap();
        let want = [
            C64::new(0.092_906_411_766_077_609_553, 0.140_976_596_280_755_630_59),
            C64::new(0.080_135_355_078_859_774_857, -0.153_746_925_634_939_151_33),
            C64::new(-0.199_833_914_925_961_797_03, -0.146_153_813_199_267_983_74),
            C64::new(-0.310_652_536_587_550_366_44, 0.131_219_571_134_031_083_63),
            C64::new(-0.029_457_937_957_068_045_26, -0.028_928_871_862_488_476_565),
        ];
        let traj = propagate(&p, &[0.0, 7.5]).unwrap();
        for (got, w) in traj.states[1].amps.iter().zip(want) {
            assert!((got - w).norm() < 1e-13, "{got} vs {w}");
        }
        assert!((traj.total[1] - 0.235_288_549_062_085_740_9).abs() < 1e-13);
    }

    #[test]
    fn loss_rate_matches_definition_at_start() {
        // Central state: -dΠ/dt(0) = γ0.
        let p = reference();
        assert!((loss_rate(&p, &p.initial_state()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn uniform_grid_endpoints() {
        let g = uniform_grid(300.0, 1000);
        assert_eq!(g.len(), 1000);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[999], 300.0);
        assert_eq!(uniform_grid(1.0, 1), vec![0.0]);
    }
}

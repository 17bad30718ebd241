use num_complex::Complex64 as C64;

use super::Trajectory;
use crate::error::{Error, Result};
use crate::multiplet::{validate, AmplitudeVector, Frame, MultipletParams};

/// Upper bound on `dt * (max γ + N ω̄)` accepted by [`integrate_lab`].
pub const MAX_STEP_STIFFNESS: f64 = 0.1;

/// Lab-frame right-hand side, written term by term from the amplitude
/// equations.
fn lab_rhs(gamma: &[f64], omega_bar: f64, t: f64, e: &[C64], out: &mut [C64]) {
    let half = (gamma.len() / 2) as i64;
    for (jj, o) in out.iter_mut().enumerate() {
        let j = jj as i64 - half;
        let mut d = -0.5 * gamma[jj] * e[jj];
        for (ll, el) in e.iter().enumerate() {
            if ll == jj {
                continue;
            }
            let l = ll as i64 - half;
            let cross = (gamma[ll] * gamma[jj]).sqrt();
            let phase = C64::from_polar(1.0, (j - l) as f64 * omega_bar * t);
            d -= 0.5 * cross * el * phase;
        }
        *o = d;
    }
}

fn rk4_step(gamma: &[f64], omega_bar: f64, t: f64, h: f64, e: &mut [C64], work: &mut [Vec<C64>; 5]) {
    let [k1, k2, k3, k4, tmp] = work;
    lab_rhs(gamma, omega_bar, t, e, k1);
    for i in 0..e.len() {
        tmp[i] = e[i] + 0.5 * h * k1[i];
    }
    lab_rhs(gamma, omega_bar, t + 0.5 * h, tmp, k2);
    for i in 0..e.len() {
        tmp[i] = e[i] + 0.5 * h * k2[i];
    }
    lab_rhs(gamma, omega_bar, t + 0.5 * h, tmp, k3);
    for i in 0..e.len() {
        tmp[i] = e[i] + h * k3[i];
    }
    lab_rhs(gamma, omega_bar, t + h, tmp, k4);
    for i in 0..e.len() {
        e[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

/// Fixed-step classical RK4 on the time-dependent lab-frame equations.
///
/// Samples every step on `0, dt, 2 dt, ...`; the final step is shortened so
/// the grid ends exactly at `t_end`.
pub fn integrate_lab(params: &MultipletParams, t_end: f64, dt: f64) -> Result<Trajectory> {
    let params = validate(params.clone())?;
    if !(dt > 0.0 && t_end > 0.0 && dt.is_finite() && t_end.is_finite()) {
        return Err(Error::InvalidTimeStep { dt, t_end });
    }
    let max_rate = params.gamma.iter().cloned().fold(0.0, f64::max);
    let stiffness = dt * (max_rate + params.half_width as f64 * params.omega_bar);
    if stiffness > MAX_STEP_STIFFNESS {
        return Err(Error::StepTooLarge {
            dt,
            stiffness,
            limit: MAX_STEP_STIFFNESS,
        });
    }

    // Tolerate t_end being a multiple of dt up to rounding.
    let steps = ((t_end / dt) - 1e-9).ceil().max(1.0) as usize;
    let mut times: Vec<f64> = (0..=steps).map(|k| k as f64 * dt).collect();
    times[steps] = t_end;

    let dim = params.dim();
    let mut work: [Vec<C64>; 5] = std::array::from_fn(|_| vec![C64::new(0.0, 0.0); dim]);
    let mut e = params.initial.clone();
    let mut states = Vec::with_capacity(steps + 1);
    states.push(params.initial_state());
    for k in 0..steps {
        let (t0, t1) = (times[k], times[k + 1]);
        rk4_step(&params.gamma, params.omega_bar, t0, t1 - t0, &mut e, &mut work);
        states.push(AmplitudeVector {
            amps: e.clone(),
            frame: Frame::Lab,
            time: t1,
        });
    }
    Ok(Trajectory::from_states(times, states))
}

//! Multiplet parameters and effective decay rates.
//!
//! Levels are stored in ascending order of the photon-exchange index
//! `j = -N..=N`, so level `j` lives at vector index `j + N`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Physical description of the low-frequency drive.
///
/// `gbar[i - 1]` is the amplitude for exchanging `i` low-frequency photons
/// during one atomic transition; its length fixes the multiplet half-width.
#[derive(Debug, Clone, PartialEq)]
pub struct DrivingFieldSpec {
    /// Bare spontaneous decay rate γ⁽⁰⁾ of the transition.
    pub gamma0: f64,
    pub gbar: Vec<C64>,
    /// Mean photon number of the drive. Real valued so the strong-field
    /// limit can be approached continuously.
    pub n_photons: f64,
    /// Use the exact ladder factors `n(n-1)...` and `(n+1)(n+2)...` instead
    /// of the strong-field approximation `n ± k ≈ n`.
    pub exact_ladder: bool,
}

impl DrivingFieldSpec {
    pub fn half_width(&self) -> usize {
        self.gbar.len()
    }

    fn check(&self) -> Result<()> {
        if !(self.gamma0.is_finite() && self.gamma0 >= 0.0) {
            return Err(Error::InvalidDrive("gamma0 must be finite and nonnegative"));
        }
        if !(self.n_photons.is_finite() && self.n_photons > 0.0) {
            return Err(Error::InvalidDrive("n_photons must be finite and positive"));
        }
        if self.gbar.iter().any(|g| !(g.re.is_finite() && g.im.is_finite())) {
            return Err(Error::InvalidDrive("coupling amplitudes must be finite"));
        }
        Ok(())
    }
}

/// Effective decay rates γ⁽ʲ⁾, `j = -N..=N`, for a flat vacuum mode density.
///
/// The rate of level `±i` is `gamma0 * |gbar_i|^2` times the squared ladder
/// factor of the corresponding coupling constant. In the strong-field limit
/// that factor is `n^i` on both sides. With `exact_ladder` the lower side
/// uses `n(n-1)...(n-i+1)` and the upper side `(n+1)(n+2)...(n+i)`.
pub fn effective_rates(spec: &DrivingFieldSpec) -> Result<Vec<f64>> {
    spec.check()?;
    let half = spec.half_width();
    let n = spec.n_photons;
    // The falling product n(n-1)...(n-N+1) turns negative below n = N - 1
    // and is meaningless as a rate well before that.
    if spec.exact_ladder && half >= 2 && n < half as f64 {
        return Err(Error::UnphysicalPhotonNumber(n));
    }

    let mut rates = vec![0.0; 2 * half + 1];
    rates[half] = spec.gamma0;
    for (k, g) in spec.gbar.iter().enumerate() {
        let order = k + 1;
        let coupling = spec.gamma0 * g.norm_sqr();
        let (lower, upper) = if spec.exact_ladder {
            let falling: f64 = (0..order).map(|m| n - m as f64).product();
            let rising: f64 = (1..=order).map(|m| n + m as f64).product();
            (falling, rising)
        } else {
            let p = n.powi(order as i32);
            (p, p)
        };
        rates[half - order] = coupling * lower;
        rates[half + order] = coupling * upper;
    }
    Ok(rates)
}

/// One complete simulation setup.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipletParams {
    /// Number `N` of low-frequency photons exchangeable per transition.
    pub half_width: usize,
    /// Decay rates γ⁽ʲ⁾ for `j = -N..=N`.
    pub gamma: Vec<f64>,
    /// Drive frequency ω̄, i.e. the spacing of neighbouring levels.
    pub omega_bar: f64,
    /// Initial amplitudes E⁽ʲ⁾(0).
    pub initial: Vec<C64>,
}

impl MultipletParams {
    /// Validating constructor.
    pub fn new(half_width: usize, gamma: Vec<f64>, omega_bar: f64, initial: Vec<C64>) -> Result<Self> {
        validate(Self {
            half_width,
            gamma,
            omega_bar,
            initial,
        })
    }

    /// All population in the central level, as without the drive.
    pub fn central(half_width: usize, gamma: Vec<f64>, omega_bar: f64) -> Result<Self> {
        Self::new(half_width, gamma, omega_bar, central_state(half_width))
    }

    /// Symmetric rates: `gamma0` on the central level and `side` on every
    /// other level, starting from the central state.
    pub fn symmetric(half_width: usize, gamma0: f64, side: f64, omega_bar: f64) -> Result<Self> {
        let mut gamma = vec![side; 2 * half_width + 1];
        gamma[half_width] = gamma0;
        Self::central(half_width, gamma, omega_bar)
    }

    pub fn from_drive(spec: &DrivingFieldSpec, omega_bar: f64) -> Result<Self> {
        let gamma = effective_rates(spec)?;
        Self::central(spec.half_width(), gamma, omega_bar)
    }

    pub fn dim(&self) -> usize {
        2 * self.half_width + 1
    }

    /// Photon-exchange indices `-N..=N` in storage order.
    pub fn levels(&self) -> impl Iterator<Item = i64> + Clone {
        let n = self.half_width as i64;
        -n..=n
    }

    /// Storage index of level `j`, if it exists.
    pub fn index_of(&self, level: i64) -> Option<usize> {
        let n = self.half_width as i64;
        (-n..=n).contains(&level).then(|| (level + n) as usize)
    }

    /// Coupling vector `v_j = sqrt(γ⁽ʲ⁾)`.
    pub fn sqrt_rates(&self) -> Vec<f64> {
        self.gamma.iter().map(|g| g.sqrt()).collect()
    }

    pub fn initial_population(&self) -> f64 {
        self.initial.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn with_omega_bar(&self, omega_bar: f64) -> Self {
        Self {
            omega_bar,
            ..self.clone()
        }
    }

    /// Replace the rate of every non-central level by `side`.
    pub fn with_side_rate(&self, side: f64) -> Self {
        let mut gamma = vec![side; self.dim()];
        gamma[self.half_width] = self.gamma[self.half_width];
        Self {
            gamma,
            ..self.clone()
        }
    }

    pub fn initial_state(&self) -> AmplitudeVector {
        AmplitudeVector {
            amps: self.initial.clone(),
            frame: Frame::Lab,
            time: 0.0,
        }
    }
}

/// `[0, ..., 0, 1, 0, ..., 0]` with the one on the central level.
pub fn central_state(half_width: usize) -> Vec<C64> {
    let mut amps = vec![C64::new(0.0, 0.0); 2 * half_width + 1];
    amps[half_width] = C64::new(1.0, 0.0);
    amps
}

/// Check every invariant of [`MultipletParams`] and hand the value back.
pub fn validate(params: MultipletParams) -> Result<MultipletParams> {
    let dim = params.dim();
    if params.gamma.len() != dim {
        return Err(Error::ShapeMismatch {
            field: "gamma",
            expected: dim,
            found: params.gamma.len(),
        });
    }
    if params.initial.len() != dim {
        return Err(Error::ShapeMismatch {
            field: "initial",
            expected: dim,
            found: params.initial.len(),
        });
    }
    for (level, &value) in params.levels().zip(&params.gamma) {
        if value.is_nan() || value < 0.0 || value.is_infinite() {
            return Err(Error::NegativeRate { level, value });
        }
    }
    if !(params.omega_bar.is_finite() && params.omega_bar >= 0.0) {
        return Err(Error::InvalidFrequency(params.omega_bar));
    }
    let norm = params.initial_population();
    if !(norm > 0.0 && norm <= 1.0 + 4.0 * f64::EPSILON) {
        return Err(Error::UnphysicalInitialNorm(norm));
    }
    Ok(params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frame {
    Lab,
    /// `F⁽ʲ⁾ = E⁽ʲ⁾ exp(-i j ω̄ t)`.
    Rotating,
}

/// Upper-state amplitudes at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeVector {
    pub amps: Vec<C64>,
    pub frame: Frame,
    pub time: f64,
}

impl AmplitudeVector {
    pub fn populations(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn total(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn to_frame(&self, frame: Frame, omega_bar: f64) -> AmplitudeVector {
        let sign = match (self.frame, frame) {
            (a, b) if a == b => return self.clone(),
            (Frame::Rotating, Frame::Lab) => 1.0,
            (Frame::Lab, Frame::Rotating) => -1.0,
            _ => unreachable!(),
        };
        let half = (self.amps.len() / 2) as i64;
        let amps = self
            .amps
            .iter()
            .zip(-half..)
            .map(|(a, j)| a * C64::from_polar(1.0, sign * j as f64 * omega_bar * self.time))
            .collect();
        AmplitudeVector {
            amps,
            frame,
            time: self.time,
        }
    }
}

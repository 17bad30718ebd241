use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("decay rate of level {level} is negative ({value})")]
    NegativeRate { level: i64, value: f64 },

    #[error("`{field}` has length {found}, expected {expected}")]
    ShapeMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("initial population {0} is outside (0, 1]")]
    UnphysicalInitialNorm(f64),

    #[error("invalid driving field: {0}")]
    InvalidDrive(&'static str),

    #[error("photon number {0} is too small for the exact two-photon ladder factor n(n-1)")]
    UnphysicalPhotonNumber(f64),

    #[error("drive frequency {0} must be finite and nonnegative")]
    InvalidFrequency(f64),

    #[error("time grid is empty")]
    EmptyTimeGrid,

    #[error("time grid must be finite, nonnegative and strictly increasing (offending index {0})")]
    NonMonotoneTimeGrid(usize),

    #[error("time step and end time must be positive (dt = {dt}, t_end = {t_end})")]
    InvalidTimeStep { dt: f64, t_end: f64 },

    #[error("time step {dt} too large: dt * (max rate + N * omega_bar) = {stiffness} > {limit}")]
    StepTooLarge { dt: f64, stiffness: f64, limit: f64 },

    #[error("drive frequency is {0}; the closed-form trapped fraction needs degenerate levels")]
    NonDegenerate(f64),

    #[error("all decay rates vanish; nothing decays, so trapping is undefined")]
    AllRatesZero,

    #[error("instantaneous decay rate never stays below the threshold {0}")]
    NoQuiescentPhase(f64),

    #[error("phase threshold must be positive and finite, got {0}")]
    InvalidThreshold(f64),

    #[error("trajectory too short for phase detection: {0}")]
    InsufficientTrajectory(String),

    #[error("sweep needs at least one value")]
    EmptySweep,

    #[error("sweep value {0} must be finite and nonnegative")]
    InvalidSweepValue(f64),
}

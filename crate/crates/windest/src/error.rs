use thiserror::Error;

/// Errors raised across the estimation stack.
#[derive(Debug, Error)]
pub enum Error {
    #[error("pitch angle {pitch_rad} rad is within {guard_rad} rad of the Euler singularity")]
    GimbalLock { pitch_rad: f64, guard_rad: f64 },

    #[error("airspeed {airspeed} m/s is at or below the {min_airspeed} m/s floor; flow angles undefined")]
    DegenerateAirspeed { airspeed: f64, min_airspeed: f64 },

    #[error("throttle {0} outside [0, 1]")]
    ThrottleOutOfRange(f64),

    #[error("trim search did not converge: residual norm {residual} after {iterations} iterations")]
    TrimNotFound { residual: f64, iterations: usize },

    #[error("innovation covariance is not invertible")]
    SingularInnovation,

    #[error("measurement frame at t={0} s has no available rows")]
    NoAvailableRows(f64),

    #[error("timestamp {t} s does not advance past {previous} s")]
    NonMonotonicTime { t: f64, previous: f64 },

    #[error("timestamp {t} s is off the {rate_hz} Hz sensor grid")]
    ClockMisaligned { t: f64, rate_hz: f64 },

    #[error("frame at t={0} s carries no flow-vane angles; direct wind calculation needs them")]
    MissingFlowAngles(f64),

    #[error("no samples left after the {warmup} s warm-up trim")]
    EmptyWindow { warmup: f64 },

    #[error("configuration parse error: {0}")]
    ParseError(String),

    #[error("configuration schema error: {0}")]
    SchemaError(String),

    #[error("required physical constant missing: {key} ({hint})")]
    MissingPhysicalConstant { key: String, hint: String },

    #[error("mismatched input lengths: {0}")]
    LengthMismatch(String),

    #[error("flight log error: {0}")]
    LogFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

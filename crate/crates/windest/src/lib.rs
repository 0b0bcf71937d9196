//! Joint flight-state and 3-D wind estimation for small fixed-wing UAVs.
//!
//! The crate combines a stability-derivative aerodynamic model with a
//! 12-state extended Kalman filter fed by simulated (or replayed) INS,
//! GNSS and air-data measurements, plus an adaptive moving-average
//! smoother for the wind states. A built-in 6-DOF truth simulator with
//! Dryden-perturbed wind scenarios provides the evaluation harness.

pub mod aero;
pub mod amae;
pub mod config;
pub mod dynamics;
pub mod ekf;
pub mod eval;
pub mod frames;
pub mod logio;
pub mod replay;
pub mod sensors;
pub mod sim;
pub mod wind;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Wraps an angle (radians) into `(-pi, pi]`.
pub fn wrap_angle(angle: f64) -> f64 {
    if angle > -std::f64::consts::PI && angle <= std::f64::consts::PI {
        return angle;
    }
    let r = angle.rem_euclid(std::f64::consts::TAU);
    if r > std::f64::consts::PI {
        r - std::f64::consts::TAU
    } else {
        r
    }
}

/// Wraps an angle difference (degrees) into `(-180, 180]`.
pub fn wrap_degrees(angle: f64) -> f64 {
    if angle > -180.0 && angle <= 180.0 {
        return angle;
    }
    let r = angle.rem_euclid(360.0);
    if r > 180.0 {
        r - 360.0
    } else {
        r
    }
}

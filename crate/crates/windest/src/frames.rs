//! Coordinate frames, rotation matrices, Euler-rate kinematics and
//! airspeed/flow-angle conversions.
//!
//! Conventions used throughout the crate:
//!
//! * Body frame: x forward, y right, z down.
//! * Inertial frame: flat-Earth ground frame, z down.
//! * Euler sequence: ZYX (yaw, pitch, roll).
//! * Wind-frame force vector is `[D, C, L]` with drag positive aft and
//!   lift positive up; [`rotation_wind_to_body`] carries the sign flips
//!   so the force term in the equations of motion is `+ R_ba * [D, C, L]`.

use crate::{Error, Result};
use nalgebra::{Matrix3, Vector3};

/// Default airspeed floor below which flow angles are undefined (m/s).
pub const DEFAULT_MIN_AIRSPEED: f64 = 0.1;

/// Default guard distance from the pitch singularity (rad).
pub const DEFAULT_GIMBAL_GUARD: f64 = 1e-3;

/// Yaw/pitch/roll attitude, radians. Stored unwrapped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub yaw: f64,
    pub pitch: f64,
    pub roll: f64,
}

impl EulerAngles {
    pub fn new(yaw: f64, pitch: f64, roll: f64) -> Self {
        Self { yaw, pitch, roll }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    /// Same attitude with every angle wrapped to `(-pi, pi]`.
    pub fn wrapped(&self) -> Self {
        Self::new(
            crate::wrap_angle(self.yaw),
            crate::wrap_angle(self.pitch),
            crate::wrap_angle(self.roll),
        )
    }

    /// Rotation taking body-frame vectors to the inertial frame (`R_gb`).
    pub fn rotation_body_to_inertial(&self) -> Matrix3<f64> {
        let (s_psi, c_psi) = self.yaw.sin_cos();
        let (s_th, c_th) = self.pitch.sin_cos();
        let (s_phi, c_phi) = self.roll.sin_cos();
        Matrix3::new(
            c_psi * c_th,
            c_psi * s_th * s_phi - s_psi * c_phi,
            c_psi * s_th * c_phi + s_psi * s_phi,
            s_psi * c_th,
            s_psi * s_th * s_phi + c_psi * c_phi,
            s_psi * s_th * c_phi - c_psi * s_phi,
            -s_th,
            c_th * s_phi,
            c_th * c_phi,
        )
    }

    /// Rotation taking inertial-frame vectors to the body frame (`R_bg`).
    pub fn rotation_inertial_to_body(&self) -> Matrix3<f64> {
        self.rotation_body_to_inertial().transpose()
    }

    /// Matrix `T(eta)` relating body rates to Euler-angle rates, with the
    /// angles ordered `[yaw, pitch, roll]`: `eta_dot = T(eta) * [p, q, r]`.
    pub fn euler_rate_matrix(&self) -> Result<Matrix3<f64>> {
        self.euler_rate_matrix_with(DEFAULT_GIMBAL_GUARD)
    }

    pub fn euler_rate_matrix_with(&self, guard_rad: f64) -> Result<Matrix3<f64>> {
        let limit = std::f64::consts::FRAC_PI_2 - guard_rad;
        if self.pitch.abs() >= limit {
            return Err(Error::GimbalLock {
                pitch_rad: self.pitch,
                guard_rad,
            });
        }
        let (s_phi, c_phi) = self.roll.sin_cos();
        let c_th = self.pitch.cos();
        let t_th = self.pitch.tan();
        Ok(Matrix3::new(
            0.0,
            s_phi / c_th,
            c_phi / c_th,
            0.0,
            c_phi,
            -s_phi,
            1.0,
            s_phi * t_th,
            c_phi * t_th,
        ))
    }
}

/// Rotation applying the wind-frame aero force `[D, C, L]` in body axes.
///
/// At zero flow angles drag maps to `-x_body` and lift to `-z_body`; the
/// sign flips for D and L are folded into the matrix, which stays proper
/// orthogonal.
pub fn rotation_wind_to_body(alpha: f64, beta: f64) -> Matrix3<f64> {
    let (s_a, c_a) = alpha.sin_cos();
    let (s_b, c_b) = beta.sin_cos();
    Matrix3::new(
        -c_a * c_b,
        -c_a * s_b,
        s_a,
        -s_b,
        c_b,
        0.0,
        -s_a * c_b,
        -s_a * s_b,
        -c_a,
    )
}

/// Airspeed vector components in the body frame, m/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyAirVelocity {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl BodyAirVelocity {
    pub fn new(u: f64, v: f64, w: f64) -> Self {
        Self { u, v, w }
    }

    pub fn vector(&self) -> Vector3<f64> {
        Vector3::new(self.u, self.v, self.w)
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        Self::new(v.x, v.y, v.z)
    }

    pub fn airspeed(&self) -> f64 {
        (self.u * self.u + self.v * self.v + self.w * self.w).sqrt()
    }
}

/// Airspeed, flow angles and dynamic pressure at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowState {
    /// Airspeed magnitude, m/s.
    pub airspeed: f64,
    /// Angle of attack, rad.
    pub alpha: f64,
    /// Sideslip angle, rad.
    pub beta: f64,
    /// Dynamic pressure, Pa.
    pub dynamic_pressure: f64,
    /// Air density, kg/m^3.
    pub density: f64,
}

/// Extracts airspeed, flow angles and dynamic pressure from the body-frame
/// airspeed vector. `alpha = atan2(w, u)`, `beta = asin(v / V)`.
pub fn flow_angles(velocity: &BodyAirVelocity, density: f64) -> Result<FlowState> {
    flow_angles_with(velocity, density, DEFAULT_MIN_AIRSPEED)
}

pub fn flow_angles_with(
    velocity: &BodyAirVelocity,
    density: f64,
    min_airspeed: f64,
) -> Result<FlowState> {
    let airspeed = velocity.airspeed();
    if airspeed <= min_airspeed {
        return Err(Error::DegenerateAirspeed {
            airspeed,
            min_airspeed,
        });
    }
    Ok(FlowState {
        airspeed,
        alpha: velocity.w.atan2(velocity.u),
        beta: (velocity.v / airspeed).asin(),
        dynamic_pressure: 0.5 * density * airspeed * airspeed,
        density,
    })
}

/// Rebuilds the body-frame airspeed vector from `(V, alpha, beta)`.
pub fn body_velocity_from_flow(airspeed: f64, alpha: f64, beta: f64) -> BodyAirVelocity {
    let (s_a, c_a) = alpha.sin_cos();
    let (s_b, c_b) = beta.sin_cos();
    BodyAirVelocity::new(airspeed * c_a * c_b, airspeed * s_b, airspeed * s_a * c_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn assert_proper_orthogonal(r: &Matrix3<f64>, tol: f64) {
        let should_be_identity = r * r.transpose();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(should_be_identity[(i, j)], expected, epsilon = tol);
            }
        }
        assert_abs_diff_eq!(r.determinant(), 1.0, epsilon = tol);
    }

    #[test]
    fn body_to_inertial_identity_at_zero() {
        let r = EulerAngles::zero().rotation_body_to_inertial();
        assert_abs_diff_eq!(r, Matrix3::identity(), epsilon = 1e-15);
    }

    #[test]
    fn pure_yaw_maps_body_x_to_inertial_y() {
        let r = EulerAngles::new(FRAC_PI_2, 0.0, 0.0).rotation_body_to_inertial();
        let mapped = r * Vector3::x();
        assert_abs_diff_eq!(mapped, Vector3::y(), epsilon = 1e-15);
    }

    #[test]
    fn rotation_orthogonality_over_sampled_angles() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let eta = EulerAngles::new(
                rng.gen_range(-PI..PI),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-PI..PI),
            );
            assert_proper_orthogonal(&eta.rotation_body_to_inertial(), 1e-12);
        }
    }

    #[test]
    fn wind_to_body_zero_angles_signs() {
        let r = rotation_wind_to_body(0.0, 0.0);
        let drag = r * Vector3::new(2.0, 0.0, 0.0);
        assert_abs_diff_eq!(drag, Vector3::new(-2.0, 0.0, 0.0), epsilon = 1e-15);
        let lift = r * Vector3::new(0.0, 0.0, 3.0);
        assert_abs_diff_eq!(lift, Vector3::new(0.0, 0.0, -3.0), epsilon = 1e-15);
    }

    #[test]
    fn wind_to_body_pure_lift_at_alpha() {
        let alpha = 0.31;
        let lift = 7.5;
        let f = rotation_wind_to_body(alpha, 0.0) * Vector3::new(0.0, 0.0, lift);
        assert_relative_eq!(f.x, lift * alpha.sin(), epsilon = 1e-14);
        assert_abs_diff_eq!(f.y, 0.0, epsilon = 1e-15);
        assert_relative_eq!(f.z, -lift * alpha.cos(), epsilon = 1e-14);
    }

    #[test]
    fn wind_to_body_orthogonal() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(12);
        for _ in 0..1000 {
            let alpha = rng.gen_range(-PI..PI);
            let beta = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
            assert_proper_orthogonal(&rotation_wind_to_body(alpha, beta), 1e-12);
        }
    }

    #[test]
    fn euler_rates_reorder_rates_in_level_flight() {
        for yaw in [-2.0, 0.0, 1.3] {
            let t = EulerAngles::new(yaw, 0.0, 0.0).euler_rate_matrix().unwrap();
            let omega = Vector3::new(0.2, -0.4, 0.6);
            let eta_dot = t * omega;
            // [yaw_dot, pitch_dot, roll_dot] = [r, q, p] when pitch = roll = 0
            assert_abs_diff_eq!(eta_dot, Vector3::new(0.6, -0.4, 0.2), epsilon = 1e-15);
        }
    }

    #[test]
    fn euler_rate_matrix_rejects_gimbal_lock() {
        let guard = DEFAULT_GIMBAL_GUARD;
        let err = EulerAngles::new(0.0, FRAC_PI_2 - guard, 0.0).euler_rate_matrix();
        assert!(matches!(err, Err(Error::GimbalLock { .. })));
        // Just inside the guard the matrix exists but is badly conditioned.
        let t = EulerAngles::new(0.0, FRAC_PI_2 - 2.0 * guard, 0.0)
            .euler_rate_matrix()
            .unwrap();
        let svd = t.svd(false, false);
        let cond = svd.singular_values.max() / svd.singular_values.min();
        assert!(cond > 100.0, "condition number {cond} should diverge");
    }

    #[test]
    fn euler_rate_matrix_inverse_roundtrip() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(13);
        for _ in 0..500 {
            let eta = EulerAngles::new(
                rng.gen_range(-PI..PI),
                rng.gen_range(-1.4..1.4),
                rng.gen_range(-PI..PI),
            );
            let t = eta.euler_rate_matrix().unwrap();
            let inv = t.try_inverse().unwrap();
            assert_abs_diff_eq!(t * inv, Matrix3::identity(), epsilon = 1e-10);
        }
    }

    #[test]
    fn gravity_term_uses_transposed_rotation() {
        let eta = EulerAngles::new(0.4, -0.2, 0.9);
        let down = Vector3::new(0.0, 0.0, 9.81);
        assert_abs_diff_eq!(
            eta.rotation_inertial_to_body() * down,
            eta.rotation_body_to_inertial().transpose() * down,
            epsilon = 0.0
        );
    }

    #[test]
    fn flow_angles_axial_flow() {
        let f = flow_angles(&BodyAirVelocity::new(16.8, 0.0, 0.0), 1.225).unwrap();
        assert_relative_eq!(f.airspeed, 16.8);
        assert_abs_diff_eq!(f.alpha, 0.0);
        assert_abs_diff_eq!(f.beta, 0.0);
        assert_relative_eq!(f.dynamic_pressure, 172.872, epsilon = 1e-9);
    }

    #[test]
    fn flow_angles_forty_five_degrees() {
        let f = flow_angles(&BodyAirVelocity::new(10.0, 0.0, 10.0), 1.225).unwrap();
        assert_relative_eq!(f.alpha, std::f64::consts::FRAC_PI_4, epsilon = 1e-15);
    }

    #[test]
    fn flow_angles_rejects_degenerate_airspeed() {
        let err = flow_angles(&BodyAirVelocity::new(0.05, 0.0, 0.0), 1.225);
        assert!(matches!(err, Err(Error::DegenerateAirspeed { .. })));
    }

    #[test]
    fn body_velocity_from_flow_examples() {
        let v = body_velocity_from_flow(16.8, 0.0, 0.0);
        assert_relative_eq!(v.u, 16.8);
        assert_abs_diff_eq!(v.v, 0.0);
        assert_abs_diff_eq!(v.w, 0.0);

        let v = body_velocity_from_flow(10.0, 0.0, FRAC_PI_2);
        assert_abs_diff_eq!(v.u, 0.0, epsilon = 1e-15);
        assert_relative_eq!(v.v, 10.0);
        assert_abs_diff_eq!(v.w, 0.0, epsilon = 1e-15);
    }

    proptest! {
        #[test]
        fn flow_roundtrip(
            u in 1.0f64..40.0,
            v in -10.0f64..10.0,
            w in -10.0f64..10.0,
        ) {
            let body = BodyAirVelocity::new(u, v, w);
            let flow = flow_angles(&body, 1.225).unwrap();
            let back = body_velocity_from_flow(flow.airspeed, flow.alpha, flow.beta);
            prop_assert!((back.u - u).abs() <= 1e-10 * flow.airspeed);
            prop_assert!((back.v - v).abs() <= 1e-10 * flow.airspeed);
            prop_assert!((back.w - w).abs() <= 1e-10 * flow.airspeed);
        }

        #[test]
        fn flow_inverse_roundtrip(
            airspeed in 0.5f64..40.0,
            alpha in -1.5f64..1.5,
            beta in -1.4f64..1.4,
        ) {
            let body = body_velocity_from_flow(airspeed, alpha, beta);
            let flow = flow_angles(&body, 1.225).unwrap();
            prop_assert!((flow.airspeed - airspeed).abs() <= 1e-12 * airspeed);
            prop_assert!((flow.alpha - alpha).abs() <= 1e-12);
            prop_assert!((flow.beta - beta).abs() <= 1e-12);
        }
    }
}

//! 6-DOF rigid-body dynamics, forward-Euler stepping, a damped-Newton
//! level-flight trim solver, and the hold autopilot that keeps scenario
//! flights at constant altitude, airspeed and heading.
//!
//! Wind is quasi-static: it never appears in the force balance, only in
//! the ground-velocity kinematics, so the body-frame airspeed dynamics
//! are wind-independent given the controls.

use crate::aero::{forces_moments, AeroCoefficientSet, Geometry, ThrustModel};
use crate::frames::{
    body_velocity_from_flow, flow_angles, rotation_wind_to_body, BodyAirVelocity, EulerAngles,
};
use crate::{Error, Result};
use nalgebra::{Matrix3, Matrix6, Vector3, Vector6};

/// Mass properties and environment constants.
#[derive(Debug, Clone, PartialEq)]
pub struct RigidBodyParams {
    /// Mass, kg.
    pub mass: f64,
    /// Inertia matrix, kg m^2. Must be symmetric positive definite.
    pub inertia: Matrix3<f64>,
    pub geometry: Geometry,
    /// m/s^2.
    pub gravity: f64,
    /// kg/m^3.
    pub density: f64,
}

/// Everything the equations of motion need: mass properties plus the
/// aerodynamic and thrust models.
#[derive(Debug, Clone, PartialEq)]
pub struct VehicleModel {
    pub params: RigidBodyParams,
    pub aero: AeroCoefficientSet,
    pub thrust: ThrustModel,
}

/// Simulator state: inertial position (z down), body airspeed vector,
/// body rates and attitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruthState {
    pub position: Vector3<f64>,
    pub velocity: BodyAirVelocity,
    pub rates: Vector3<f64>,
    pub attitude: EulerAngles,
}

/// Control vector: equivalent aileron/elevator deflection (rad) and
/// throttle fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Controls {
    pub aileron: f64,
    pub elevator: f64,
    pub throttle: f64,
}

impl Controls {
    pub fn zero() -> Self {
        Self {
            aileron: 0.0,
            elevator: 0.0,
            throttle: 0.0,
        }
    }
}

/// Time derivative of [`TruthState`]. Attitude rates are ordered
/// `[yaw, pitch, roll]` like the attitude itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDerivative {
    pub velocity_dot: Vector3<f64>,
    pub rates_dot: Vector3<f64>,
    pub attitude_dot: Vector3<f64>,
    pub position_dot: Vector3<f64>,
}

/// Equations of motion: translational and rotational dynamics plus the
/// attitude and position kinematics. Wind enters only `position_dot`.
pub fn state_derivative(
    state: &TruthState,
    controls: &Controls,
    wind: &Vector3<f64>,
    model: &VehicleModel,
) -> Result<StateDerivative> {
    let p = &model.params;
    let flow = flow_angles(&state.velocity, p.density)?;
    let coeffs = model.aero.evaluate(
        &flow,
        &state.rates,
        controls.aileron,
        controls.elevator,
        &p.geometry,
    )?;
    let (force_wind_frame, moments) = forces_moments(&coeffs, flow.dynamic_pressure, &p.geometry);
    let (_, thrust_vec) = model.thrust.thrust(controls.throttle)?;

    let r_gb = state.attitude.rotation_body_to_inertial();
    let gravity_body = r_gb.transpose() * Vector3::new(0.0, 0.0, p.mass * p.gravity);
    let aero_body = rotation_wind_to_body(flow.alpha, flow.beta) * force_wind_frame;

    let omega = state.rates;
    let v_b = state.velocity.vector();
    let velocity_dot =
        (thrust_vec + aero_body + gravity_body - omega.cross(&(p.mass * v_b))) / p.mass;

    let inertia_inv = p
        .inertia
        .try_inverse()
        .expect("inertia matrix must be invertible");
    let rates_dot = inertia_inv * (moments - omega.cross(&(p.inertia * omega)));

    let attitude_dot = state.attitude.euler_rate_matrix()? * omega;
    let position_dot = r_gb * v_b + wind;

    Ok(StateDerivative {
        velocity_dot,
        rates_dot,
        attitude_dot,
        position_dot,
    })
}

/// The acceleration vector the INS reports: applied (thrust + aero) force
/// over mass plus the gravity term rotated into the body frame. This is
/// the same expression the filter's observation model uses, and it equals
/// `velocity_dot + omega x V_b`.
pub fn acceleration_output(
    state: &TruthState,
    controls: &Controls,
    model: &VehicleModel,
) -> Result<Vector3<f64>> {
    let p = &model.params;
    let flow = flow_angles(&state.velocity, p.density)?;
    let coeffs = model.aero.evaluate(
        &flow,
        &state.rates,
        controls.aileron,
        controls.elevator,
        &p.geometry,
    )?;
    let (force_wind_frame, _) = forces_moments(&coeffs, flow.dynamic_pressure, &p.geometry);
    let (_, thrust_vec) = model.thrust.thrust(controls.throttle)?;
    let aero_body = rotation_wind_to_body(flow.alpha, flow.beta) * force_wind_frame;
    let gravity_body = state.attitude.rotation_inertial_to_body() * Vector3::new(0.0, 0.0, p.gravity);
    Ok((thrust_vec + aero_body) / p.mass + gravity_body)
}

/// One forward-Euler step of length `dt`.
pub fn euler_step(
    state: &TruthState,
    controls: &Controls,
    wind: &Vector3<f64>,
    dt: f64,
    model: &VehicleModel,
) -> Result<TruthState> {
    let d = state_derivative(state, controls, wind, model)?;
    Ok(TruthState {
        position: state.position + dt * d.position_dot,
        velocity: BodyAirVelocity::from_vector(&(state.velocity.vector() + dt * d.velocity_dot)),
        rates: state.rates + dt * d.rates_dot,
        attitude: EulerAngles::new(
            state.attitude.yaw + dt * d.attitude_dot.x,
            state.attitude.pitch + dt * d.attitude_dot.y,
            state.attitude.roll + dt * d.attitude_dot.z,
        ),
    })
}

const TRIM_TOLERANCE: f64 = 1e-8;
const TRIM_MAX_ITERATIONS: usize = 100;

/// Finds the straight, level, constant-speed equilibrium at `airspeed`.
///
/// The search runs over (alpha, beta, roll, aileron, elevator, throttle);
/// the lateral unknowns are needed because the coefficient table carries
/// nonzero lateral intercepts, so a purely longitudinal trim cannot zero
/// the side force and lateral moments. Pitch follows from the zero-climb
/// constraint. Residuals are net force (N) and moment (N m).
pub fn trim_level_flight(
    airspeed: f64,
    altitude: f64,
    model: &VehicleModel,
) -> Result<(TruthState, Controls)> {
    let mut x = Vector6::new(0.03, 0.0, 0.0, 0.0, 0.1, 0.2);
    let mut residual = trim_residual(&x, airspeed, altitude, model)
        .map_err(|_| Error::TrimNotFound {
            residual: f64::INFINITY,
            iterations: 0,
        })?;

    for iteration in 0..TRIM_MAX_ITERATIONS {
        if residual.norm() < TRIM_TOLERANCE {
            let (state, controls) = trim_candidate(&x, airspeed, altitude);
            if !(0.0..=1.0).contains(&controls.throttle) {
                return Err(Error::ThrottleOutOfRange(controls.throttle));
            }
            return Ok((state, controls));
        }

        // Central-difference Jacobian of the residual.
        let mut jac = Matrix6::zeros();
        for j in 0..6 {
            let h = 1e-7 * x[j].abs().max(1.0);
            let mut hi = x;
            hi[j] += h;
            let mut lo = x;
            lo[j] -= h;
            let r_hi = trim_residual(&hi, airspeed, altitude, model);
            let r_lo = trim_residual(&lo, airspeed, altitude, model);
            match (r_hi, r_lo) {
                (Ok(rh), Ok(rl)) => jac.set_column(j, &((rh - rl) / (2.0 * h))),
                _ => {
                    return Err(Error::TrimNotFound {
                        residual: residual.norm(),
                        iterations: iteration,
                    })
                }
            }
        }

        let step = jac.lu().solve(&(-residual)).ok_or(Error::TrimNotFound {
            residual: residual.norm(),
            iterations: iteration,
        })?;

        // Backtracking line search; failed evaluations count as worse.
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let candidate = x + scale * step;
            if let Ok(r) = trim_residual(&candidate, airspeed, altitude, model) {
                if r.norm() < residual.norm() {
                    x = candidate;
                    residual = r;
                    accepted = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if !accepted {
            return Err(Error::TrimNotFound {
                residual: residual.norm(),
                iterations: iteration,
            });
        }
    }

    Err(Error::TrimNotFound {
        residual: residual.norm(),
        iterations: TRIM_MAX_ITERATIONS,
    })
}

fn trim_candidate(x: &Vector6<f64>, airspeed: f64, altitude: f64) -> (TruthState, Controls) {
    let (alpha, beta, roll) = (x[0], x[1], x[2]);
    let velocity = body_velocity_from_flow(airspeed, alpha, beta);
    // Zero-climb constraint fixes the pitch angle.
    let pitch = (roll.sin() * velocity.v + roll.cos() * velocity.w).atan2(velocity.u);
    let state = TruthState {
        position: Vector3::new(0.0, 0.0, -altitude),
        velocity,
        rates: Vector3::zeros(),
        attitude: EulerAngles::new(0.0, pitch, roll),
    };
    let controls = Controls {
        aileron: x[3],
        elevator: x[4],
        throttle: x[5],
    };
    (state, controls)
}

fn trim_residual(
    x: &Vector6<f64>,
    airspeed: f64,
    altitude: f64,
    model: &VehicleModel,
) -> Result<Vector6<f64>> {
    let (state, controls) = trim_candidate(x, airspeed, altitude);
    if !(-0.2..=1.2).contains(&controls.throttle) {
        // Keep the line search away from wildly unphysical thrust.
        return Err(Error::ThrottleOutOfRange(controls.throttle));
    }
    let throttle_clamped = controls.throttle.clamp(0.0, 1.0);
    let extra_thrust = (controls.throttle - throttle_clamped) * model.thrust.max_thrust;
    let d = state_derivative(
        &state,
        &Controls {
            throttle: throttle_clamped,
            ..controls
        },
        &Vector3::zeros(),
        model,
    )?;
    let force = model.params.mass * d.velocity_dot
        + Vector3::new(
            extra_thrust * model.thrust.install_angle.cos(),
            0.0,
            -extra_thrust * model.thrust.install_angle.sin(),
        );
    let moment = model.params.inertia * d.rates_dot;
    Ok(Vector6::new(
        force.x, force.y, force.z, moment.x, moment.y, moment.z,
    ))
}

/// Hold targets for the scenario autopilot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutopilotTargets {
    /// Altitude above ground, m (positive up).
    pub altitude: f64,
    /// m/s.
    pub airspeed: f64,
    /// rad.
    pub heading: f64,
}

/// PID gains for the three hold loops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutopilotGains {
    pub altitude_to_pitch: f64,
    pub altitude_integral: f64,
    pub climb_damping: f64,
    pub pitch_to_elevator: f64,
    pub pitch_rate_damping: f64,
    pub airspeed_to_throttle: f64,
    pub airspeed_integral: f64,
    pub heading_to_roll: f64,
    pub roll_to_aileron: f64,
    pub roll_rate_damping: f64,
    pub pitch_cmd_limit: f64,
    pub roll_cmd_limit: f64,
    pub surface_limit: f64,
}

impl Default for AutopilotGains {
    fn default() -> Self {
        Self {
            altitude_to_pitch: 0.05,
            altitude_integral: 0.01,
            climb_damping: 0.035,
            pitch_to_elevator: 3.0,
            pitch_rate_damping: 0.5,
            airspeed_to_throttle: 0.1,
            airspeed_integral: 0.03,
            heading_to_roll: 1.2,
            roll_to_aileron: 2.0,
            roll_rate_damping: 0.3,
            pitch_cmd_limit: 0.25,
            roll_cmd_limit: 0.45,
            surface_limit: 30f64.to_radians(),
        }
    }
}

/// Three PID loops around the trim point. Deliberately crude: its only
/// job is to keep scenario flights on condition.
#[derive(Debug, Clone)]
pub struct Autopilot {
    pub targets: AutopilotTargets,
    pub gains: AutopilotGains,
    trim_state: TruthState,
    trim_controls: Controls,
    altitude_integral: f64,
    airspeed_integral: f64,
}

impl Autopilot {
    pub fn new(targets: AutopilotTargets, gains: AutopilotGains, trim: (TruthState, Controls)) -> Self {
        Self {
            targets,
            gains,
            trim_state: trim.0,
            trim_controls: trim.1,
            altitude_integral: 0.0,
            airspeed_integral: 0.0,
        }
    }

    /// One controller step. Saturating everywhere, so never fails.
    pub fn control(&mut self, state: &TruthState, dt: f64) -> Controls {
        let g = &self.gains;

        let altitude = -state.position.z;
        let altitude_error = self.targets.altitude - altitude;
        // Air-relative climb rate; the controller has no wind knowledge.
        let climb_air = -(state.attitude.rotation_body_to_inertial() * state.velocity.vector()).z;
        self.altitude_integral = (self.altitude_integral + altitude_error * dt).clamp(-20.0, 20.0);
        let pitch_cmd = self.trim_state.attitude.pitch
            + (g.altitude_to_pitch * altitude_error + g.altitude_integral * self.altitude_integral
                - g.climb_damping * climb_air)
                .clamp(-g.pitch_cmd_limit, g.pitch_cmd_limit);
        let elevator = self.trim_controls.elevator
            + g.pitch_to_elevator * (state.attitude.pitch - pitch_cmd)
            + g.pitch_rate_damping * state.rates.y;

        let airspeed_error = self.targets.airspeed - state.velocity.airspeed();
        self.airspeed_integral = (self.airspeed_integral + airspeed_error * dt).clamp(-20.0, 20.0);
        let throttle = self.trim_controls.throttle
            + g.airspeed_to_throttle * airspeed_error
            + g.airspeed_integral * self.airspeed_integral;

        let heading_error = crate::wrap_angle(self.targets.heading - state.attitude.yaw);
        let roll_cmd = self.trim_state.attitude.roll
            + (g.heading_to_roll * heading_error).clamp(-g.roll_cmd_limit, g.roll_cmd_limit);
        let aileron = self.trim_controls.aileron
            + g.roll_to_aileron * (roll_cmd - state.attitude.roll)
            - g.roll_rate_damping * state.rates.x;

        Controls {
            aileron: aileron.clamp(-g.surface_limit, g.surface_limit),
            elevator: elevator.clamp(-g.surface_limit, g.surface_limit),
            throttle: throttle.clamp(0.0, 1.0),
        }
    }
}

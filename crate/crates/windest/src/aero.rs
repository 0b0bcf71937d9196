//! Stability-derivative aerodynamic model: coefficient assembly, forces
//! and moments, thrust, elevon mixing, and the error-injection overlay
//! used by the coefficient-sweep experiments.

use crate::frames::FlowState;
use crate::{Error, Result};
use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

/// Denominator convention for rate-normalized derivatives: rates enter as
/// `p * b / (2 V)` etc.
pub const RATE_NORMALIZATION: f64 = 2.0;

/// Wing geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    /// Wing area, m^2.
    pub wing_area: f64,
    /// Span, m.
    pub span: f64,
    /// Mean aerodynamic chord, m.
    pub chord: f64,
}

impl Geometry {
    /// Planform of the flight-test airframe.
    pub fn skywalker_x8() -> Self {
        Self {
            wing_area: 0.75,
            span: 2.10,
            chord: 0.42,
        }
    }
}

/// Full stability-derivative set. Unpublished entries default to zero.
///
/// Field names follow the coefficient table of the airframe model:
/// lift `C_L*`, drag `C_D*`, side force `C_C*`, roll `C_l*`, pitch `C_m*`,
/// yaw `C_n*`; `alpha`/`beta` slopes are per radian, `q`/`p`/`r` entries
/// are normalized by `c/2V` and `b/2V`, and `de`/`da` are per radian of
/// elevator/aileron deflection.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AeroCoefficientSet {
    pub C_L0: f64,
    pub C_Lalpha: f64,
    pub C_Lq: f64,
    pub C_Lde: f64,

    pub C_D0: f64,
    pub C_Dalpha: f64,
    pub C_Dde: f64,
    /// Optional quadratic drag term in alpha; zero keeps the linear polar.
    pub C_Dalpha2: f64,

    pub C_C0: f64,
    pub C_Cbeta: f64,
    pub C_Cp: f64,
    pub C_Cr: f64,
    pub C_Cda: f64,

    pub C_l0: f64,
    pub C_lbeta: f64,
    pub C_lp: f64,
    pub C_lr: f64,
    pub C_lda: f64,

    pub C_m0: f64,
    pub C_malpha: f64,
    pub C_mq: f64,
    pub C_mde: f64,

    pub C_n0: f64,
    pub C_nbeta: f64,
    pub C_np: f64,
    pub C_nr: f64,
    pub C_nda: f64,
}

impl AeroCoefficientSet {
    /// Wind-tunnel coefficient set for the Skywalker X8. Dashes in the
    /// published table (the rate derivatives) are zero.
    pub fn skywalker_x8() -> Self {
        Self {
            C_L0: 0.0867,
            C_Lalpha: 4.02,
            C_Lde: 0.278,
            C_D0: 0.0197,
            C_Dalpha: 0.0791,
            C_Dde: 0.0633,
            C_C0: 0.00316,
            C_Cbeta: -0.224,
            C_Cda: 0.0433,
            C_l0: 0.00413,
            C_lbeta: -0.0849,
            C_lda: 0.12,
            C_m0: 0.0302,
            C_malpha: -0.126,
            C_mde: -0.206,
            C_n0: -0.000471,
            C_nbeta: 0.0283,
            C_nda: -0.00339,
            ..Self::default()
        }
    }

    /// Evaluates the six dimensionless coefficients at one flight condition.
    pub fn evaluate(
        &self,
        flow: &FlowState,
        rates: &Vector3<f64>,
        aileron: f64,
        elevator: f64,
        geom: &Geometry,
    ) -> Result<Coefficients> {
        if flow.airspeed <= crate::frames::DEFAULT_MIN_AIRSPEED {
            return Err(Error::DegenerateAirspeed {
                airspeed: flow.airspeed,
                min_airspeed: crate::frames::DEFAULT_MIN_AIRSPEED,
            });
        }
        let alpha = flow.alpha;
        let beta = flow.beta;
        let p_hat = rates.x * geom.span / (RATE_NORMALIZATION * flow.airspeed);
        let q_hat = rates.y * geom.chord / (RATE_NORMALIZATION * flow.airspeed);
        let r_hat = rates.z * geom.span / (RATE_NORMALIZATION * flow.airspeed);

        Ok(Coefficients {
            drag: self.C_D0
                + self.C_Dalpha * alpha
                + self.C_Dalpha2 * alpha * alpha
                + self.C_Dde * elevator,
            side: self.C_C0
                + self.C_Cbeta * beta
                + self.C_Cp * p_hat
                + self.C_Cr * r_hat
                + self.C_Cda * aileron,
            lift: self.C_L0 + self.C_Lalpha * alpha + self.C_Lq * q_hat + self.C_Lde * elevator,
            roll: self.C_l0
                + self.C_lbeta * beta
                + self.C_lp * p_hat
                + self.C_lr * r_hat
                + self.C_lda * aileron,
            pitch: self.C_m0 + self.C_malpha * alpha + self.C_mq * q_hat + self.C_mde * elevator,
            yaw: self.C_n0
                + self.C_nbeta * beta
                + self.C_np * p_hat
                + self.C_nr * r_hat
                + self.C_nda * aileron,
        })
    }

    /// Returns a copy with the perturbation deltas added on. The receiver
    /// is untouched.
    pub fn perturbed(&self, delta: &ModelPerturbation) -> Self {
        let mut out = *self;
        out.C_L0 += delta.C_L0.unwrap_or(0.0);
        out.C_Lalpha += delta.C_Lalpha.unwrap_or(0.0);
        out.C_Lq += delta.C_Lq.unwrap_or(0.0);
        out.C_Lde += delta.C_Lde.unwrap_or(0.0);
        out.C_D0 += delta.C_D0.unwrap_or(0.0);
        out.C_Dalpha += delta.C_Dalpha.unwrap_or(0.0);
        out.C_Dde += delta.C_Dde.unwrap_or(0.0);
        out.C_m0 += delta.C_m0.unwrap_or(0.0);
        out.C_malpha += delta.C_malpha.unwrap_or(0.0);
        out.C_mde += delta.C_mde.unwrap_or(0.0);
        out
    }
}

/// Additive deltas on a subset of the coefficient set, applied only to the
/// estimator's copy in sweep mode.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelPerturbation {
    pub C_L0: Option<f64>,
    pub C_Lalpha: Option<f64>,
    pub C_Lq: Option<f64>,
    pub C_Lde: Option<f64>,
    pub C_D0: Option<f64>,
    pub C_Dalpha: Option<f64>,
    pub C_Dde: Option<f64>,
    pub C_m0: Option<f64>,
    pub C_malpha: Option<f64>,
    pub C_mde: Option<f64>,
}

impl ModelPerturbation {
    #[allow(non_snake_case)]
    pub fn lift_intercept(delta: f64) -> Self {
        Self {
            C_L0: Some(delta),
            ..Self::default()
        }
    }

    #[allow(non_snake_case)]
    pub fn lift_slope(delta: f64) -> Self {
        Self {
            C_Lalpha: Some(delta),
            ..Self::default()
        }
    }

    #[allow(non_snake_case)]
    pub fn drag_intercept(delta: f64) -> Self {
        Self {
            C_D0: Some(delta),
            ..Self::default()
        }
    }

    pub fn negated(&self) -> Self {
        let flip = |x: Option<f64>| x.map(|v| -v);
        Self {
            C_L0: flip(self.C_L0),
            C_Lalpha: flip(self.C_Lalpha),
            C_Lq: flip(self.C_Lq),
            C_Lde: flip(self.C_Lde),
            C_D0: flip(self.C_D0),
            C_Dalpha: flip(self.C_Dalpha),
            C_Dde: flip(self.C_Dde),
            C_m0: flip(self.C_m0),
            C_malpha: flip(self.C_malpha),
            C_mde: flip(self.C_mde),
        }
    }
}

/// The six dimensionless coefficients at one flight condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub drag: f64,
    pub side: f64,
    pub lift: f64,
    pub roll: f64,
    pub pitch: f64,
    pub yaw: f64,
}

/// Dimensional wind-frame force `[D, C, L]` (N) and body moments
/// `[l, M, N]` (N m) from the coefficients and dynamic pressure.
pub fn forces_moments(
    coeffs: &Coefficients,
    dynamic_pressure: f64,
    geom: &Geometry,
) -> (Vector3<f64>, Vector3<f64>) {
    let qs = dynamic_pressure * geom.wing_area;
    let force = Vector3::new(qs * coeffs.drag, qs * coeffs.side, qs * coeffs.lift);
    let moment = Vector3::new(
        qs * geom.span * coeffs.roll,
        qs * geom.chord * coeffs.pitch,
        qs * geom.span * coeffs.yaw,
    );
    (force, moment)
}

/// Engine model: thrust linear in throttle, installed at a fixed angle in
/// the body x-z plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThrustModel {
    /// Thrust per unit throttle, N.
    pub max_thrust: f64,
    /// Installation angle, rad (zero here: thrust along +x body).
    #[serde(default)]
    pub install_angle: f64,
}

impl ThrustModel {
    /// Thrust magnitude and body-frame thrust vector for a throttle setting.
    pub fn thrust(&self, throttle: f64) -> Result<(f64, Vector3<f64>)> {
        if !(0.0..=1.0).contains(&throttle) {
            return Err(Error::ThrottleOutOfRange(throttle));
        }
        let magnitude = self.max_thrust * throttle;
        let (s, c) = self.install_angle.sin_cos();
        Ok((magnitude, Vector3::new(magnitude * c, 0.0, -magnitude * s)))
    }
}

/// Equivalent aileron and elevator deflections from the left/right elevon
/// pair: `da = (dR - dL) / 2`, `de = (dR + dL) / 2`.
pub fn elevon_mix(left: f64, right: f64) -> (f64, f64) {
    ((right - left) / 2.0, (right + left) / 2.0)
}

/// Inverse of [`elevon_mix`].
pub fn elevon_unmix(aileron: f64, elevator: f64) -> (f64, f64) {
    (elevator - aileron, elevator + aileron)
}

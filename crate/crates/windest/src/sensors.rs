//! Simulated low-cost INS/GNSS/ADS sensor suite: additive Gaussian noise
//! at the configured channel accuracies, multi-rate clocks, and assembly
//! of the per-tick observation frame.

use crate::dynamics::TruthState;
use crate::frames::{flow_angles, EulerAngles};
use crate::wind::WindVector;
use crate::{Error, Result};
use nalgebra::Vector3;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// Per-channel noise levels (standard deviations) and sensor rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SensorSpec {
    /// INS angular-rate noise, deg/s.
    pub gyro_std_dps: f64,
    /// INS attitude noise, deg.
    pub attitude_std_deg: f64,
    /// INS acceleration noise, m/s^2.
    pub accel_std: f64,
    /// GNSS velocity noise per axis, m/s.
    pub gnss_velocity_std: f64,
    /// ADS airspeed noise, m/s.
    pub airspeed_std: f64,
    /// Flow-vane noise (alpha, beta), deg; `None` disables the vanes.
    pub vane_std_deg: Option<[f64; 2]>,
    pub ins_rate_hz: f64,
    pub ads_rate_hz: f64,
    pub gnss_rate_hz: f64,
}

impl Default for SensorSpec {
    fn default() -> Self {
        Self {
            gyro_std_dps: 0.5,
            attitude_std_deg: 1.0,
            accel_std: 0.1,
            gnss_velocity_std: 0.3,
            airspeed_std: 1.0,
            vane_std_deg: None,
            ins_rate_hz: 100.0,
            ads_rate_hz: 100.0,
            gnss_rate_hz: 10.0,
        }
    }
}

impl SensorSpec {
    /// Noise-free copy (all standard deviations zero).
    pub fn noise_free(mut self) -> Self {
        self.gyro_std_dps = 0.0;
        self.attitude_std_deg = 0.0;
        self.accel_std = 0.0;
        self.gnss_velocity_std = 0.0;
        self.airspeed_std = 0.0;
        if self.vane_std_deg.is_some() {
            self.vane_std_deg = Some([0.0, 0.0]);
        }
        self
    }

    /// Enables the flow vanes used only by the direct-calculation
    /// baseline; the filter never consumes these channels.
    pub fn with_flow_vanes(mut self, alpha_std_deg: f64, beta_std_deg: f64) -> Self {
        self.vane_std_deg = Some([alpha_std_deg, beta_std_deg]);
        self
    }
}

/// INS rows of one observation frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InsRows {
    /// Body rates [p, q, r], rad/s.
    pub rates: Vector3<f64>,
    /// Attitude, wrapped to (-pi, pi].
    pub attitude: EulerAngles,
    /// Acceleration output, m/s^2 (applied force over mass plus the
    /// body-frame gravity term).
    pub accel: Vector3<f64>,
}

/// One time-stamped multi-rate observation bundle. Absent groups carry no
/// value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementFrame {
    pub t: f64,
    /// GNSS ground velocity, present on the GNSS subgrid only.
    pub gnss_velocity: Option<Vector3<f64>>,
    pub ins: Option<InsRows>,
    /// ADS airspeed, m/s.
    pub airspeed: Option<f64>,
    /// Measured flow angles (alpha, beta), rad; only with vanes enabled.
    pub vanes: Option<(f64, f64)>,
}

/// Seeded measurement generator. One RNG stream per channel group, so
/// toggling one sensor never changes another's noise sequence.
#[derive(Debug, Clone)]
pub struct SensorSimulator {
    pub spec: SensorSpec,
    streams: [ChaCha12Rng; 6],
    gnss_divisor: u64,
}

impl SensorSimulator {
    pub fn new(spec: SensorSpec, seed: u64) -> Self {
        let make = |tag: u64| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(0x53454e53 + tag);
            rng
        };
        let gnss_divisor = (spec.ins_rate_hz / spec.gnss_rate_hz).round() as u64;
        Self {
            spec,
            streams: [make(0), make(1), make(2), make(3), make(4), make(5)],
            gnss_divisor: gnss_divisor.max(1),
        }
    }

    fn noise(&mut self, stream: usize, std: f64) -> f64 {
        // Always draw so the stream position is independent of the std.
        let n: f64 = StandardNormal.sample(&mut self.streams[stream]);
        n * std
    }

    /// Measure the truth at time `t`, which must sit on the INS grid.
    /// `accel_true` is the acceleration output evaluated on the truth.
    pub fn measure(
        &mut self,
        truth: &TruthState,
        wind: &WindVector,
        accel_true: &Vector3<f64>,
        t: f64,
    ) -> Result<MeasurementFrame> {
        let ticks = t * self.spec.ins_rate_hz;
        if (ticks - ticks.round()).abs() > 1e-6 {
            return Err(Error::ClockMisaligned {
                t,
                rate_hz: self.spec.ins_rate_hz,
            });
        }
        let tick = ticks.round() as u64;

        let gyro_std = self.spec.gyro_std_dps.to_radians();
        let att_std = self.spec.attitude_std_deg.to_radians();
        let rates = truth.rates
            + Vector3::new(
                self.noise(0, gyro_std),
                self.noise(0, gyro_std),
                self.noise(0, gyro_std),
            );
        let attitude = EulerAngles::new(
            truth.attitude.yaw + self.noise(1, att_std),
            truth.attitude.pitch + self.noise(1, att_std),
            truth.attitude.roll + self.noise(1, att_std),
        )
        .wrapped();
        let accel = accel_true
            + Vector3::new(
                self.noise(2, self.spec.accel_std),
                self.noise(2, self.spec.accel_std),
                self.noise(2, self.spec.accel_std),
            );

        let gnss_velocity = if tick % self.gnss_divisor == 0 {
            let true_ground =
                truth.attitude.rotation_body_to_inertial() * truth.velocity.vector() + wind;
            Some(
                true_ground
                    + Vector3::new(
                        self.noise(3, self.spec.gnss_velocity_std),
                        self.noise(3, self.spec.gnss_velocity_std),
                        self.noise(3, self.spec.gnss_velocity_std),
                    ),
            )
        } else {
            None
        };

        let airspeed = Some(truth.velocity.airspeed() + self.noise(4, self.spec.airspeed_std));

        let vanes = self.spec.vane_std_deg.map(|stds| {
            let flow = flow_angles(&truth.velocity, 1.0)
                .expect("truth airspeed must stay above the flow-angle floor");
            (
                flow.alpha + self.noise(5, stds[0].to_radians()),
                flow.beta + self.noise(5, stds[1].to_radians()),
            )
        });

        Ok(MeasurementFrame {
            t,
            gnss_velocity,
            ins: Some(InsRows {
                rates,
                attitude,
                accel,
            }),
            airspeed,
            vanes,
        })
    }
}

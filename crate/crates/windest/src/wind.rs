//! Wind field generation: steady wind plus Dryden turbulence, and the
//! four scenario profiles (steady, linear ramp, logistic transition,
//! sinusoidal).
//!
//! All wind vectors are inertial-frame, z down: a negative z component
//! is an updraft.

use nalgebra::Vector3;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// Inertial wind vector, m/s.
pub type WindVector = Vector3<f64>;

/// One wind sample: the deterministic profile value, the turbulent gust,
/// and their sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindSample {
    pub t: f64,
    pub steady: WindVector,
    pub gust: WindVector,
    pub total: WindVector,
}

/// Constant wind profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SteadyProfile {
    pub wind: [f64; 3],
}

impl Default for SteadyProfile {
    fn default() -> Self {
        Self {
            wind: [5.0, 5.0, -1.0],
        }
    }
}

/// Piecewise-linear ramp: constant before `t_start`, linear between
/// `t_start` and `t_end`, constant after.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LinearProfile {
    pub initial: [f64; 3],
    pub rates: [f64; 3],
    pub t_start: f64,
    pub t_end: f64,
}

impl Default for LinearProfile {
    fn default() -> Self {
        Self {
            initial: [2.0, 2.0, -1.0],
            rates: [0.2, 0.1, -0.05],
            t_start: 30.0,
            t_end: 60.0,
        }
    }
}

/// Logistic transition between two levels, centered on `t_center` with
/// slope parameter `rate`. The sigmoid runs unclipped over the whole
/// timeline, which keeps the profile continuous and point-symmetric about
/// its center while the plateaus are approached to within float noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AbruptProfile {
    pub base: [f64; 3],
    pub amplitude: [f64; 3],
    pub rate: f64,
    pub t_center: f64,
}

impl Default for AbruptProfile {
    fn default() -> Self {
        Self {
            base: [2.0, 2.0, -1.0],
            amplitude: [5.0, 5.0, -1.0],
            rate: 0.7,
            t_center: 35.0,
        }
    }
}

/// Sinusoidal profile: the x and z components run on a sine, the y
/// component on a cosine, all at the same angular rate and phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SinusoidalProfile {
    pub mean: [f64; 3],
    pub amplitude: [f64; 3],
    pub angular_rate: f64,
    pub phase: f64,
}

impl Default for SinusoidalProfile {
    fn default() -> Self {
        Self {
            mean: [5.0, 5.0, -1.0],
            amplitude: [2.0, 2.0, 0.5],
            angular_rate: 0.1,
            phase: 0.0,
        }
    }
}

/// The deterministic part of a wind scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum ScenarioProfile {
    Steady(SteadyProfile),
    Linear(LinearProfile),
    Abrupt(AbruptProfile),
    Sinusoidal(SinusoidalProfile),
}

impl ScenarioProfile {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Steady(_) => "steady",
            Self::Linear(_) => "linear",
            Self::Abrupt(_) => "abrupt",
            Self::Sinusoidal(_) => "sinusoidal",
        }
    }

    /// Profile value at time `t` (seconds from scenario start).
    pub fn value(&self, t: f64) -> WindVector {
        match self {
            Self::Steady(p) => Vector3::from(p.wind),
            Self::Linear(p) => {
                let dt = t.clamp(p.t_start, p.t_end) - p.t_start;
                Vector3::new(
                    p.initial[0] + p.rates[0] * dt,
                    p.initial[1] + p.rates[1] * dt,
                    p.initial[2] + p.rates[2] * dt,
                )
            }
            Self::Abrupt(p) => {
                let s = 1.0 / (1.0 + (-p.rate * (t - p.t_center)).exp());
                Vector3::new(
                    p.base[0] + p.amplitude[0] * s,
                    p.base[1] + p.amplitude[1] * s,
                    p.base[2] + p.amplitude[2] * s,
                )
            }
            Self::Sinusoidal(p) => {
                let arg = p.angular_rate * t + p.phase;
                Vector3::new(
                    p.mean[0] + p.amplitude[0] * arg.sin(),
                    p.mean[1] + p.amplitude[1] * arg.cos(),
                    p.mean[2] + p.amplitude[2] * arg.sin(),
                )
            }
        }
    }
}

/// Dryden shaping-filter parameters. Intensities are the stationary
/// per-axis standard deviations; scale lengths set the correlation times
/// through `L / V0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DrydenParams {
    /// Per-axis turbulence intensity, m/s.
    pub intensity: [f64; 3],
    /// Per-axis scale length, m.
    pub scale_length: [f64; 3],
    /// Mean airspeed carried by the shaping filters, m/s.
    pub mean_airspeed: f64,
}

impl Default for DrydenParams {
    fn default() -> Self {
        // Intensities follow the reported ~0.5 m/s disturbance amplitude;
        // the long scale lengths are a calibration choice, not published
        // values (see README).
        Self {
            intensity: [0.5, 0.5, 0.5],
            scale_length: [1500.0, 1500.0, 1500.0],
            mean_airspeed: 16.8,
        }
    }
}

/// Discrete-time Dryden shaping filters driven by seeded white noise.
///
/// The longitudinal channel is the exact sampled first-order
/// Gauss-Markov process; the lateral and vertical channels integrate the
/// standard second-order shaping filter with output gain chosen so the
/// stationary variance equals the configured intensity squared.
#[derive(Debug, Clone)]
pub struct DrydenFilter {
    params: DrydenParams,
    rng: [ChaCha12Rng; 3],
    /// Longitudinal first-order state.
    u_state: f64,
    /// Second-order states for the v and w channels.
    vw_state: [[f64; 2]; 2],
    warmed_up: bool,
}

impl DrydenFilter {
    pub fn new(params: DrydenParams, seed: u64) -> Self {
        let mut make = |tag: u64| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(0x44525944 + tag); // per-axis noise streams
            rng
        };
        Self {
            params,
            rng: [make(0), make(1), make(2)],
            u_state: 0.0,
            vw_state: [[0.0; 2]; 2],
            warmed_up: false,
        }
    }

    /// Advance by `dt` and return the gust vector.
    pub fn step(&mut self, dt: f64) -> WindVector {
        if !self.warmed_up {
            self.initialize_states();
            self.warmed_up = true;
        }
        let p = self.params;
        let v0 = p.mean_airspeed;

        // Longitudinal: exact one-step transition of the OU process.
        let u = {
            let tau = p.scale_length[0] / v0;
            let a = (-dt / tau).exp();
            let noise: f64 = StandardNormal.sample(&mut self.rng[0]);
            self.u_state = a * self.u_state + p.intensity[0] * (1.0 - a * a).sqrt() * noise;
            self.u_state
        };

        // Lateral and vertical: Euler-Maruyama on the second-order filter
        //   x1' = x2, x2' = -x1/tau^2 - 2 x2/tau + n(t)
        // with output c (x1 + sqrt(3) tau x2) / tau^2, c = sigma sqrt(tau).
        let mut out = [0.0; 2];
        for (idx, channel) in [1usize, 2usize].iter().enumerate() {
            let tau = p.scale_length[*channel] / v0;
            let sigma = p.intensity[*channel];
            let noise: f64 = StandardNormal.sample(&mut self.rng[*channel]);
            let [x1, x2] = self.vw_state[idx];
            let x1_next = x1 + dt * x2;
            let x2_next = x2 + dt * (-x1 / (tau * tau) - 2.0 * x2 / tau) + dt.sqrt() * noise;
            self.vw_state[idx] = [x1_next, x2_next];
            let c = sigma * tau.sqrt();
            out[idx] = c * (x1_next + 3.0f64.sqrt() * tau * x2_next) / (tau * tau);
        }

        Vector3::new(u, out[0], out[1])
    }

    /// Draw the initial states from their stationary distributions so the
    /// output is stationary from the first sample.
    fn initialize_states(&mut self) {
        let p = self.params;
        let v0 = p.mean_airspeed;
        let n0: f64 = StandardNormal.sample(&mut self.rng[0]);
        self.u_state = p.intensity[0] * n0;
        for (idx, channel) in [1usize, 2usize].iter().enumerate() {
            let tau = p.scale_length[*channel] / v0;
            // Stationary covariance of (x1, x2) under unit-PSD forcing:
            // var(x1) = tau^3 / 4, var(x2) = tau / 4, cov = 0.
            let n1: f64 = StandardNormal.sample(&mut self.rng[*channel]);
            let n2: f64 = StandardNormal.sample(&mut self.rng[*channel]);
            self.vw_state[idx] = [
                (tau * tau * tau / 4.0).sqrt() * n1,
                (tau / 4.0).sqrt() * n2,
            ];
        }
    }
}

/// A full wind scenario: deterministic profile plus optional turbulence.
#[derive(Debug, Clone)]
pub struct WindField {
    pub profile: ScenarioProfile,
    turbulence: Option<DrydenFilter>,
}

impl WindField {
    pub fn new(profile: ScenarioProfile, turbulence: Option<(DrydenParams, u64)>) -> Self {
        Self {
            profile,
            turbulence: turbulence.map(|(p, seed)| DrydenFilter::new(p, seed)),
        }
    }

    /// Sample the wind at time `t`, advancing the turbulence filter by
    /// `dt`.
    pub fn sample(&mut self, t: f64, dt: f64) -> WindSample {
        let steady = self.profile.value(t);
        let gust = match &mut self.turbulence {
            Some(f) => f.step(dt),
            None => Vector3::zeros(),
        };
        WindSample {
            t,
            steady,
            gust,
            total: steady + gust,
        }
    }
}

//! Closed-form two-ray ground-reflection propagation.
//!
//! A line-of-sight ray and one ray reflected off a perfectly conducting flat
//! ground superimpose at the receiver. Everything here is a pure function of
//! the geometry, the carrier(s) and the transmit power. Formulas are written
//! in angular frequency; the public constructors take hertz.
//!
//! Several expressions are evaluated in an algebraically equivalent but
//! cancellation-free form (`l_ref - l_los = 4 h_tx h_rx / (l_los + l_ref)` and
//! `1 - cos x = 2 sin^2(x / 2)`), so receive powers stay non-negative and
//! accurate deep inside interference nulls and at very large distances.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// m/s
    pub speed_of_light: f64,
}

impl PhysicalConstants {
    pub fn new(speed_of_light: f64) -> Result<Self> {
        if !(speed_of_light.is_finite() && speed_of_light > 0.0) {
            return Err(Error::InvalidSpeedOfLight(speed_of_light));
        }
        Ok(Self { speed_of_light })
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            speed_of_light: SPEED_OF_LIGHT,
        }
    }
}

fn check_height(h: f64) -> Result<f64> {
    if h.is_finite() && h > 0.0 {
        Ok(h)
    } else {
        Err(Error::InvalidHeight(h))
    }
}

/// Transmitter and receiver antenna heights above the ground, meters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneGeometry {
    h_tx: f64,
    h_rx: f64,
}

impl SceneGeometry {
    pub fn new(h_tx: f64, h_rx: f64) -> Result<Self> {
        Ok(Self {
            h_tx: check_height(h_tx)?,
            h_rx: check_height(h_rx)?,
        })
    }

    pub fn h_tx(&self) -> f64 {
        self.h_tx
    }

    pub fn h_rx(&self) -> f64 {
        self.h_rx
    }

    /// Same scene with the two antennas exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            h_tx: self.h_rx,
            h_rx: self.h_tx,
        }
    }
}

/// A carrier frequency. Stored in hertz, used as `omega = 2 pi f`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct CarrierFrequency(f64);

impl CarrierFrequency {
    pub fn from_hz(hz: f64) -> Result<Self> {
        if hz.is_finite() && hz > 0.0 {
            Ok(Self(hz))
        } else {
            Err(Error::InvalidFrequency(hz))
        }
    }

    /// From an angular frequency in rad/s.
    pub fn from_angular(omega: f64) -> Result<Self> {
        if omega.is_finite() && omega > 0.0 {
            Ok(Self(omega / TAU))
        } else {
            Err(Error::InvalidFrequency(omega))
        }
    }

    pub fn hz(&self) -> f64 {
        self.0
    }

    /// Angular frequency, rad/s.
    pub fn omega(&self) -> f64 {
        TAU * self.0
    }
}

impl TryFrom<f64> for CarrierFrequency {
    type Error = Error;

    fn try_from(hz: f64) -> Result<Self> {
        Self::from_hz(hz)
    }
}

impl From<CarrierFrequency> for f64 {
    fn from(f: CarrierFrequency) -> f64 {
        f.0
    }
}

/// Two distinct carriers, always stored with `low < high`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrequencyPair {
    low: CarrierFrequency,
    high: CarrierFrequency,
}

impl FrequencyPair {
    /// Accepts the carriers in either order.
    pub fn new(a: CarrierFrequency, b: CarrierFrequency) -> Result<Self> {
        if a.hz() == b.hz() {
            return Err(Error::EqualFrequencies(a.hz()));
        }
        let (low, high) = if a.hz() < b.hz() { (a, b) } else { (b, a) };
        Ok(Self { low, high })
    }

    pub fn from_hz(a: f64, b: f64) -> Result<Self> {
        Self::new(CarrierFrequency::from_hz(a)?, CarrierFrequency::from_hz(b)?)
    }

    pub fn low(&self) -> CarrierFrequency {
        self.low
    }

    pub fn high(&self) -> CarrierFrequency {
        self.high
    }

    /// Angular spacing `omega_high - omega_low`, rad/s.
    pub fn delta_omega(&self) -> f64 {
        self.high.omega() - self.low.omega()
    }

    /// The spacing as a carrier of its own. Null distances of the envelope
    /// lower bound are the single-carrier null distances of this frequency.
    pub fn spacing(&self) -> CarrierFrequency {
        CarrierFrequency(self.high.hz() - self.low.hz())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathLengths {
    /// Line-of-sight path, m.
    pub los: f64,
    /// Ground-reflected path, m.
    pub reflected: f64,
}

impl PathLengths {
    /// `reflected - los`, evaluated without cancellation.
    pub fn difference(&self, geometry: &SceneGeometry) -> f64 {
        4.0 * geometry.h_tx * geometry.h_rx / (self.los + self.reflected)
    }
}

/// A transmitter/receiver pair over flat ground.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoRayLink {
    geometry: SceneGeometry,
    constants: PhysicalConstants,
}

impl TwoRayLink {
    pub fn new(geometry: SceneGeometry) -> Self {
        Self::with_constants(geometry, PhysicalConstants::default())
    }

    pub fn with_constants(geometry: SceneGeometry, constants: PhysicalConstants) -> Self {
        Self { geometry, constants }
    }

    pub fn geometry(&self) -> &SceneGeometry {
        &self.geometry
    }

    pub fn speed_of_light(&self) -> f64 {
        self.constants.speed_of_light
    }

    pub fn path_lengths(&self, d: f64) -> Result<PathLengths> {
        if !(d.is_finite() && d >= 0.0) {
            return Err(Error::InvalidDistance(d));
        }
        let SceneGeometry { h_tx, h_rx } = self.geometry;
        Ok(PathLengths {
            los: (h_tx - h_rx).hypot(d),
            reflected: (h_tx + h_rx).hypot(d),
        })
    }

    /// Phase difference between reflected and direct ray, radians.
    pub fn phase_shift(&self, d: f64, freq: CarrierFrequency) -> Result<f64> {
        let paths = self.path_lengths(d)?;
        Ok(self.phase_of(&paths, freq.omega()))
    }

    fn phase_of(&self, paths: &PathLengths, omega: f64) -> f64 {
        omega / self.speed_of_light() * paths.difference(&self.geometry)
    }

    /// Limit of the phase shift as `d -> 0`; the supremum over all distances.
    pub fn max_phase_shift(&self, freq: CarrierFrequency) -> f64 {
        let h_min = self.geometry.h_tx.min(self.geometry.h_rx);
        2.0 * freq.omega() * h_min / self.speed_of_light()
    }

    /// Number of destructive-interference minima over `d > 0`.
    pub fn k_max(&self, freq: CarrierFrequency) -> u32 {
        (self.max_phase_shift(freq) / TAU).floor() as u32
    }

    /// Distances `d_k`, `k = 1..=k_max`, where the phase shift equals `2 pi k`.
    /// Index 0 holds `d_1`, the largest distance.
    pub fn null_distances(&self, freq: CarrierFrequency) -> Vec<f64> {
        let SceneGeometry { h_tx, h_rx } = self.geometry;
        // a = c pi k / omega; both factors below are <= 0 for k <= k_max.
        let c_over_omega = self.speed_of_light() / freq.omega();
        (1..=self.k_max(freq))
            .map(|k| {
                let a = c_over_omega * PI * f64::from(k);
                let a2 = a * a;
                let product = (a2 - h_rx * h_rx) * (a2 - h_tx * h_tx);
                product.max(0.0).sqrt() / a
            })
            .collect()
    }

    /// Receive power on one carrier at transmit power `tx_power`, watts.
    /// Antenna gains are unity and the ground reflection coefficient is -1.
    pub fn receive_power(&self, d: f64, freq: CarrierFrequency, tx_power: f64) -> Result<f64> {
        let paths = self.nonsingular_paths(d)?;
        let omega = freq.omega();
        let (l, r) = (paths.los, paths.reflected);
        let inv_diff = paths.difference(&self.geometry) / (l * r);
        let half = 0.5 * self.phase_of(&paths, omega);
        let scale = self.speed_of_light() / (2.0 * omega);
        Ok(tx_power * scale * scale * (inv_diff * inv_diff + 4.0 * half.sin().powi(2) / (l * r)))
    }

    /// Sum receive power over both carriers of `pair`, the transmit power
    /// split evenly between them.
    pub fn sum_power(&self, d: f64, pair: &FrequencyPair, tx_power: f64) -> Result<f64> {
        let paths = self.nonsingular_paths(d)?;
        let (l, r) = (paths.los, paths.reflected);
        let (w1, w2) = (pair.low.omega(), pair.high.omega());
        let (g1, g2) = (1.0 / (w1 * w1), 1.0 / (w2 * w2));
        let inv_diff = paths.difference(&self.geometry) / (l * r);
        let s1 = (0.5 * self.phase_of(&paths, w1)).sin().powi(2);
        let s2 = (0.5 * self.phase_of(&paths, w2)).sin().powi(2);
        let c_half = 0.5 * self.speed_of_light();
        Ok(0.5 * tx_power * c_half * c_half * ((g1 + g2) * inv_diff * inv_diff + 4.0 / (l * r) * (g1 * s1 + g2 * s2)))
    }

    /// Lower envelope of [`sum_power`](Self::sum_power): the two cosine terms
    /// are replaced by the magnitude of their analytic signal, which
    /// oscillates with the carrier spacing only.
    pub fn sum_power_lower_bound(&self, d: f64, pair: &FrequencyPair, tx_power: f64) -> Result<f64> {
        let paths = self.nonsingular_paths(d)?;
        let (l, r) = (paths.los, paths.reflected);
        let (w1, w2) = (pair.low.omega(), pair.high.omega());
        let (g1, g2) = (1.0 / (w1 * w1), 1.0 / (w2 * w2));
        let sum = g1 + g2;
        let inv_diff = paths.difference(&self.geometry) / (l * r);
        let beat = self.phase_of(&paths, pair.delta_omega());
        let envelope = (g1 * g1 + g2 * g2 + 2.0 * beat.cos() * g1 * g2).max(0.0).sqrt();
        // sum - envelope, without cancellation
        let gap = 4.0 * g1 * g2 * (0.5 * beat).sin().powi(2) / (sum + envelope);
        let c_half = 0.5 * self.speed_of_light();
        Ok(0.5 * tx_power * c_half * c_half * (sum * inv_diff * inv_diff + 2.0 / (l * r) * gap))
    }

    fn nonsingular_paths(&self, d: f64) -> Result<PathLengths> {
        let paths = self.path_lengths(d)?;
        if paths.los == 0.0 {
            return Err(Error::Singularity);
        }
        Ok(paths)
    }
}

/// `10 log10(p / reference)`. A zero power maps to negative infinity.
pub fn to_decibel(p: f64, reference: f64) -> f64 {
    10.0 * (p / reference).log10()
}

/// Inverse of [`to_decibel`].
pub fn from_decibel(db: f64, reference: f64) -> f64 {
    reference * 10f64.powf(db / 10.0)
}

/// Evaluates the squared analytic-signal magnitude of
/// `s(t) = cos(w1 t)/w1^2 + cos(w2 t)/w2^2` two ways: directly from the
/// real and imaginary parts, and from the closed form
/// `1/w1^4 + 1/w2^4 + 2 cos((w2 - w1) t)/(w1^2 w2^2)`.
///
/// Returns the absolute difference normalised by the envelope peak
/// `(1/w1^2 + 1/w2^2)^2`, which keeps the residual meaningful where both
/// sides approach zero.
pub fn envelope_identity_check(omega1: f64, omega2: f64, t: f64) -> f64 {
    let (g1, g2) = (1.0 / (omega1 * omega1), 1.0 / (omega2 * omega2));
    let (a, b) = (omega1 * t, omega2 * t);
    let re = a.cos() * g1 + b.cos() * g2;
    let im = a.sin() * g1 + b.sin() * g2;
    let direct = re * re + im * im;
    let closed = g1 * g1 + g2 * g2 + 2.0 * ((omega2 - omega1) * t).cos() * g1 * g2;
    let peak = (g1 + g2) * (g1 + g2);
    (direct - closed).abs() / peak
}

use std::f64::consts::PI;

use crate::units::{amplitude_db, wavelength, SPEED_OF_LIGHT};

use super::{positive, RegionError};

/// Largest `l/λ` for which the infinitesimal-monopole formula is used.
pub const SMALL_ANTENNA_LIMIT: f64 = 0.25;

pub const DEFAULT_BODY_HEIGHT: f64 = 1.8;
pub const DEFAULT_BODY_Q: f64 = 3.0;
/// Electrode treated as a monopole of its diameter.
pub const DEFAULT_ELECTRODE_LENGTH: f64 = 0.05;
pub const DEFAULT_DEVICE_Q: f64 = 3.0;

/// Body-pair peak gain placing the open-air EQS→EM crossover at 1 MHz
/// (see [`super::calibrate_body_peak`]).
pub const CALIBRATED_BODY_PEAK_DB: f64 = 3.854911;
/// Device-pair peak gain placing the body→device crossover at 300 MHz
/// (see [`super::calibrate_device_peak`]).
pub const CALIBRATED_DEVICE_PEAK_DB: f64 = -2.853338;

/// Radiation resistance of an electrically short monopole,
/// `80·π²·(l/λ)²` ohms.
pub fn monopole_rad_resistance(length_m: f64, freq_hz: f64) -> Result<f64, RegionError> {
    positive("length", length_m)?;
    positive("frequency", freq_hz)?;
    let ratio = length_m / wavelength(freq_hz);
    if ratio > SMALL_ANTENNA_LIMIT {
        return Err(RegionError::OutsideSmallAntennaRange {
            ratio,
            limit: SMALL_ANTENNA_LIMIT,
        });
    }
    Ok(80.0 * PI * PI * ratio * ratio)
}

/// Relative free-space gain `20·log10(λ/d)` dB (zero at `d = λ`).
pub fn friis_gain(distance_m: f64, freq_hz: f64) -> Result<f64, RegionError> {
    positive("distance", distance_m)?;
    positive("frequency", freq_hz)?;
    Ok(amplitude_db(wavelength(freq_hz) / distance_m))
}

/// Pair response of two identical resonant antennas, dB relative to the peak.
///
/// Each antenna contributes `P(x) = x² / ((1 − x²)² + (x/Q)²)` with
/// `x = f/f_res`. Below resonance `P` follows the monopole radiation
/// resistance (`∝ (l/λ)²`, +20 dB/decade); the pair squares it (+40
/// dB/decade). `P` peaks at exactly `x = 1` with value `Q²` and falls as
/// `x⁻²` above.
pub fn resonant_pair_response_db(freq_hz: f64, resonance_hz: f64, q: f64) -> f64 {
    let x = freq_hz / resonance_hz;
    let x2 = x * x;
    let p = x2 / ((1.0 - x2).powi(2) + x2 / (q * q));
    20.0 * (p / (q * q)).log10()
}

/// Two standing subjects acting as transmitting and receiving monopoles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmBodyModel {
    /// Body height (monopole length), meters.
    pub height: f64,
    pub q: f64,
    /// Pair gain at resonance, dB. `-inf` disables the mechanism.
    pub peak_gain_db: f64,
}

impl Default for EmBodyModel {
    fn default() -> Self {
        EmBodyModel {
            height: DEFAULT_BODY_HEIGHT,
            q: DEFAULT_BODY_Q,
            peak_gain_db: CALIBRATED_BODY_PEAK_DB,
        }
    }
}

impl EmBodyModel {
    pub fn validate(&self) -> Result<(), RegionError> {
        positive("body height", self.height)?;
        positive("body Q", self.q)?;
        if self.peak_gain_db.is_nan() || self.peak_gain_db == f64::INFINITY {
            return Err(RegionError::InvalidInput {
                name: "body peak gain",
                value: self.peak_gain_db,
            });
        }
        Ok(())
    }

    /// Quarter-wave resonance `c / (4h)`.
    pub fn resonance(&self) -> f64 {
        SPEED_OF_LIGHT / (4.0 * self.height)
    }
}

/// Body-to-body EM coupling gain in dB.
pub fn body_em_pair_gain(model: &EmBodyModel, freq_hz: f64) -> f64 {
    model.peak_gain_db + resonant_pair_response_db(freq_hz, model.resonance(), model.q)
}

/// Electrode-to-electrode coupling between two devices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceModel {
    /// Electrode length (monopole approximation), meters.
    pub electrode_length: f64,
    pub q: f64,
    /// Pair gain at resonance, dB. `-inf` disables the mechanism.
    pub peak_gain_db: f64,
}

impl Default for DeviceModel {
    fn default() -> Self {
        DeviceModel {
            electrode_length: DEFAULT_ELECTRODE_LENGTH,
            q: DEFAULT_DEVICE_Q,
            peak_gain_db: CALIBRATED_DEVICE_PEAK_DB,
        }
    }
}

impl DeviceModel {
    pub fn validate(&self) -> Result<(), RegionError> {
        positive("electrode length", self.electrode_length)?;
        positive("device Q", self.q)?;
        if self.peak_gain_db.is_nan() || self.peak_gain_db == f64::INFINITY {
            return Err(RegionError::InvalidInput {
                name: "device peak gain",
                value: self.peak_gain_db,
            });
        }
        Ok(())
    }

    /// Quarter-wave resonance `c / (4·l_e)`.
    pub fn resonance(&self) -> f64 {
        SPEED_OF_LIGHT / (4.0 * self.electrode_length)
    }
}

pub fn device_pair_gain(model: &DeviceModel, freq_hz: f64) -> f64 {
    model.peak_gain_db + resonant_pair_response_db(freq_hz, model.resonance(), model.q)
}

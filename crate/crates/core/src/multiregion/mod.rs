//! 100 kHz – 1 GHz inter-body coupling: the EQS circuit gain stitched with
//! parametric models for body-as-antenna and electrode-as-antenna coupling.

mod antenna;
mod regions;

use thiserror::Error;

use crate::channel::ChannelError;
use crate::circuit::CircuitError;

pub use antenna::{
    body_em_pair_gain, device_pair_gain, friis_gain, monopole_rad_resistance,
    resonant_pair_response_db, DeviceModel, EmBodyModel, CALIBRATED_BODY_PEAK_DB,
    CALIBRATED_DEVICE_PEAK_DB, DEFAULT_BODY_HEIGHT, DEFAULT_BODY_Q, DEFAULT_DEVICE_Q,
    DEFAULT_ELECTRODE_LENGTH, SMALL_ANTENNA_LIMIT,
};
pub use regions::{
    calibrate_body_peak, calibrate_device_peak, classify_region, crossover_frequency,
    total_response, Mechanism, RegionConfig, RegionLabel, BODY_CROSSOVER_ANCHOR_HZ,
    DEVICE_CROSSOVER_ANCHOR_HZ, SMALL_MONOPOLE_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegionError {
    #[error("{name} must be positive and finite, got {value}")]
    InvalidInput { name: &'static str, value: f64 },

    #[error("l/λ = {ratio:.4} exceeds the small-antenna limit {limit}; use the resonant model")]
    OutsideSmallAntennaRange { ratio: f64, limit: f64 },

    #[error("frequency grid does not match the EQS sweep")]
    GridMismatch,

    #[error("{from} and {to} never cross between 100 kHz and 1 GHz")]
    NeverCrosses { from: RegionLabel, to: RegionLabel },

    #[error(transparent)]
    Channel(#[from] ChannelError),

    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64, RegionError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(RegionError::InvalidInput { name, value })
    }
}

//! Lumped EQS body-channel circuits and the inter-body coupling model.
//!
//! [`build_intra_body`] and [`build_inter_body`] turn a parameter set into a
//! netlist solved by [`crate::circuit`]. The MNA result is the reference; the
//! closed-form ratio `C_C / C_Body` ([`extra_loss_db`]) is the cross-check.

mod builder;
mod calibrate;
mod coupling;
mod params;

use thiserror::Error;

use crate::circuit::CircuitError;

pub use builder::{build_inter_body, build_intra_body, ChannelCircuit, EQS_REFERENCE_FREQ};
pub use calibrate::{
    calibrate_anechoic_boost, calibrate_return_path_scale, ANECHOIC_EQS_RISE_DB,
    CALIBRATED_RETURN_PATH_SCALE, CALIBRATION_OPEN_AIR_INTER_DB, DEFAULT_ANECHOIC_BOOST,
};
pub use coupling::{
    coupling_coefficient, extra_loss_db, fit_coupling_model, CouplingCapModel, ANCHOR_1M,
    ANCHOR_5M, DEFAULT_D0,
};
pub use params::{
    BodyChannelParams, Environment, InterBodyParams, LoadSpec, DEFAULT_C_BODY, DEFAULT_C_G,
    DEFAULT_LOAD_CAPACITANCE, DEFAULT_RESISTIVE_LOAD, DEFAULT_R_B, DEFAULT_R_S,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("parameter {name} must be positive and finite, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error(
        "coupling capacitance {c_c:e} F exceeds the receiving body's capacitance {c_body2:e} F"
    )]
    CouplingExceedsBody { c_c: f64, c_body2: f64 },

    #[error("need at least two coupling anchors, got {0}")]
    TooFewAnchors(usize),

    #[error("coupling anchors must have distinct distances")]
    DegenerateAnchors,

    #[error(
        "coupling fit is not strictly decreasing with a non-negative floor (a = {a:e}, b = {b:e})"
    )]
    InvalidFit { a: f64, b: f64 },

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64, ChannelError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(ChannelError::InvalidParameter { name, value })
    }
}

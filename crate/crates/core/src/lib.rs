//! Channel modeling and security analysis for electro-quasistatic human body
//! communication (EQS-HBC).
//!
//! - [`circuit`]: netlists and complex MNA frequency sweeps.
//! - [`channel`]: canonical intra-body and inter-body circuits, coupling model.
//! - [`multiregion`]: stitched 100 kHz – 1 GHz response and region labels.
//! - [`risk`]: snooper SNR and co-channel interference.
//! - [`fcc`]: unintentional-radiator limits.
//! - [`config`]: TOML scenario files.

pub mod channel;
pub mod circuit;
pub mod config;
pub mod fcc;
pub mod multiregion;
pub mod risk;
pub mod units;

pub use channel::{
    BodyChannelParams, ChannelCircuit, CouplingCapModel, Environment, InterBodyParams, LoadSpec,
};
pub use circuit::{FrequencyGrid, Netlist, NodeId, SweepResult};
pub use config::Config;
pub use multiregion::{RegionConfig, RegionLabel};
pub use risk::{AttackScenario, InterferenceScenario};

//! TOML scenario files shared by every analysis.
//!
//! Every key is optional; a missing key takes the calibrated default. Unknown
//! keys are rejected.
//!
//! ```toml
//! scenario = "inter_body"
//! grid = "1e5:1e9:200log"
//!
//! [body]
//! environment = "anechoic"
//!
//! [load]
//! kind = "resistive"
//! value = 50.0
//!
//! [coupling]
//! distance = 1.0
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::channel::{
    build_inter_body, build_intra_body, fit_coupling_model, BodyChannelParams, ChannelCircuit,
    ChannelError, CouplingCapModel, Environment, InterBodyParams, LoadSpec, ANCHOR_1M, ANCHOR_5M,
    CALIBRATED_RETURN_PATH_SCALE, DEFAULT_ANECHOIC_BOOST, DEFAULT_C_BODY, DEFAULT_C_G, DEFAULT_D0,
    DEFAULT_LOAD_CAPACITANCE, DEFAULT_RESISTIVE_LOAD, DEFAULT_R_B, DEFAULT_R_S,
};
use crate::circuit::{CircuitError, FrequencyGrid};
use crate::fcc::{
    FccError, FieldDecayModel, CALIBRATED_ANCHOR_FIELD, DEFAULT_ANCHOR_DISTANCE,
    DEFAULT_DECAY_EXPONENT,
};
use crate::multiregion::{
    DeviceModel, EmBodyModel, RegionConfig, RegionError, CALIBRATED_BODY_PEAK_DB,
    CALIBRATED_DEVICE_PEAK_DB, DEFAULT_BODY_HEIGHT, DEFAULT_BODY_Q, DEFAULT_DEVICE_Q,
    DEFAULT_ELECTRODE_LENGTH,
};
use crate::risk::{AttackScenario, InterferenceScenario, RiskError, DEFAULT_SNR_THRESHOLD_DB};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("invalid config: {0}")]
    Parse(String),

    #[error(transparent)]
    Channel(#[from] ChannelError),

    #[error(transparent)]
    Circuit(#[from] CircuitError),

    #[error(transparent)]
    Region(#[from] RegionError),

    #[error(transparent)]
    Risk(#[from] RiskError),

    #[error(transparent)]
    Fcc(#[from] FccError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    IntraBody,
    #[default]
    InterBody,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvironmentKind {
    #[default]
    OpenAir,
    Anechoic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoadKind {
    #[default]
    Capacitive,
    Resistive,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BodySection {
    pub c_g_tx: f64,
    pub c_g_rx: f64,
    pub c_body: f64,
    pub c_body2: Option<f64>,
    pub r_b: f64,
    pub r_s: f64,
    /// Multiplies both return-path capacitances.
    pub return_path_scale: f64,
    pub environment: EnvironmentKind,
    pub anechoic_boost: f64,
}

impl Default for BodySection {
    fn default() -> Self {
        BodySection {
            c_g_tx: DEFAULT_C_G,
            c_g_rx: DEFAULT_C_G,
            c_body: DEFAULT_C_BODY,
            c_body2: None,
            r_b: DEFAULT_R_B,
            r_s: DEFAULT_R_S,
            return_path_scale: CALIBRATED_RETURN_PATH_SCALE,
            environment: EnvironmentKind::OpenAir,
            anechoic_boost: DEFAULT_ANECHOIC_BOOST,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LoadSection {
    pub kind: LoadKind,
    /// Ohms or farads; the kind's default when absent.
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CouplingSection {
    /// `[distance_m, capacitance_F]` pairs.
    pub anchors: Vec<[f64; 2]>,
    pub d0: f64,
    /// Body separation for inter-body scenarios, meters.
    pub distance: f64,
}

impl Default for CouplingSection {
    fn default() -> Self {
        CouplingSection {
            anchors: vec![[ANCHOR_1M.0, ANCHOR_1M.1], [ANCHOR_5M.0, ANCHOR_5M.1]],
            d0: DEFAULT_D0,
            distance: ANCHOR_1M.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MultiregionSection {
    pub body_height: f64,
    pub body_q: f64,
    pub body_peak_gain_db: f64,
    pub electrode_length: f64,
    pub device_q: f64,
    pub device_peak_gain_db: f64,
}

impl Default for MultiregionSection {
    fn default() -> Self {
        MultiregionSection {
            body_height: DEFAULT_BODY_HEIGHT,
            body_q: DEFAULT_BODY_Q,
            body_peak_gain_db: CALIBRATED_BODY_PEAK_DB,
            electrode_length: DEFAULT_ELECTRODE_LENGTH,
            device_q: DEFAULT_DEVICE_Q,
            device_peak_gain_db: CALIBRATED_DEVICE_PEAK_DB,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AttackSection {
    pub snr_intended_db: f64,
    pub attacker_distance: f64,
    pub snr_threshold_db: f64,
    /// Distance used for the safe-SNR report, meters.
    pub protect_distance: f64,
}

impl Default for AttackSection {
    fn default() -> Self {
        AttackSection {
            snr_intended_db: 10.0,
            attacker_distance: 1.0,
            snr_threshold_db: DEFAULT_SNR_THRESHOLD_DB,
            protect_distance: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InterferenceSection {
    pub v_sig_user: f64,
    /// `[amplitude_V, distance_m]` pairs.
    pub interferers: Vec<[f64; 2]>,
    pub sir_min_db: f64,
}

impl Default for InterferenceSection {
    fn default() -> Self {
        InterferenceSection {
            v_sig_user: 1.0,
            interferers: vec![[1.0, 1.0]],
            sir_min_db: 6.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FccSection {
    pub anchor_field: f64,
    pub anchor_distance: f64,
    pub exponent: f64,
}

impl Default for FccSection {
    fn default() -> Self {
        FccSection {
            anchor_field: CALIBRATED_ANCHOR_FIELD,
            anchor_distance: DEFAULT_ANCHOR_DISTANCE,
            exponent: DEFAULT_DECAY_EXPONENT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub scenario: ScenarioKind,
    /// `start:stop:N[log|lin]`.
    pub grid: Option<String>,
    pub body: BodySection,
    pub load: LoadSection,
    pub coupling: CouplingSection,
    pub multiregion: MultiregionSection,
    pub attack: AttackSection,
    pub interference: InterferenceSection,
    pub fcc: FccSection,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn environment(&self) -> Environment {
        match self.body.environment {
            EnvironmentKind::OpenAir => Environment::OpenAir,
            EnvironmentKind::Anechoic => Environment::Anechoic {
                return_path_boost: self.body.anechoic_boost,
            },
        }
    }

    pub fn load_spec(&self) -> LoadSpec {
        match (self.load.kind, self.load.value) {
            (LoadKind::Capacitive, v) => {
                LoadSpec::Capacitive(v.unwrap_or(DEFAULT_LOAD_CAPACITANCE))
            }
            (LoadKind::Resistive, v) => LoadSpec::Resistive(v.unwrap_or(DEFAULT_RESISTIVE_LOAD)),
        }
    }

    pub fn body_params(&self) -> Result<BodyChannelParams, ConfigError> {
        let b = &self.body;
        let params = BodyChannelParams {
            c_g_tx: b.c_g_tx,
            c_g_rx: b.c_g_rx,
            c_body: b.c_body,
            r_b: b.r_b,
            r_s: b.r_s,
            load: self.load_spec(),
            environment: self.environment(),
        }
        .with_return_path_scale(b.return_path_scale);
        params.validate()?;
        Ok(params)
    }

    pub fn coupling_model(&self) -> Result<CouplingCapModel, ConfigError> {
        let anchors: Vec<(f64, f64)> = self.coupling.anchors.iter().map(|&[d, c]| (d, c)).collect();
        Ok(fit_coupling_model(&anchors, self.coupling.d0)?)
    }

    pub fn inter_body_params(&self) -> Result<InterBodyParams, ConfigError> {
        let base = self.body_params()?;
        let c_c = self.coupling_model()?.capacitance(self.coupling.distance);
        let mut params = InterBodyParams::new(base, c_c);
        if let Some(c2) = self.body.c_body2 {
            params.c_body2 = c2;
        }
        Ok(params)
    }

    /// Channel circuit for the configured scenario.
    pub fn channel(&self) -> Result<ChannelCircuit, ConfigError> {
        Ok(match self.scenario {
            ScenarioKind::IntraBody => build_intra_body(&self.body_params()?)?,
            ScenarioKind::InterBody => build_inter_body(&self.inter_body_params()?)?,
        })
    }

    pub fn grid(&self) -> Result<FrequencyGrid, ConfigError> {
        match &self.grid {
            Some(text) => Ok(text.parse()?),
            None => Ok(FrequencyGrid::default()),
        }
    }

    pub fn em_model(&self) -> EmBodyModel {
        let m = &self.multiregion;
        EmBodyModel {
            height: m.body_height,
            q: m.body_q,
            peak_gain_db: m.body_peak_gain_db,
        }
    }

    pub fn device_model(&self) -> DeviceModel {
        let m = &self.multiregion;
        DeviceModel {
            electrode_length: m.electrode_length,
            q: m.device_q,
            peak_gain_db: m.device_peak_gain_db,
        }
    }

    pub fn region_config(&self) -> Result<RegionConfig, ConfigError> {
        Ok(RegionConfig::new(
            self.channel()?,
            self.em_model(),
            self.device_model(),
        )?)
    }

    pub fn attack_scenario(&self) -> Result<AttackScenario, ConfigError> {
        let a = &self.attack;
        let s = AttackScenario {
            snr_intended_db: a.snr_intended_db,
            attacker_distance: a.attacker_distance,
            snr_threshold_db: a.snr_threshold_db,
            coupling: self.coupling_model()?,
            c_body: self.body.c_body,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn interference_scenario(&self) -> Result<InterferenceScenario, ConfigError> {
        let i = &self.interference;
        let s = InterferenceScenario {
            v_sig_user: i.v_sig_user,
            interferers: i.interferers.iter().map(|&[v, d]| (v, d)).collect(),
            coupling: self.coupling_model()?,
            c_body: self.body.c_body,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn field_model(&self) -> Result<FieldDecayModel, ConfigError> {
        let f = &self.fcc;
        let m = FieldDecayModel {
            anchor_field: f.anchor_field,
            anchor_distance: f.anchor_distance,
            exponent: f.exponent,
        };
        m.validate()?;
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_calibrated_default() {
        let cfg = Config::from_toml("").unwrap();
        assert_eq!(cfg.body_params().unwrap(), BodyChannelParams::calibrated());
        assert_eq!(
            cfg.coupling_model().unwrap(),
            CouplingCapModel::fitted_default()
        );
        assert_eq!(
            cfg.region_config().unwrap(),
            RegionConfig::calibrated(Environment::OpenAir).unwrap()
        );
        assert_eq!(cfg.field_model().unwrap(), FieldDecayModel::default());
        assert_eq!(cfg.grid().unwrap(), FrequencyGrid::default());
    }

    #[test]
    fn sections_override() {
        let cfg = Config::from_toml(
            r#"
            scenario = "intra_body"
            grid = "1e5:1e6:11lin"
            [body]
            environment = "anechoic"
            anechoic_boost = 3.0
            [load]
            kind = "resistive"
            [multiregion]
            body_peak_gain_db = -inf
            "#,
        )
        .unwrap();
        assert_eq!(cfg.scenario, ScenarioKind::IntraBody);
        assert_eq!(
            cfg.environment(),
            Environment::Anechoic {
                return_path_boost: 3.0
            }
        );
        assert_eq!(cfg.load_spec(), LoadSpec::Resistive(DEFAULT_RESISTIVE_LOAD));
        assert_eq!(cfg.grid().unwrap().len(), 11);
        assert_eq!(cfg.em_model().peak_gain_db, f64::NEG_INFINITY);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(matches!(
            Config::from_toml("colour = 1"),
            Err(ConfigError::Parse(_))
        ));
        assert!(matches!(
            Config::from_toml("[body]\nheight = 2"),
            Err(ConfigError::Parse(_))
        ));
        let cfg = Config::from_toml("[body]\nc_body = -1.0").unwrap();
        assert!(matches!(cfg.body_params(), Err(ConfigError::Channel(_))));
        let cfg = Config::from_toml("[coupling]\nanchors = [[1.0, 2e-11]]").unwrap();
        assert!(cfg.coupling_model().is_err());
    }
}

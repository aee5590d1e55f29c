use super::calibrate::{CALIBRATED_RETURN_PATH_SCALE, DEFAULT_ANECHOIC_BOOST};
use super::{require_positive, ChannelError};

/// Body-to-earth capacitance of an adult, farads.
pub const DEFAULT_C_BODY: f64 = 150e-12;
/// Return-path (ground plate to earth) capacitance of a watch-sized device.
pub const DEFAULT_C_G: f64 = 0.6e-12;
pub const DEFAULT_R_S: f64 = 50.0;
/// Forward-path body resistance. Return-path impedances dominate in the EQS
/// band, so the exact value barely moves the gain.
pub const DEFAULT_R_B: f64 = 1e3;
/// High-impedance receiver termination.
pub const DEFAULT_LOAD_CAPACITANCE: f64 = 1e-12;
/// Standard RF termination.
pub const DEFAULT_RESISTIVE_LOAD: f64 = 50.0;

/// Receiver termination between electrode and ground plate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LoadSpec {
    /// Ohms.
    Resistive(f64),
    /// Farads.
    Capacitive(f64),
}

impl LoadSpec {
    pub fn value(self) -> f64 {
        match self {
            LoadSpec::Resistive(v) | LoadSpec::Capacitive(v) => v,
        }
    }

    pub fn capacitive() -> Self {
        LoadSpec::Capacitive(DEFAULT_LOAD_CAPACITANCE)
    }

    pub fn resistive() -> Self {
        LoadSpec::Resistive(DEFAULT_RESISTIVE_LOAD)
    }
}

/// Surroundings of the subjects.
///
/// A grounded enclosure strengthens the return path; it is modeled by
/// scaling both return-path capacitances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Environment {
    OpenAir,
    Anechoic { return_path_boost: f64 },
}

impl Environment {
    /// Anechoic chamber with the calibrated return-path boost.
    pub fn anechoic() -> Self {
        Environment::Anechoic {
            return_path_boost: DEFAULT_ANECHOIC_BOOST,
        }
    }

    pub fn return_path_factor(self) -> f64 {
        match self {
            Environment::OpenAir => 1.0,
            Environment::Anechoic { return_path_boost } => return_path_boost,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Environment::OpenAir => "open_air",
            Environment::Anechoic { .. } => "anechoic",
        }
    }
}

/// Parameters of the canonical single-body EQS channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyChannelParams {
    pub c_g_tx: f64,
    pub c_g_rx: f64,
    pub c_body: f64,
    pub r_b: f64,
    pub r_s: f64,
    pub load: LoadSpec,
    pub environment: Environment,
}

impl Default for BodyChannelParams {
    /// Coupler-plate return path (0.6 pF), 150 pF body, 1 pF load, open air.
    fn default() -> Self {
        BodyChannelParams {
            c_g_tx: DEFAULT_C_G,
            c_g_rx: DEFAULT_C_G,
            c_body: DEFAULT_C_BODY,
            r_b: DEFAULT_R_B,
            r_s: DEFAULT_R_S,
            load: LoadSpec::capacitive(),
            environment: Environment::OpenAir,
        }
    }
}

impl BodyChannelParams {
    /// Defaults with the return path scaled so the open-air inter-body EQS
    /// plateau at 1 m sits at the calibration level.
    pub fn calibrated() -> Self {
        Self::default().with_return_path_scale(CALIBRATED_RETURN_PATH_SCALE)
    }

    pub fn with_load(mut self, load: LoadSpec) -> Self {
        self.load = load;
        self
    }

    pub fn with_environment(mut self, environment: Environment) -> Self {
        self.environment = environment;
        self
    }

    pub fn with_return_path_scale(mut self, scale: f64) -> Self {
        self.c_g_tx *= scale;
        self.c_g_rx *= scale;
        self
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        require_positive("c_g_tx", self.c_g_tx)?;
        require_positive("c_g_rx", self.c_g_rx)?;
        require_positive("c_body", self.c_body)?;
        require_positive("r_b", self.r_b)?;
        require_positive("r_s", self.r_s)?;
        require_positive("load.value", self.load.value())?;
        if let Environment::Anechoic { return_path_boost } = self.environment {
            require_positive("anechoic_boost", return_path_boost)?;
        }
        Ok(())
    }

    /// Return-path capacitances after the environment factor.
    pub fn effective_return_path(&self) -> (f64, f64) {
        let k = self.environment.return_path_factor();
        (self.c_g_tx * k, self.c_g_rx * k)
    }
}

/// Two-body parameters: transmitter on the first body, receiver on the
/// second, coupled through `c_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterBodyParams {
    pub base: BodyChannelParams,
    pub c_c: f64,
    pub c_body2: f64,
}

impl InterBodyParams {
    /// Second body identical to the first.
    pub fn new(base: BodyChannelParams, c_c: f64) -> Self {
        InterBodyParams {
            base,
            c_c,
            c_body2: base.c_body,
        }
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        self.base.validate()?;
        require_positive("c_c", self.c_c)?;
        require_positive("c_body2", self.c_body2)?;
        if self.c_c > self.c_body2 {
            return Err(ChannelError::CouplingExceedsBody {
                c_c: self.c_c,
                c_body2: self.c_body2,
            });
        }
        Ok(())
    }
}

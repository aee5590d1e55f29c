use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::channel::{
    build_inter_body, BodyChannelParams, ChannelCircuit, Environment, InterBodyParams, LoadSpec,
    ANCHOR_1M,
};
use crate::circuit::{FrequencyGrid, SweepMeta, SweepResult};
use crate::units::{amplitude_db, db_to_power, wavelength};

use super::antenna::{
    body_em_pair_gain, device_pair_gain, resonant_pair_response_db, DeviceModel, EmBodyModel,
};
use super::{positive, RegionError};

/// Body-EM labels switch from small-monopole to resonant at this `h/λ`
/// (a quarter of the body resonance frequency).
pub const SMALL_MONOPOLE_LIMIT: f64 = 0.0625;

/// Open-air EQS→EM crossover used to fix the body peak gain.
pub const BODY_CROSSOVER_ANCHOR_HZ: f64 = 1e6;
/// Body→device crossover used to fix the device peak gain.
pub const DEVICE_CROSSOVER_ANCHOR_HZ: f64 = 300e6;

const SCAN_START: f64 = 1e5;
const SCAN_STOP: f64 = 1e9;
const SCAN_POINTS: usize = 2001;
const BISECTION_STEPS: usize = 80;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    Eqs,
    EmSmallMonopole,
    EmResonant,
    DeviceCoupling,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 4] = [
        RegionLabel::Eqs,
        RegionLabel::EmSmallMonopole,
        RegionLabel::EmResonant,
        RegionLabel::DeviceCoupling,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::Eqs => "EQS",
            RegionLabel::EmSmallMonopole => "EM_SmallMonopole",
            RegionLabel::EmResonant => "EM_Resonant",
            RegionLabel::DeviceCoupling => "DeviceCoupling",
        }
    }

    pub fn mechanism(self) -> Mechanism {
        match self {
            RegionLabel::Eqs => Mechanism::Eqs,
            RegionLabel::EmSmallMonopole | RegionLabel::EmResonant => Mechanism::BodyEm,
            RegionLabel::DeviceCoupling => Mechanism::Device,
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegionLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RegionLabel::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown region '{s}'"))
    }
}

/// Physical coupling mechanism behind a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mechanism {
    Eqs,
    BodyEm,
    Device,
}

/// The three mechanisms of the stitched response.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionConfig {
    pub eqs: ChannelCircuit,
    pub em: EmBodyModel,
    pub device: DeviceModel,
}

impl RegionConfig {
    pub fn new(
        eqs: ChannelCircuit,
        em: EmBodyModel,
        device: DeviceModel,
    ) -> Result<Self, RegionError> {
        em.validate()?;
        device.validate()?;
        Ok(RegionConfig { eqs, em, device })
    }

    /// Calibrated inter-body channel at 1 m with a capacitive load in the
    /// given environment, plus the default EM and device models.
    pub fn calibrated(environment: Environment) -> Result<Self, RegionError> {
        let base = BodyChannelParams::calibrated()
            .with_load(LoadSpec::capacitive())
            .with_environment(environment);
        let eqs = build_inter_body(&InterBodyParams::new(base, ANCHOR_1M.1))?;
        Self::new(eqs, EmBodyModel::default(), DeviceModel::default())
    }

    /// Gains of the three mechanisms at `freq_hz`, dB.
    pub fn mechanism_gains(&self, freq_hz: f64) -> Result<[f64; 3], RegionError> {
        positive("frequency", freq_hz)?;
        let eqs = self.eqs.gain_db_at(freq_hz)?;
        Ok([
            eqs,
            body_em_pair_gain(&self.em, freq_hz),
            device_pair_gain(&self.device, freq_hz),
        ])
    }

    /// Region label for every grid point, sharing one EQS sweep.
    pub fn classify_grid(&self, grid: &FrequencyGrid) -> Result<Vec<RegionLabel>, RegionError> {
        Ok(self.classify_sweep(&self.eqs.sweep(grid)?))
    }

    /// Region labels for an existing sweep of [`eqs`](Self::eqs).
    pub fn classify_sweep(&self, eqs: &SweepResult) -> Vec<RegionLabel> {
        eqs.freqs
            .iter()
            .zip(eqs.gain_db())
            .map(|(&f, eqs_db)| self.label(f, eqs_db))
            .collect()
    }

    fn label(&self, freq_hz: f64, eqs_db: f64) -> RegionLabel {
        let em = body_em_pair_gain(&self.em, freq_hz);
        let dev = device_pair_gain(&self.device, freq_hz);
        if eqs_db >= em && eqs_db >= dev {
            RegionLabel::Eqs
        } else if em >= dev {
            if self.em.height / wavelength(freq_hz) < SMALL_MONOPOLE_LIMIT {
                RegionLabel::EmSmallMonopole
            } else {
                RegionLabel::EmResonant
            }
        } else {
            RegionLabel::DeviceCoupling
        }
    }

    fn mechanism_gain(&self, mechanism: Mechanism, freq_hz: f64) -> Result<f64, RegionError> {
        Ok(match mechanism {
            Mechanism::Eqs => self.eqs.gain_db_at(freq_hz)?,
            Mechanism::BodyEm => body_em_pair_gain(&self.em, freq_hz),
            Mechanism::Device => device_pair_gain(&self.device, freq_hz),
        })
    }
}

/// Label of the mechanism with the largest gain at `freq_hz`.
pub fn classify_region(freq_hz: f64, config: &RegionConfig) -> Result<RegionLabel, RegionError> {
    positive("frequency", freq_hz)?;
    Ok(config.label(freq_hz, config.eqs.gain_db_at(freq_hz)?))
}

/// Smallest frequency in [100 kHz, 1 GHz] where the region changes from
/// `from` to `to`.
pub fn crossover_frequency(
    config: &RegionConfig,
    from: RegionLabel,
    to: RegionLabel,
) -> Result<f64, RegionError> {
    let grid = FrequencyGrid::log(SCAN_START, SCAN_STOP, SCAN_POINTS)?;
    let labels = config.classify_grid(&grid)?;
    let f = grid.points();
    let i = labels
        .windows(2)
        .position(|w| w[0] == from && w[1] == to)
        .ok_or(RegionError::NeverCrosses { from, to })?;

    let (ma, mb) = (from.mechanism(), to.mechanism());
    if ma == mb {
        // Same mechanism: the label boundary is geometric.
        return Ok(SMALL_MONOPOLE_LIMIT * crate::units::SPEED_OF_LIGHT / config.em.height);
    }

    let diff = |x: f64| -> Result<f64, RegionError> {
        Ok(config.mechanism_gain(mb, x)? - config.mechanism_gain(ma, x)?)
    };
    let (mut lo, mut hi) = (f[i].ln(), f[i + 1].ln());
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if diff(mid.exp())? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

/// Incoherent power sum of the EQS sweep and both EM mechanisms.
pub fn total_response(
    eqs_sweep: &SweepResult,
    em: &EmBodyModel,
    device: &DeviceModel,
    grid: &FrequencyGrid,
) -> Result<SweepResult, RegionError> {
    if eqs_sweep.freqs.as_slice() != grid.points() {
        return Err(RegionError::GridMismatch);
    }
    em.validate()?;
    device.validate()?;
    let gain = grid
        .points()
        .iter()
        .zip(&eqs_sweep.gain)
        .map(|(&f, g)| {
            let em_power =
                db_to_power(body_em_pair_gain(em, f)) + db_to_power(device_pair_gain(device, f));
            Complex64::new(g.norm().hypot(em_power.sqrt()), 0.0)
        })
        .collect();
    Ok(SweepResult {
        freqs: grid.points().to_vec(),
        gain,
        meta: SweepMeta {
            magnitude_only: true,
            ..eqs_sweep.meta.clone()
        },
        warnings: eqs_sweep.warnings.clone(),
    })
}

/// Body peak gain that makes body EM coupling equal the EQS gain at
/// `crossover_hz`.
pub fn calibrate_body_peak(
    eqs: &ChannelCircuit,
    em: &EmBodyModel,
    crossover_hz: f64,
) -> Result<f64, RegionError> {
    positive("crossover frequency", crossover_hz)?;
    let shape = resonant_pair_response_db(crossover_hz, em.resonance(), em.q);
    Ok(amplitude_db(eqs.gain_at(crossover_hz)?.norm()) - shape)
}

/// Device peak gain that makes device coupling equal body EM coupling at
/// `crossover_hz`.
pub fn calibrate_device_peak(
    em: &EmBodyModel,
    device: &DeviceModel,
    crossover_hz: f64,
) -> Result<f64, RegionError> {
    positive("crossover frequency", crossover_hz)?;
    let shape = resonant_pair_response_db(crossover_hz, device.resonance(), device.q);
    Ok(body_em_pair_gain(em, crossover_hz) - shape)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiregion::{CALIBRATED_BODY_PEAK_DB, CALIBRATED_DEVICE_PEAK_DB};

    fn open_air() -> RegionConfig {
        RegionConfig::calibrated(Environment::OpenAir).unwrap()
    }

    #[test]
    fn frozen_peaks_match_calibration() {
        let cfg = open_air();
        let body = calibrate_body_peak(&cfg.eqs, &EmBodyModel::default(), BODY_CROSSOVER_ANCHOR_HZ)
            .unwrap();
        assert!((body - CALIBRATED_BODY_PEAK_DB).abs() < 1e-3);
        let dev =
            calibrate_device_peak(&cfg.em, &DeviceModel::default(), DEVICE_CROSSOVER_ANCHOR_HZ)
                .unwrap();
        assert!((dev - CALIBRATED_DEVICE_PEAK_DB).abs() < 1e-3);
    }

    #[test]
    fn labels_at_reference_points() {
        let cfg = open_air();
        assert_eq!(classify_region(500e3, &cfg).unwrap(), RegionLabel::Eqs);
        assert_eq!(
            classify_region(5e6, &cfg).unwrap(),
            RegionLabel::EmSmallMonopole
        );
        assert_eq!(
            classify_region(50e6, &cfg).unwrap(),
            RegionLabel::EmResonant
        );
        assert_eq!(
            classify_region(500e6, &cfg).unwrap(),
            RegionLabel::DeviceCoupling
        );
    }

    #[test]
    fn open_air_crossovers() {
        let cfg = open_air();
        let f = crossover_frequency(&cfg, RegionLabel::Eqs, RegionLabel::EmSmallMonopole).unwrap();
        assert!((f / 1e6 - 1.0).abs() < 1e-3, "{f}");
        let f = crossover_frequency(&cfg, RegionLabel::EmResonant, RegionLabel::DeviceCoupling)
            .unwrap();
        assert!((f / 300e6 - 1.0).abs() < 1e-3, "{f}");
        let f = crossover_frequency(&cfg, RegionLabel::EmSmallMonopole, RegionLabel::EmResonant)
            .unwrap();
        assert!((f - 10.41e6).abs() < 0.01e6, "{f}");
    }

    #[test]
    fn disabled_em_never_crosses() {
        let mut cfg = open_air();
        cfg.em.peak_gain_db = f64::NEG_INFINITY;
        cfg.device.peak_gain_db = f64::NEG_INFINITY;
        assert!(matches!(
            crossover_frequency(&cfg, RegionLabel::Eqs, RegionLabel::EmSmallMonopole),
            Err(RegionError::NeverCrosses { .. })
        ));
    }

    #[test]
    fn total_response_checks_grid() {
        let cfg = open_air();
        let grid = FrequencyGrid::log(1e5, 1e9, 20).unwrap();
        let other = FrequencyGrid::log(1e5, 1e9, 21).unwrap();
        let eqs = cfg.eqs.sweep(&grid).unwrap();
        assert_eq!(
            total_response(&eqs, &cfg.em, &cfg.device, &other),
            Err(RegionError::GridMismatch)
        );
        let total = total_response(&eqs, &cfg.em, &cfg.device, &grid).unwrap();
        assert!(total.meta.magnitude_only);
        assert_eq!(total.len(), 20);
    }

    #[test]
    fn label_round_trip() {
        for l in RegionLabel::ALL {
            assert_eq!(l.as_str().parse::<RegionLabel>().unwrap(), l);
        }
        assert!("Region9".parse::<RegionLabel>().is_err());
    }
}

//! FCC unintentional-radiator field limits and a power-law field-decay check.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

/// Table as shipped.
pub const LIMIT_TABLE_CSV: &str = include_str!("../data/fcc_unintentional.csv");

pub const DEFAULT_DECAY_EXPONENT: f64 = 3.0;
pub const DEFAULT_ANCHOR_DISTANCE: f64 = 1.0;
/// Field at 1 m giving a 2·10⁴ margin at 500 kHz with cube-law decay, V/m.
pub const CALIBRATED_ANCHOR_FIELD: f64 = 6.48e-5;
/// Target margin used for [`CALIBRATED_ANCHOR_FIELD`].
pub const CALIBRATION_MARGIN: f64 = 2e4;
pub const CALIBRATION_FREQ: f64 = 500e3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FccError {
    #[error("{0} Hz is below the 9 kHz start of the limit table")]
    BelowTable(f64),

    #[error("{name} must be positive and finite, got {value}")]
    InvalidInput { name: &'static str, value: f64 },

    #[error("frequency grid is empty")]
    EmptyGrid,

    #[error("limit table line {line}: {message}")]
    Table { line: usize, message: String },
}

/// Limit expression of one table row, µV/m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitSpec {
    /// `numerator / F_kHz`.
    PerKilohertz(f64),
    Constant(f64),
}

impl LimitSpec {
    pub fn evaluate(self, freq_hz: f64) -> f64 {
        match self {
            LimitSpec::PerKilohertz(n) => n / (freq_hz / 1e3),
            LimitSpec::Constant(v) => v,
        }
    }
}

impl fmt::Display for LimitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitSpec::PerKilohertz(n) => write!(f, "{n}/F_kHz"),
            LimitSpec::Constant(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for LimitSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (value, per_khz) = match s.strip_suffix("/F_kHz") {
            Some(n) => (n, true),
            None => (s, false),
        };
        let v: f64 = value.parse().map_err(|_| format!("bad limit '{s}'"))?;
        if !(v.is_finite() && v > 0.0) {
            return Err(format!("limit must be positive, got '{s}'"));
        }
        Ok(if per_khz {
            LimitSpec::PerKilohertz(v)
        } else {
            LimitSpec::Constant(v)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FccLimitRow {
    pub f_low: f64,
    pub f_high: f64,
    pub limit: LimitSpec,
    pub measure_distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitTable {
    header: Vec<String>,
    rows: Vec<FccLimitRow>,
}

impl LimitTable {
    /// Parse the CSV layout of [`LIMIT_TABLE_CSV`]. Rows must be contiguous.
    pub fn parse(text: &str) -> Result<Self, FccError> {
        let err = |line: usize, message: String| FccError::Table { line, message };
        let mut header = Vec::new();
        let mut rows: Vec<FccLimitRow> = Vec::new();
        let mut seen_columns = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.starts_with('#') || raw.trim().is_empty() {
                if !seen_columns {
                    header.push(raw.to_string());
                }
                continue;
            }
            if !seen_columns {
                if raw != "f_low_hz,f_high_hz,limit_spec,distance_m" {
                    return Err(err(line, format!("unexpected header '{raw}'")));
                }
                header.push(raw.to_string());
                seen_columns = true;
                continue;
            }
            let cols: Vec<&str> = raw.split(',').collect();
            if cols.len() != 4 {
                return Err(err(line, format!("expected 4 columns, got {}", cols.len())));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| err(line, format!("bad number '{s}'")))
            };
            let row = FccLimitRow {
                f_low: num(cols[0])?,
                f_high: num(cols[1])?,
                limit: cols[2].parse().map_err(|m| err(line, m))?,
                measure_distance: num(cols[3])?,
            };
            if !(row.f_low < row.f_high && row.measure_distance > 0.0) {
                return Err(err(line, "empty band or bad distance".into()));
            }
            if let Some(prev) = rows.last() {
                if prev.f_high != row.f_low {
                    return Err(err(line, "rows must be contiguous".into()));
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(err(text.lines().count(), "no rows".into()));
        }
        Ok(LimitTable { header, rows })
    }

    pub fn rows(&self) -> &[FccLimitRow] {
        &self.rows
    }

    pub fn row_for(&self, freq_hz: f64) -> Result<&FccLimitRow, FccError> {
        if freq_hz.is_nan() || freq_hz <= 0.0 {
            return Err(FccError::InvalidInput {
                name: "frequency",
                value: freq_hz,
            });
        }
        self.rows
            .iter()
            .find(|r| r.f_low <= freq_hz && freq_hz < r.f_high)
            .ok_or(FccError::BelowTable(freq_hz))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            out.push_str(h);
            out.push('\n');
        }
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.f_low, r.f_high, r.limit, r.measure_distance
            ));
        }
        out
    }
}

/// The shipped table, parsed once.
pub fn limit_table() -> &'static LimitTable {
    static TABLE: OnceLock<LimitTable> = OnceLock::new();
    TABLE.get_or_init(|| LimitTable::parse(LIMIT_TABLE_CSV).expect("bundled table is valid"))
}

/// `(limit µV/m, measurement distance m)` at `freq_hz`.
pub fn fcc_limit(freq_hz: f64) -> Result<(f64, f64), FccError> {
    let row = limit_table().row_for(freq_hz)?;
    Ok((row.limit.evaluate(freq_hz), row.measure_distance))
}

/// `E(d) = anchor_field · (anchor_distance / d)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldDecayModel {
    /// V/m.
    pub anchor_field: f64,
    pub anchor_distance: f64,
    pub exponent: f64,
}

impl Default for FieldDecayModel {
    fn default() -> Self {
        FieldDecayModel {
            anchor_field: CALIBRATED_ANCHOR_FIELD,
            anchor_distance: DEFAULT_ANCHOR_DISTANCE,
            exponent: DEFAULT_DECAY_EXPONENT,
        }
    }
}

impl FieldDecayModel {
    pub fn validate(&self) -> Result<(), FccError> {
        for (name, value) in [
            ("anchor_field", self.anchor_field),
            ("anchor_distance", self.anchor_distance),
            ("exponent", self.exponent),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(FccError::InvalidInput { name, value });
            }
        }
        Ok(())
    }

    pub fn scaled(self, factor: f64) -> Self {
        FieldDecayModel {
            anchor_field: self.anchor_field * factor,
            ..self
        }
    }

    /// Anchor field at `anchor_distance` giving `margin` at `freq_hz`.
    pub fn calibrated_for(
        margin: f64,
        freq_hz: f64,
        anchor_distance: f64,
        exponent: f64,
    ) -> Result<Self, FccError> {
        let (limit_uv, distance) = fcc_limit(freq_hz)?;
        let field_at_limit_distance = limit_uv * 1e-6 / margin;
        let model = FieldDecayModel {
            anchor_field: field_at_limit_distance * (distance / anchor_distance).powf(exponent),
            anchor_distance,
            exponent,
        };
        model.validate()?;
        Ok(model)
    }
}

/// Field strength at distance `d`, V/m.
pub fn field_at(model: &FieldDecayModel, d: f64) -> f64 {
    model.anchor_field * (model.anchor_distance / d).powf(model.exponent)
}

/// Limit over predicted field at the measurement distance; > 1 is compliant.
pub fn margin_factor(model: &FieldDecayModel, freq_hz: f64) -> Result<f64, FccError> {
    model.validate()?;
    let (limit_uv, distance) = fcc_limit(freq_hz)?;
    Ok(limit_uv * 1e-6 / field_at(model, distance))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplianceRow {
    pub freq_hz: f64,
    pub limit_uv_per_m: f64,
    pub distance_m: f64,
    pub field_uv_per_m: f64,
    pub margin: f64,
    pub compliant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplianceReport {
    pub compliant: bool,
    pub rows: Vec<ComplianceRow>,
}

impl ComplianceReport {
    pub fn violations(&self) -> impl Iterator<Item = &ComplianceRow> {
        self.rows.iter().filter(|r| !r.compliant)
    }
}

/// Check the model against the limit at every frequency.
pub fn is_unintentional_radiator(
    model: &FieldDecayModel,
    freqs: &[f64],
) -> Result<ComplianceReport, FccError> {
    if freqs.is_empty() {
        return Err(FccError::EmptyGrid);
    }
    let rows = freqs
        .iter()
        .map(|&f| {
            let (limit, distance) = fcc_limit(f)?;
            let margin = margin_factor(model, f)?;
            Ok(ComplianceRow {
                freq_hz: f,
                limit_uv_per_m: limit,
                distance_m: distance,
                field_uv_per_m: field_at(model, distance) * 1e6,
                margin,
                compliant: margin > 1.0,
            })
        })
        .collect::<Result<Vec<_>, FccError>>()?;
    Ok(ComplianceReport {
        compliant: rows.iter().all(|r| r.compliant),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs()
    }

    #[test]
    fn table_examples() {
        assert_eq!(fcc_limit(100e3).unwrap(), (24.0, 300.0));
        assert_eq!(fcc_limit(1e6).unwrap(), (24.0, 30.0));
        assert_eq!(fcc_limit(50e6).unwrap(), (100.0, 3.0));
        assert_eq!(fcc_limit(5e9).unwrap(), (500.0, 3.0));
        assert_eq!(fcc_limit(8e3), Err(FccError::BelowTable(8e3)));
    }

    #[test]
    fn breakpoints_are_half_open() {
        let edges = [9e3, 490e3, 1.705e6, 30e6, 88e6, 216e6, 960e6];
        let rows = limit_table().rows();
        for (row, edge) in rows.iter().zip(edges) {
            assert_eq!(row.f_low, edge);
            assert_eq!(limit_table().row_for(edge).unwrap(), row);
        }
        assert_eq!(fcc_limit(30e6).unwrap(), (100.0, 3.0));
        assert_eq!(fcc_limit(29.999999e6).unwrap(), (30.0, 30.0));
    }

    #[test]
    fn table_round_trips() {
        assert_eq!(limit_table().to_csv(), LIMIT_TABLE_CSV);
        let again = LimitTable::parse(&limit_table().to_csv()).unwrap();
        assert_eq!(&again, limit_table());
    }

    #[test]
    fn table_rejects_gaps() {
        let text =
            "f_low_hz,f_high_hz,limit_spec,distance_m\n9000,490000,30,3\n500000,600000,30,3\n";
        assert!(matches!(
            LimitTable::parse(text),
            Err(FccError::Table { line: 3, .. })
        ));
    }

    #[test]
    fn field_decay() {
        let m = FieldDecayModel::default();
        assert_eq!(field_at(&m, 1.0), m.anchor_field);
        assert!(close(field_at(&m, 2.0), m.anchor_field / 8.0, 1e-15));
    }

    #[test]
    fn calibrated_margin() {
        let m = FieldDecayModel::default();
        assert!(close(
            margin_factor(&m, CALIBRATION_FREQ).unwrap(),
            CALIBRATION_MARGIN,
            1e-9
        ));
        let c = FieldDecayModel::calibrated_for(CALIBRATION_MARGIN, CALIBRATION_FREQ, 1.0, 3.0)
            .unwrap();
        assert!(close(c.anchor_field, CALIBRATED_ANCHOR_FIELD, 1e-12));
        let stronger = m.scaled(10.0);
        assert!(close(
            margin_factor(&stronger, 500e3).unwrap() * 10.0,
            margin_factor(&m, 500e3).unwrap(),
            1e-12
        ));
        let edge = FieldDecayModel::calibrated_for(1.0, 500e3, 1.0, 3.0).unwrap();
        assert!(close(margin_factor(&edge, 500e3).unwrap(), 1.0, 1e-12));
    }

    #[test]
    fn compliance_report() {
        let m = FieldDecayModel::default();
        let freqs: Vec<f64> = (0..10)
            .map(|i| 100e3 * 10f64.powf(i as f64 / 9.0))
            .collect();
        let report = is_unintentional_radiator(&m, &freqs).unwrap();
        assert!(report.compliant);
        let loud = is_unintentional_radiator(&m.scaled(1e5), &freqs).unwrap();
        assert!(!loud.compliant);
        assert!(loud.violations().count() > 0);
        assert_eq!(is_unintentional_radiator(&m, &[]), Err(FccError::EmptyGrid));
    }
}

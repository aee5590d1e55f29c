use crate::units::amplitude_db;

use super::{require_positive, ChannelError};

/// Inter-body capacitance at 1 m separation (electrostatic simulation).
pub const ANCHOR_1M: (f64, f64) = (1.0, 21e-12);
/// Inter-body capacitance at 5 m separation.
pub const ANCHOR_5M: (f64, f64) = (5.0, 6.6e-12);
/// Saturation offset of the coupling model, meters. Keeps `C_C` finite and
/// below `C_Body` as the subjects touch.
pub const DEFAULT_D0: f64 = 0.2;

/// `C_C(d) = a / (d + d0) + b`, strictly decreasing towards the floor `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingCapModel {
    /// Farad·meters.
    pub a: f64,
    /// Meters.
    pub d0: f64,
    /// Farads.
    pub b: f64,
}

impl CouplingCapModel {
    pub fn new(a: f64, d0: f64, b: f64) -> Result<Self, ChannelError> {
        require_positive("coupling.d0", d0)?;
        if !(a.is_finite() && a > 0.0 && b.is_finite() && b >= 0.0) {
            return Err(ChannelError::InvalidFit { a, b });
        }
        Ok(CouplingCapModel { a, d0, b })
    }

    /// Model through the 1 m and 5 m anchors with `d0 = 0.2 m`.
    pub fn fitted_default() -> Self {
        fit_coupling_model(&[ANCHOR_1M, ANCHOR_5M], DEFAULT_D0).expect("anchors are valid")
    }

    /// Coupling capacitance at separation `d` meters (`d >= 0`).
    pub fn capacitance(&self, d: f64) -> f64 {
        self.a / (d + self.d0) + self.b
    }

    /// Inverse of [`capacitance`](Self::capacitance); `None` when `c` is
    /// outside `(b, C_C(0)]`.
    pub fn distance_for(&self, c: f64) -> Option<f64> {
        if c <= self.b || c > self.capacitance(0.0) {
            return None;
        }
        Some(self.a / (c - self.b) - self.d0)
    }
}

/// Fit `a` and `b` for a fixed `d0`.
///
/// Two anchors are matched exactly; more are fitted by least squares on
/// `C = a·x + b` with `x = 1 / (d + d0)`.
pub fn fit_coupling_model(
    anchors: &[(f64, f64)],
    d0: f64,
) -> Result<CouplingCapModel, ChannelError> {
    require_positive("coupling.d0", d0)?;
    if anchors.len() < 2 {
        return Err(ChannelError::TooFewAnchors(anchors.len()));
    }
    for &(d, c) in anchors {
        if !(d.is_finite() && d >= 0.0) {
            return Err(ChannelError::InvalidParameter {
                name: "anchor distance",
                value: d,
            });
        }
        require_positive("anchor capacitance", c)?;
    }
    for (i, (di, _)) in anchors.iter().enumerate() {
        if anchors[i + 1..].iter().any(|(dj, _)| dj == di) {
            return Err(ChannelError::DegenerateAnchors);
        }
    }

    let n = anchors.len() as f64;
    let xs: Vec<f64> = anchors.iter().map(|(d, _)| 1.0 / (d + d0)).collect();
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_c = anchors.iter().map(|(_, c)| c).sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxc: f64 = xs
        .iter()
        .zip(anchors)
        .map(|(x, (_, c))| (x - mean_x) * (c - mean_c))
        .sum();
    let a = sxc / sxx;
    let b = mean_c - a * mean_x;
    CouplingCapModel::new(a, d0, b)
}

/// Linear voltage ratio `C_C(d) / C_Body` between bodies in the EQS band.
pub fn coupling_coefficient(model: &CouplingCapModel, d: f64, c_body: f64) -> f64 {
    model.capacitance(d) / c_body
}

/// Extra inter-body loss relative to intra-body, `20·log10(C_C / C_Body)` dB.
pub fn extra_loss_db(c_c: f64, c_body: f64) -> Result<f64, ChannelError> {
    require_positive("c_c", c_c)?;
    require_positive("c_body", c_body)?;
    Ok(amplitude_db(c_c / c_body))
}

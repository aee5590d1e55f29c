//! Snooping and co-channel interference analysis.
//!
//! Both questions reduce to the extra inter-body loss `20·log10(C_C(d)/C_Body)`
//! that separates a wearer's own receiver from a nearby body.

use thiserror::Error;

use crate::channel::{CouplingCapModel, DEFAULT_C_BODY};
use crate::units::amplitude_db;

/// Minimum SNR for reliable OOK reception, dB.
pub const DEFAULT_SNR_THRESHOLD_DB: f64 = 6.0;
/// Search cap for [`min_safe_distance`], meters.
pub const MAX_SEARCH_DISTANCE: f64 = 100.0;
/// Cap reported by [`max_cochannel_users`] when interference vanishes.
pub const MAX_COCHANNEL_USERS: u64 = 1_000_000;

const DISTANCE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RiskError {
    #[error("{name} is invalid: {value}")]
    InvalidInput { name: &'static str, value: f64 },

    #[error("snooping stays feasible at every distance up to {cap} m")]
    Unbounded { cap: f64 },
}

fn check(name: &'static str, value: f64, ok: bool) -> Result<(), RiskError> {
    if ok {
        Ok(())
    } else {
        Err(RiskError::InvalidInput { name, value })
    }
}

/// Gain from one body to another at separation `d`, dB (≤ 0 in practice).
fn coupling_db(coupling: &CouplingCapModel, d: f64, c_body: f64) -> f64 {
    amplitude_db(coupling.capacitance(d) / c_body)
}

/// An eavesdropper at some distance from the transmitting wearer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackScenario {
    pub snr_intended_db: f64,
    pub attacker_distance: f64,
    pub snr_threshold_db: f64,
    pub coupling: CouplingCapModel,
    pub c_body: f64,
}

impl AttackScenario {
    /// Scenario with the default threshold, fitted coupling and body capacitance.
    pub fn new(snr_intended_db: f64, attacker_distance: f64) -> Self {
        AttackScenario {
            snr_intended_db,
            attacker_distance,
            snr_threshold_db: DEFAULT_SNR_THRESHOLD_DB,
            coupling: CouplingCapModel::fitted_default(),
            c_body: DEFAULT_C_BODY,
        }
    }

    pub fn with_threshold(mut self, threshold_db: f64) -> Self {
        self.snr_threshold_db = threshold_db;
        self
    }

    pub fn validate(&self) -> Result<(), RiskError> {
        check(
            "snr_intended_db",
            self.snr_intended_db,
            !self.snr_intended_db.is_nan(),
        )?;
        check(
            "attacker_distance",
            self.attacker_distance,
            self.attacker_distance.is_finite() && self.attacker_distance >= 0.0,
        )?;
        check(
            "snr_threshold_db",
            self.snr_threshold_db,
            self.snr_threshold_db.is_finite(),
        )?;
        check(
            "c_body",
            self.c_body,
            self.c_body.is_finite() && self.c_body > 0.0,
        )
    }
}

/// SNR seen by the eavesdropper, dB.
pub fn snooper_snr_db(s: &AttackScenario) -> f64 {
    s.snr_intended_db + coupling_db(&s.coupling, s.attacker_distance, s.c_body)
}

/// Whether the eavesdropper reaches the threshold (inclusive).
pub fn is_attack_feasible(s: &AttackScenario) -> bool {
    snooper_snr_db(s) >= s.snr_threshold_db
}

/// Boundary distance beyond which snooping is infeasible; 0 when it is
/// infeasible everywhere.
pub fn min_safe_distance(
    snr_intended_db: f64,
    threshold_db: f64,
    coupling: &CouplingCapModel,
    c_body: f64,
) -> Result<f64, RiskError> {
    check(
        "snr_intended_db",
        snr_intended_db,
        !snr_intended_db.is_nan(),
    )?;
    check("threshold_db", threshold_db, threshold_db.is_finite())?;
    check("c_body", c_body, c_body.is_finite() && c_body > 0.0)?;
    let unsafe_at = |d: f64| snr_intended_db + coupling_db(coupling, d, c_body) >= threshold_db;
    if !unsafe_at(0.0) {
        return Ok(0.0);
    }
    if unsafe_at(MAX_SEARCH_DISTANCE) {
        return Err(RiskError::Unbounded {
            cap: MAX_SEARCH_DISTANCE,
        });
    }
    let (mut lo, mut hi) = (0.0, MAX_SEARCH_DISTANCE);
    while hi - lo > DISTANCE_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if unsafe_at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Largest intended SNR that keeps snooping infeasible beyond `d_protect`.
pub fn max_safe_snr(
    threshold_db: f64,
    d_protect: f64,
    coupling: &CouplingCapModel,
    c_body: f64,
) -> Result<f64, RiskError> {
    check("threshold_db", threshold_db, threshold_db.is_finite())?;
    check(
        "d_protect",
        d_protect,
        d_protect.is_finite() && d_protect > 0.0,
    )?;
    check("c_body", c_body, c_body.is_finite() && c_body > 0.0)?;
    Ok(threshold_db - coupling_db(coupling, d_protect, c_body))
}

/// Co-channel users around the wearer of interest.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceScenario {
    pub v_sig_user: f64,
    /// `(amplitude on the interferer's body, distance)` pairs, volts and meters.
    pub interferers: Vec<(f64, f64)>,
    pub coupling: CouplingCapModel,
    pub c_body: f64,
}

impl InterferenceScenario {
    pub fn new(v_sig_user: f64, interferers: Vec<(f64, f64)>) -> Self {
        InterferenceScenario {
            v_sig_user,
            interferers,
            coupling: CouplingCapModel::fitted_default(),
            c_body: DEFAULT_C_BODY,
        }
    }

    pub fn validate(&self) -> Result<(), RiskError> {
        check(
            "v_sig_user",
            self.v_sig_user,
            self.v_sig_user.is_finite() && self.v_sig_user > 0.0,
        )?;
        check(
            "c_body",
            self.c_body,
            self.c_body.is_finite() && self.c_body > 0.0,
        )?;
        for &(v, d) in &self.interferers {
            check("interferer amplitude", v, v.is_finite() && v > 0.0)?;
            check("interferer distance", d, d.is_finite() && d > 0.0)?;
        }
        Ok(())
    }
}

/// Signal-to-interference ratio with interferer voltages summed linearly, dB.
/// `+inf` with no interferers.
pub fn sir_db(s: &InterferenceScenario) -> f64 {
    let v_intf: f64 = s
        .interferers
        .iter()
        .map(|&(v, d)| v * s.coupling.capacitance(d) / s.c_body)
        .sum();
    if v_intf == 0.0 {
        return f64::INFINITY;
    }
    amplitude_db(s.v_sig_user / v_intf)
}

/// Largest number of identical interferers at `d_each` keeping the SIR at or
/// above `sir_min_db`, capped at [`MAX_COCHANNEL_USERS`].
pub fn max_cochannel_users(
    v_sig_user: f64,
    v_sig_each: f64,
    d_each: f64,
    sir_min_db: f64,
    coupling: &CouplingCapModel,
    c_body: f64,
) -> Result<u64, RiskError> {
    check(
        "v_sig_user",
        v_sig_user,
        v_sig_user.is_finite() && v_sig_user > 0.0,
    )?;
    check(
        "v_sig_each",
        v_sig_each,
        v_sig_each.is_finite() && v_sig_each > 0.0,
    )?;
    check("d_each", d_each, d_each > 0.0 && !d_each.is_nan())?;
    check("sir_min_db", sir_min_db, sir_min_db.is_finite())?;
    check("c_body", c_body, c_body.is_finite() && c_body > 0.0)?;

    let per_user = v_sig_each * coupling.capacitance(d_each) / c_body;
    if per_user == 0.0 {
        return Ok(MAX_COCHANNEL_USERS);
    }
    let sir = |n: u64| amplitude_db(v_sig_user / (n as f64 * per_user));
    let bound = v_sig_user / (per_user * 10f64.powf(sir_min_db / 20.0));
    if bound >= MAX_COCHANNEL_USERS as f64 {
        return Ok(MAX_COCHANNEL_USERS);
    }
    let mut n = bound.floor() as u64;
    while n > 0 && sir(n) < sir_min_db {
        n -= 1;
    }
    while n < MAX_COCHANNEL_USERS && sir(n + 1) >= sir_min_db {
        n += 1;
    }
    Ok(n)
}

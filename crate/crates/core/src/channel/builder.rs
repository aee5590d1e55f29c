//! Netlists for the intra-body and inter-body EQS channels.
//!
//! Intra-body node map:
//!
//! | node | meaning                      |
//! |------|------------------------------|
//! | 1    | transmitter signal terminal  |
//! | 2    | transmitter ground plate     |
//! | 3    | body                         |
//! | 4    | receiver electrode           |
//! | 5    | receiver ground plate        |
//!
//! The source `VTX` sits between nodes 1 and 2 and feeds the body through
//! `RS`. The transmitter ground plate returns to earth through `CGTX`, the
//! body through `CBODY`. The receiver taps the body through the forward-path
//! resistance `RB`, terminates in the load between its electrode and ground
//! plate, and returns through `CGRX`. The probe is (4, 5).
//!
//! Inter-body inserts a second body (node 4) coupled to the first through
//! `CC`; the receiver then hangs off body 2 (electrode 5, ground plate 6).
//! `C_Body` and `C_Body2` are each body's total capacitance to earth. The
//! direct shunts are what remains after the coupling branch is accounted for:
//! body 2 keeps `C_Body2 − C_C`, and body 1 keeps whatever makes its total
//! (direct shunt plus `CC` in series with body 2's shunt) equal `C_Body`.
//! With that split the body-to-body ratio is exactly `C_C / C_Body2`.

use num_complex::Complex64;

use crate::circuit::{
    solve_ac, transfer, CircuitError, Element, ElementKind, FrequencyGrid, Netlist, NodeId,
    SweepResult,
};

use super::{BodyChannelParams, ChannelError, InterBodyParams, LoadSpec};

/// Frequency used for EQS plateau comparisons and calibration.
pub const EQS_REFERENCE_FREQ: f64 = 500e3;

const SOURCE: &str = "VTX";

/// A built channel netlist together with its drive and probe.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelCircuit {
    netlist: Netlist,
    source: String,
    probe: (NodeId, NodeId),
}

impl ChannelCircuit {
    pub fn netlist(&self) -> &Netlist {
        &self.netlist
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn probe(&self) -> (NodeId, NodeId) {
        self.probe
    }

    /// Complex channel gain `V_Rx / V_Tx` at one frequency.
    pub fn gain_at(&self, freq_hz: f64) -> Result<Complex64, CircuitError> {
        let sol = solve_ac(&self.netlist, freq_hz)?;
        let v = sol.voltage(self.probe.0).expect("probe node")
            - sol.voltage(self.probe.1).expect("probe node");
        let drive = self.netlist.element(&self.source).expect("source").value;
        Ok(v / drive)
    }

    pub fn gain_db_at(&self, freq_hz: f64) -> Result<f64, CircuitError> {
        Ok(crate::units::amplitude_db(self.gain_at(freq_hz)?.norm()))
    }

    pub fn sweep(&self, grid: &FrequencyGrid) -> Result<SweepResult, CircuitError> {
        transfer(&self.netlist, &self.source, self.probe, grid)
    }
}

fn el(kind: ElementKind, label: &str, a: usize, b: usize, v: f64) -> Result<Element, ChannelError> {
    Ok(Element::new(kind, label, a, b, v)?)
}

fn load_element(load: LoadSpec, a: usize, b: usize) -> Result<Element, ChannelError> {
    match load {
        LoadSpec::Resistive(r) => el(ElementKind::Resistor, "RL", a, b, r),
        LoadSpec::Capacitive(c) => el(ElementKind::Capacitor, "CL", a, b, c),
    }
}

/// Single-body channel: transmitter and receiver on the same body.
pub fn build_intra_body(params: &BodyChannelParams) -> Result<ChannelCircuit, ChannelError> {
    use ElementKind::*;
    params.validate()?;
    let (c_g_tx, c_g_rx) = params.effective_return_path();
    let elements = vec![
        el(VoltageSource, SOURCE, 1, 2, 1.0)?,
        el(Resistor, "RS", 1, 3, params.r_s)?,
        el(Capacitor, "CGTX", 2, 0, c_g_tx)?,
        el(Capacitor, "CBODY", 3, 0, params.c_body)?,
        el(Resistor, "RB", 3, 4, params.r_b)?,
        load_element(params.load, 4, 5)?,
        el(Capacitor, "CGRX", 5, 0, c_g_rx)?,
    ];
    Ok(ChannelCircuit {
        netlist: Netlist::new(elements)?,
        source: SOURCE.to_string(),
        probe: (NodeId(4), NodeId(5)),
    })
}

/// Two-body channel: transmitter on body 1, receiver on body 2.
pub fn build_inter_body(params: &InterBodyParams) -> Result<ChannelCircuit, ChannelError> {
    use ElementKind::*;
    params.validate()?;
    let base = &params.base;
    let (c_g_tx, c_g_rx) = base.effective_return_path();

    let shunt2 = params.c_body2 - params.c_c;
    let through_coupling = params.c_c * shunt2 / params.c_body2;
    let shunt1 = base.c_body - through_coupling;
    if shunt1 <= 0.0 {
        return Err(ChannelError::InvalidParameter {
            name: "c_body (too small for the coupling branch)",
            value: base.c_body,
        });
    }

    let mut elements = vec![
        el(VoltageSource, SOURCE, 1, 2, 1.0)?,
        el(Resistor, "RS", 1, 3, base.r_s)?,
        el(Capacitor, "CGTX", 2, 0, c_g_tx)?,
        el(Capacitor, "CBODY1", 3, 0, shunt1)?,
        el(Capacitor, "CC", 3, 4, params.c_c)?,
    ];
    // C_C == C_Body2 leaves no direct shunt on body 2.
    if shunt2 > 0.0 {
        elements.push(el(Capacitor, "CBODY2", 4, 0, shunt2)?);
    }
    elements.extend([
        el(Resistor, "RB", 4, 5, base.r_b)?,
        load_element(base.load, 5, 6)?,
        el(Capacitor, "CGRX", 6, 0, c_g_rx)?,
    ]);
    Ok(ChannelCircuit {
        netlist: Netlist::new(elements)?,
        source: SOURCE.to_string(),
        probe: (NodeId(5), NodeId(6)),
    })
}

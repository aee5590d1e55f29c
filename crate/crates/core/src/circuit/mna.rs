use std::f64::consts::PI;

use num_complex::Complex64;

use super::lu::{norm1, LuFactors};
use super::{CircuitError, Element, ElementKind, Netlist, NodeId};

/// Condition estimates above this attach a warning to the solution.
pub const CONDITION_WARN_THRESHOLD: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolverWarning {
    IllConditioned { condition: f64 },
}

/// Which sources are active in a solve.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Drive<'a> {
    /// Every source at its netlist amplitude.
    Nominal,
    /// The named source at 1 V, all others shorted.
    Unit(&'a str),
}

/// Complex node voltages and source currents at one frequency.
#[derive(Debug, Clone)]
pub struct AcSolution {
    frequency: f64,
    nodes: Vec<NodeId>,
    voltages: Vec<Complex64>,
    source_currents: Vec<(String, Complex64)>,
    condition: f64,
    warning: Option<SolverWarning>,
}

impl AcSolution {
    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn voltage(&self, node: NodeId) -> Option<Complex64> {
        self.nodes
            .binary_search(&node)
            .ok()
            .map(|i| self.voltages[i])
    }

    /// `(node, voltage)` pairs in ascending node order, ground included.
    pub fn voltages(&self) -> impl Iterator<Item = (NodeId, Complex64)> + '_ {
        self.nodes
            .iter()
            .copied()
            .zip(self.voltages.iter().copied())
    }

    /// Current through a voltage source, flowing from its positive to its
    /// negative terminal inside the source.
    pub fn source_current(&self, label: &str) -> Option<Complex64> {
        self.source_currents
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, i)| *i)
    }

    /// 1-norm condition estimate of the MNA matrix.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    pub fn warning(&self) -> Option<SolverWarning> {
        self.warning
    }

    /// Current through `element`, positive from `pos` to `neg`.
    pub fn branch_current(&self, element: &Element) -> Option<Complex64> {
        if element.kind == ElementKind::VoltageSource {
            return self.source_current(&element.label);
        }
        let v = self.voltage(element.pos)? - self.voltage(element.neg)?;
        Some(admittance(element, 2.0 * PI * self.frequency) * v)
    }

    /// Kirchhoff current-law residuals for this solution.
    pub fn kcl_check(&self, netlist: &Netlist) -> KclReport {
        let mut sums = vec![Complex64::new(0.0, 0.0); self.nodes.len()];
        let mut max_branch: f64 = 0.0;
        for e in netlist.elements() {
            let Some(i) = self.branch_current(e) else {
                continue;
            };
            max_branch = max_branch.max(i.norm());
            if let Ok(p) = self.nodes.binary_search(&e.pos) {
                sums[p] += i;
            }
            if let Ok(p) = self.nodes.binary_search(&e.neg) {
                sums[p] -= i;
            }
        }
        let residuals: Vec<(NodeId, f64)> = self
            .nodes
            .iter()
            .zip(&sums)
            .filter(|(n, _)| !n.is_ground())
            .map(|(n, s)| (*n, s.norm()))
            .collect();
        KclReport {
            residuals,
            max_branch_current: max_branch,
        }
    }
}

/// Per-node KCL residual magnitudes (ground excluded).
#[derive(Debug, Clone)]
pub struct KclReport {
    pub residuals: Vec<(NodeId, f64)>,
    pub max_branch_current: f64,
}

impl KclReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }

    /// True when every residual is below `tol × largest branch current`.
    pub fn within(&self, tol: f64) -> bool {
        self.max_residual() <= tol * self.max_branch_current
    }
}

fn admittance(element: &Element, omega: f64) -> Complex64 {
    match element.kind {
        ElementKind::Resistor => Complex64::new(1.0 / element.value, 0.0),
        ElementKind::Capacitor => Complex64::new(0.0, omega * element.value),
        ElementKind::Inductor => Complex64::new(0.0, -1.0 / (omega * element.value)),
        ElementKind::VoltageSource => unreachable!("sources are stamped as constraint rows"),
    }
}

/// Solve the netlist at frequency `freq_hz` with every source at its
/// nominal amplitude.
pub fn solve_ac(netlist: &Netlist, freq_hz: f64) -> Result<AcSolution, CircuitError> {
    solve_with_drive(netlist, freq_hz, Drive::Nominal)
}

pub(crate) fn solve_with_drive(
    netlist: &Netlist,
    freq_hz: f64,
    drive: Drive<'_>,
) -> Result<AcSolution, CircuitError> {
    if !(freq_hz > 0.0 && freq_hz.is_finite()) {
        return Err(CircuitError::NonPositiveFrequency(freq_hz));
    }
    if let Drive::Unit(label) = drive {
        if !netlist.sources().any(|s| s.label == label) {
            return Err(CircuitError::UnknownSource(label.to_string()));
        }
    }

    let omega = 2.0 * PI * freq_hz;
    let node_unknowns = netlist.node_count() - 1;
    let sources: Vec<&Element> = netlist.sources().collect();
    let size = node_unknowns + sources.len();
    let mut a = vec![Complex64::new(0.0, 0.0); size * size];
    let mut rhs = vec![Complex64::new(0.0, 0.0); size];
    // Dense position p >= 1 maps to unknown p - 1; ground has no row.
    let row = |node: NodeId| netlist.position(node).and_then(|p| p.checked_sub(1));

    for e in netlist.elements() {
        if e.kind == ElementKind::VoltageSource {
            continue;
        }
        let y = admittance(e, omega);
        let (i, j) = (row(e.pos), row(e.neg));
        if let Some(i) = i {
            a[i * size + i] += y;
        }
        if let Some(j) = j {
            a[j * size + j] += y;
        }
        if let (Some(i), Some(j)) = (i, j) {
            a[i * size + j] -= y;
            a[j * size + i] -= y;
        }
    }

    for (k, src) in sources.iter().enumerate() {
        let s = node_unknowns + k;
        let one = Complex64::new(1.0, 0.0);
        if let Some(i) = row(src.pos) {
            a[i * size + s] += one;
            a[s * size + i] += one;
        }
        if let Some(j) = row(src.neg) {
            a[j * size + s] -= one;
            a[s * size + j] -= one;
        }
        let amplitude = match drive {
            Drive::Nominal => src.value,
            Drive::Unit(label) if label == src.label => 1.0,
            Drive::Unit(_) => 0.0,
        };
        rhs[s] = Complex64::new(amplitude, 0.0);
    }

    let a_norm = norm1(&a, size);
    let lu = LuFactors::factor(a, size).map_err(|cols| {
        let names = cols
            .into_iter()
            .map(|c| {
                if c < node_unknowns {
                    format!("node {}", netlist.nodes()[c + 1])
                } else {
                    format!("current({})", sources[c - node_unknowns].label)
                }
            })
            .collect();
        CircuitError::Singular(names)
    })?;
    let x = lu.solve(&rhs);
    let condition = lu.condition_1norm(a_norm);
    let warning = (condition > CONDITION_WARN_THRESHOLD)
        .then_some(SolverWarning::IllConditioned { condition });

    let mut voltages = Vec::with_capacity(netlist.node_count());
    voltages.push(Complex64::new(0.0, 0.0));
    voltages.extend_from_slice(&x[..node_unknowns]);
    let source_currents = sources
        .iter()
        .enumerate()
        .map(|(k, s)| (s.label.clone(), x[node_unknowns + k]))
        .collect();

    Ok(AcSolution {
        frequency: freq_hz,
        nodes: netlist.nodes().to_vec(),
        voltages,
        source_currents,
        condition,
        warning,
    })
}

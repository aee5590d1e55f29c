use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use super::mna::{solve_with_drive, Drive, SolverWarning};
use super::{CircuitError, Netlist, NodeId};
use crate::units::{amplitude_db, format_sig9};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSpacing {
    Log,
    Linear,
}

/// Strictly increasing list of positive frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
}

impl FrequencyGrid {
    pub const DEFAULT_START: f64 = 1e5;
    pub const DEFAULT_STOP: f64 = 1e9;
    pub const DEFAULT_POINTS: usize = 200;

    pub fn new(points: Vec<f64>) -> Result<Self, CircuitError> {
        if points.is_empty() {
            return Err(CircuitError::InvalidGrid("no points".into()));
        }
        if points.iter().any(|f| !(f.is_finite() && *f > 0.0)) {
            return Err(CircuitError::InvalidGrid(
                "frequencies must be finite and > 0".into(),
            ));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CircuitError::InvalidGrid(
                "frequencies must be strictly increasing".into(),
            ));
        }
        Ok(FrequencyGrid { points })
    }

    pub fn log(start: f64, stop: f64, n: usize) -> Result<Self, CircuitError> {
        Self::spaced(start, stop, n, GridSpacing::Log)
    }

    pub fn linear(start: f64, stop: f64, n: usize) -> Result<Self, CircuitError> {
        Self::spaced(start, stop, n, GridSpacing::Linear)
    }

    pub fn spaced(
        start: f64,
        stop: f64,
        n: usize,
        spacing: GridSpacing,
    ) -> Result<Self, CircuitError> {
        if n == 0 {
            return Err(CircuitError::InvalidGrid("point count must be >= 1".into()));
        }
        if !(start > 0.0 && stop >= start) {
            return Err(CircuitError::InvalidGrid(format!(
                "bad range {start}..{stop}"
            )));
        }
        if n == 1 {
            return Self::new(vec![start]);
        }
        let step = (n - 1) as f64;
        let points = (0..n)
            .map(|i| {
                let t = i as f64 / step;
                match spacing {
                    GridSpacing::Log => start * (stop / start).powf(t),
                    GridSpacing::Linear => start + (stop - start) * t,
                }
            })
            .collect();
        Self::new(points)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl Default for FrequencyGrid {
    /// 100 kHz to 1 GHz, 200 log-spaced points.
    fn default() -> Self {
        Self::log(
            Self::DEFAULT_START,
            Self::DEFAULT_STOP,
            Self::DEFAULT_POINTS,
        )
        .expect("default grid is valid")
    }
}

/// `start:stop:N[log|lin]`, log spacing when the suffix is omitted.
impl FromStr for FrequencyGrid {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad =
            || CircuitError::InvalidGrid(format!("expected start:stop:N[log|lin], got '{s}'"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(bad());
        };
        let start: f64 = start.parse().map_err(|_| bad())?;
        let stop: f64 = stop.parse().map_err(|_| bad())?;
        let (digits, spacing) = if let Some(d) = count.strip_suffix("log") {
            (d, GridSpacing::Log)
        } else if let Some(d) = count.strip_suffix("lin") {
            (d, GridSpacing::Linear)
        } else {
            (*count, GridSpacing::Log)
        };
        let n: usize = digits.parse().map_err(|_| bad())?;
        Self::spaced(start, stop, n, spacing)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepMeta {
    pub source: String,
    pub probe: (NodeId, NodeId),
    /// Set when the gains carry magnitude only (phase discarded).
    pub magnitude_only: bool,
}

/// Per-frequency complex gain `(V(probe+) − V(probe−)) / V(source)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub freqs: Vec<f64>,
    pub gain: Vec<Complex64>,
    pub meta: SweepMeta,
    /// Solver warnings keyed by frequency.
    pub warnings: Vec<(f64, SolverWarning)>,
}

impl SweepResult {
    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    pub fn gain_db(&self) -> Vec<f64> {
        self.gain.iter().map(|g| amplitude_db(g.norm())).collect()
    }

    pub fn phase_deg(&self) -> Vec<f64> {
        self.gain.iter().map(|g| g.arg().to_degrees()).collect()
    }

    /// Write `freq_hz,gain_re,gain_im,gain_db,phase_deg`.
    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        self.write_csv_impl::<W, &str>(out, None)
    }

    /// Same as [`write_csv`](Self::write_csv) with a trailing `region` column.
    pub fn write_csv_with_labels<W: Write, L: fmt::Display>(
        &self,
        out: W,
        labels: &[L],
    ) -> io::Result<()> {
        assert_eq!(labels.len(), self.len(), "one label per frequency");
        self.write_csv_impl(out, Some(labels))
    }

    fn write_csv_impl<W: Write, L: fmt::Display>(
        &self,
        mut out: W,
        labels: Option<&[L]>,
    ) -> io::Result<()> {
        write!(out, "freq_hz,gain_re,gain_im,gain_db,phase_deg")?;
        if labels.is_some() {
            write!(out, ",region")?;
        }
        writeln!(out)?;
        for (i, (f, g)) in self.freqs.iter().zip(&self.gain).enumerate() {
            write!(
                out,
                "{},{},{},{},{}",
                format_sig9(*f),
                format_sig9(g.re),
                format_sig9(g.im),
                format_sig9(amplitude_db(g.norm())),
                format_sig9(g.arg().to_degrees()),
            )?;
            if let Some(labels) = labels {
                write!(out, ",{}", labels[i])?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Sweep the voltage transfer from `source` to the probe pair.
///
/// The named source is driven at 1 V and every other source is shorted, so
/// the result is the small-signal transfer ratio regardless of the source's
/// netlist amplitude. Frequency points are solved in parallel; output order
/// follows the grid.
pub fn transfer(
    netlist: &Netlist,
    source: &str,
    probe: (NodeId, NodeId),
    grid: &FrequencyGrid,
) -> Result<SweepResult, CircuitError> {
    if !netlist.sources().any(|s| s.label == source) {
        return Err(CircuitError::UnknownSource(source.to_string()));
    }
    for node in [probe.0, probe.1] {
        if !netlist.contains_node(node) {
            return Err(CircuitError::UnknownNode(node));
        }
    }
    let solved: Vec<(Complex64, Option<SolverWarning>)> = grid
        .points()
        .par_iter()
        .map(|&f| {
            let s = solve_with_drive(netlist, f, Drive::Unit(source))?;
            let v = s.voltage(probe.0).expect("checked") - s.voltage(probe.1).expect("checked");
            Ok((v, s.warning()))
        })
        .collect::<Result<_, CircuitError>>()?;

    let warnings = grid
        .points()
        .iter()
        .zip(&solved)
        .filter_map(|(f, (_, w))| w.map(|w| (*f, w)))
        .collect();
    Ok(SweepResult {
        freqs: grid.points().to_vec(),
        gain: solved.into_iter().map(|(g, _)| g).collect(),
        meta: SweepMeta {
            source: source.to_string(),
            probe,
            magnitude_only: false,
        },
        warnings,
    })
}

//! Small-signal AC circuit solving.
//!
//! Linear R/C/L networks driven by AC voltage sources are solved with
//! complex-valued modified nodal analysis: node voltages plus one current
//! unknown per voltage source, assembled into a dense system and factored
//! with partial-pivoting LU. Circuits in this crate stay below a few dozen
//! nodes, so no sparse machinery is involved.

mod error;
mod lu;
mod mna;
mod netlist;
mod sweep;

pub use error::CircuitError;
pub use mna::{solve_ac, AcSolution, KclReport, SolverWarning, CONDITION_WARN_THRESHOLD};
pub use netlist::{parse_netlist, Element, ElementKind, Netlist, NodeId};
pub use sweep::{transfer, FrequencyGrid, GridSpacing, SweepMeta, SweepResult};

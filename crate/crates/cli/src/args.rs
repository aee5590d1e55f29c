use std::path::PathBuf;

use bodylink_core::circuit::{FrequencyGrid, NodeId};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// EQS body-channel modeling and security analysis.
#[derive(Debug, Parser)]
#[command(name = "bodylink", version)]
pub struct Cli {
    /// Scenario/config file (TOML). Relative paths also resolve against
    /// $BODYLINK_CONFIG_DIR.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Format for scalar reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnvArg {
    OpenAir,
    Anechoic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LoadArg {
    Capacitive,
    Resistive,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep the transfer of a netlist to a probe pair (CSV).
    Solve(SolveArgs),
    /// Sweep a body-channel scenario with region labels (CSV).
    Sweep(SweepArgs),
    /// Snooper SNR and safe operating points (JSON).
    Attack(AttackArgs),
    /// Signal-to-interference ratio and co-channel capacity (JSON).
    Sir(SirArgs),
    /// FCC unintentional-radiator limits and margins (JSON).
    Fcc(FccArgs),
    /// Region boundaries of the stitched response (JSON).
    Regions(RegionsArgs),
}

fn parse_grid(s: &str) -> Result<FrequencyGrid, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_probe(s: &str) -> Result<(NodeId, NodeId), String> {
    let node = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map(NodeId)
            .map_err(|_| format!("bad node '{t}'"))
    };
    match s.split_once(',') {
        Some((p, n)) => Ok((node(p)?, node(n)?)),
        None => Ok((node(s)?, NodeId::GROUND)),
    }
}

fn parse_interferer(s: &str) -> Result<(f64, f64), String> {
    let (v, d) = s
        .split_once('@')
        .ok_or_else(|| format!("expected VOLTS@METERS, got '{s}'"))?;
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("bad number '{t}'"));
    Ok((num(v)?, num(d)?))
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Netlist file.
    #[arg(long)]
    pub netlist: PathBuf,

    /// Probe node pair `P,N` (a single node probes against ground).
    #[arg(long, value_parser = parse_probe)]
    pub probe: (NodeId, NodeId),

    /// Driven source label; defaults to the first source.
    #[arg(long)]
    pub source: Option<String>,

    /// Grid `start:stop:N[log|lin]`.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<FrequencyGrid>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Scenario file; same format as --config.
    #[arg(long)]
    pub scenario: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub env: Option<EnvArg>,

    #[arg(long, value_enum)]
    pub load: Option<LoadArg>,

    /// Load value in ohms or farads.
    #[arg(long)]
    pub load_value: Option<f64>,

    /// Body separation for inter-body scenarios, meters.
    #[arg(long)]
    pub distance: Option<f64>,

    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<FrequencyGrid>,

    /// Emit the EQS circuit gain (with phase) instead of the stitched total.
    #[arg(long)]
    pub eqs_only: bool,

    /// Also write the built channel netlist here.
    #[arg(long)]
    pub export_netlist: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    /// SNR at the intended receiver, dB.
    #[arg(long, allow_negative_numbers = true)]
    pub snr: Option<f64>,

    /// Attacker distance, meters.
    #[arg(long)]
    pub distance: Option<f64>,

    /// Decoding threshold, dB.
    #[arg(long, allow_negative_numbers = true)]
    pub threshold: Option<f64>,

    /// Distance for the safe-SNR report, meters.
    #[arg(long)]
    pub protect_distance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SirArgs {
    /// Signal amplitude on the user's body, volts.
    #[arg(long)]
    pub user: Option<f64>,

    /// Interferer `VOLTS@METERS`; repeatable. Replaces the configured list.
    #[arg(long = "interferer", value_parser = parse_interferer)]
    pub interferers: Vec<(f64, f64)>,

    /// Minimum SIR for the capacity report, dB.
    #[arg(long, allow_negative_numbers = true)]
    pub sir_min: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FccArgs {
    /// Single frequency, Hz.
    #[arg(long, conflicts_with = "grid")]
    pub freq: Option<f64>,

    /// Compliance check over a grid.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<FrequencyGrid>,
}

#[derive(Debug, Args)]
pub struct RegionsArgs {
    #[arg(long, value_enum)]
    pub env: Option<EnvArg>,

    #[arg(long, value_enum)]
    pub load: Option<LoadArg>,

    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<FrequencyGrid>,
}

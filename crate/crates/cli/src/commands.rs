use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use bodylink_core::channel::ChannelError;
use bodylink_core::circuit::{parse_netlist, transfer, CircuitError, FrequencyGrid};
use bodylink_core::config::{Config, ConfigError, EnvironmentKind, LoadKind};
use bodylink_core::fcc::{fcc_limit, field_at, is_unintentional_radiator, margin_factor, FccError};
use bodylink_core::multiregion::{crossover_frequency, total_response, RegionError};
use bodylink_core::risk::{
    is_attack_feasible, max_cochannel_users, max_safe_snr, min_safe_distance, sir_db,
    snooper_snr_db, RiskError,
};
use bodylink_core::RegionConfig;
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::{
    AttackArgs, Cli, Command, EnvArg, FccArgs, Format, LoadArg, RegionsArgs, SirArgs, SolveArgs,
    SweepArgs,
};
use crate::output::{json_line, num, round_all, table};

/// Directory searched for relative config paths and `default.toml`.
pub const CONFIG_DIR_VAR: &str = "BODYLINK_CONFIG_DIR";
const DEFAULT_CONFIG_NAME: &str = "default.toml";
const CROSSOVER_SCAN: &str = "1e5:1e9:2001log";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error(transparent)]
    Channel(#[from] ChannelError),

    #[error(transparent)]
    Circuit(#[from] CircuitError),

    #[error(transparent)]
    Region(#[from] RegionError),

    #[error(transparent)]
    Risk(#[from] RiskError),

    #[error(transparent)]
    Fcc(#[from] FccError),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Read { .. } | CliError::Write { .. } => "io",
            _ => "model",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Solve(a) => solve(a),
        Command::Sweep(a) => sweep(cli, a),
        Command::Attack(a) => render(cli.format, attack(cli, a)?),
        Command::Sir(a) => render(cli.format, sir(cli, a)?),
        Command::Fcc(a) => render(cli.format, fcc(cli, a)?),
        Command::Regions(a) => render(cli.format, regions(cli, a)?),
    }
}

fn render(format: Format, mut value: Value) -> Result<String, CliError> {
    round_all(&mut value);
    Ok(match format {
        Format::Json => json_line(&value),
        Format::Table => table(&value),
    })
}

fn resolve(path: &Path) -> PathBuf {
    if path.is_absolute() || path.exists() {
        return path.to_path_buf();
    }
    match env::var_os(CONFIG_DIR_VAR) {
        Some(dir) => Path::new(&dir).join(path),
        None => path.to_path_buf(),
    }
}

fn load_config(cli: &Cli, scenario: Option<&Path>) -> Result<Config, CliError> {
    if let Some(path) = scenario.or(cli.config.as_deref()) {
        return Ok(Config::load(&resolve(path))?);
    }
    if let Some(dir) = env::var_os(CONFIG_DIR_VAR) {
        let default = Path::new(&dir).join(DEFAULT_CONFIG_NAME);
        if default.is_file() {
            return Ok(Config::load(&default)?);
        }
    }
    Ok(Config::default())
}

fn apply_env_load(cfg: &mut Config, env: Option<EnvArg>, load: Option<LoadArg>) {
    if let Some(e) = env {
        cfg.body.environment = match e {
            EnvArg::OpenAir => EnvironmentKind::OpenAir,
            EnvArg::Anechoic => EnvironmentKind::Anechoic,
        };
    }
    if let Some(l) = load {
        let kind = match l {
            LoadArg::Capacitive => LoadKind::Capacitive,
            LoadArg::Resistive => LoadKind::Resistive,
        };
        if kind != cfg.load.kind {
            cfg.load.value = None;
        }
        cfg.load.kind = kind;
    }
}

fn grid_or(cfg: &Config, grid: &Option<FrequencyGrid>) -> Result<FrequencyGrid, CliError> {
    match grid {
        Some(g) => Ok(g.clone()),
        None => Ok(cfg.grid()?),
    }
}

fn csv(write: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> String {
    let mut buf = Vec::new();
    write(&mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

fn solve(a: &SolveArgs) -> Result<String, CliError> {
    let text = fs::read_to_string(&a.netlist).map_err(|source| CliError::Read {
        path: a.netlist.clone(),
        source,
    })?;
    let netlist = parse_netlist(&text)?;
    let source = match &a.source {
        Some(s) => s.clone(),
        None => netlist
            .sources()
            .next()
            .map(|e| e.label.clone())
            .ok_or_else(|| CliError::Usage("netlist has no voltage source".into()))?,
    };
    let grid = a.grid.clone().unwrap_or_default();
    let result = transfer(&netlist, &source, a.probe, &grid)?;
    Ok(csv(|w| result.write_csv(w)))
}

fn sweep(cli: &Cli, a: &SweepArgs) -> Result<String, CliError> {
    let mut cfg = load_config(cli, a.scenario.as_deref())?;
    apply_env_load(&mut cfg, a.env, a.load);
    if let Some(v) = a.load_value {
        cfg.load.value = Some(v);
    }
    if let Some(d) = a.distance {
        cfg.coupling.distance = d;
    }
    let grid = grid_or(&cfg, &a.grid)?;
    let regions = cfg.region_config()?;
    if let Some(path) = &a.export_netlist {
        fs::write(path, regions.eqs.netlist().to_text()).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?;
    }
    let eqs = regions.eqs.sweep(&grid)?;
    let labels = regions.classify_sweep(&eqs);
    let result = if a.eqs_only {
        eqs
    } else {
        total_response(&eqs, &regions.em, &regions.device, &grid)?
    };
    Ok(csv(|w| result.write_csv_with_labels(w, &labels)))
}

fn attack(cli: &Cli, a: &AttackArgs) -> Result<Value, CliError> {
    let mut cfg = load_config(cli, None)?;
    let at = &mut cfg.attack;
    at.snr_intended_db = a.snr.unwrap_or(at.snr_intended_db);
    at.attacker_distance = a.distance.unwrap_or(at.attacker_distance);
    at.snr_threshold_db = a.threshold.unwrap_or(at.snr_threshold_db);
    at.protect_distance = a.protect_distance.unwrap_or(at.protect_distance);
    let s = cfg.attack_scenario()?;
    let safe_distance =
        match min_safe_distance(s.snr_intended_db, s.snr_threshold_db, &s.coupling, s.c_body) {
            Ok(d) => num(d),
            Err(RiskError::Unbounded { .. }) => num(f64::INFINITY),
            Err(e) => return Err(e.into()),
        };
    let protect = cfg.attack.protect_distance;
    Ok(json!({
        "inputs": {
            "snr_intended_db": num(s.snr_intended_db),
            "attacker_distance_m": num(s.attacker_distance),
            "snr_threshold_db": num(s.snr_threshold_db),
            "protect_distance_m": num(protect),
        },
        "snooper_snr_db": num(snooper_snr_db(&s)),
        "feasible": is_attack_feasible(&s),
        "min_safe_distance_m": safe_distance,
        "max_safe_snr_db": num(max_safe_snr(s.snr_threshold_db, protect, &s.coupling, s.c_body)?),
    }))
}

fn sir(cli: &Cli, a: &SirArgs) -> Result<Value, CliError> {
    let mut cfg = load_config(cli, None)?;
    let i = &mut cfg.interference;
    i.v_sig_user = a.user.unwrap_or(i.v_sig_user);
    if !a.interferers.is_empty() {
        i.interferers = a.interferers.iter().map(|&(v, d)| [v, d]).collect();
    }
    i.sir_min_db = a.sir_min.unwrap_or(i.sir_min_db);
    let s = cfg.interference_scenario()?;
    let sir_min = cfg.interference.sir_min_db;
    // Capacity assumes identical copies of the first interferer.
    let capacity = match s.interferers.first() {
        Some(&(v, d)) => json!(max_cochannel_users(
            s.v_sig_user,
            v,
            d,
            sir_min,
            &s.coupling,
            s.c_body
        )?),
        None => Value::Null,
    };
    let interferers: Vec<Value> = s
        .interferers
        .iter()
        .map(|&(v, d)| json!({"v_sig": num(v), "distance_m": num(d)}))
        .collect();
    Ok(json!({
        "inputs": {
            "v_sig_user": num(s.v_sig_user),
            "interferers": interferers,
            "sir_min_db": num(sir_min),
        },
        "sir_db": num(sir_db(&s)),
        "max_cochannel_users": capacity,
    }))
}

fn fcc(cli: &Cli, a: &FccArgs) -> Result<Value, CliError> {
    let cfg = load_config(cli, None)?;
    let model = cfg.field_model()?;
    if let Some(f) = a.freq {
        let (limit, distance) = fcc_limit(f)?;
        return Ok(json!({
            "freq_hz": num(f),
            "limit_uv_per_m": num(limit),
            "distance_m": num(distance),
            "field_uv_per_m": num(field_at(&model, distance) * 1e6),
            "margin": num(margin_factor(&model, f)?),
        }));
    }
    let grid = grid_or(&cfg, &a.grid)?;
    let report = is_unintentional_radiator(&model, grid.points())?;
    Ok(json!({
        "model": serde_json::to_value(model).expect("serializable"),
        "compliant": report.compliant,
        "violations": report.violations().count(),
        "rows": serde_json::to_value(&report.rows).expect("serializable"),
    }))
}

fn regions(cli: &Cli, a: &RegionsArgs) -> Result<Value, CliError> {
    let mut cfg = load_config(cli, None)?;
    apply_env_load(&mut cfg, a.env, a.load);
    let grid = grid_or(&cfg, &a.grid)?;
    let rc: RegionConfig = cfg.region_config()?;

    let labels = rc.classify_grid(&grid)?;
    let f = grid.points();
    let mut segments = Vec::new();
    let mut start = 0;
    for i in 1..=labels.len() {
        if i == labels.len() || labels[i] != labels[start] {
            segments.push(json!({
                "region": labels[start].as_str(),
                "start_hz": num(f[start]),
                "stop_hz": num(f[i - 1]),
            }));
            start = i;
        }
    }

    let scan: FrequencyGrid = CROSSOVER_SCAN.parse()?;
    let scan_labels = rc.classify_grid(&scan)?;
    let mut crossovers = Vec::new();
    for w in scan_labels.windows(2).filter(|w| w[0] != w[1]) {
        crossovers.push(json!({
            "from": w[0].as_str(),
            "to": w[1].as_str(),
            "freq_hz": num(crossover_frequency(&rc, w[0], w[1])?),
        }));
    }

    Ok(json!({
        "environment": cfg.environment().name(),
        "load": match cfg.load.kind { LoadKind::Capacitive => "capacitive", LoadKind::Resistive => "resistive" },
        "eqs_plateau_db": num(rc.eqs.gain_db_at(bodylink_core::channel::EQS_REFERENCE_FREQ)?),
        "segments": segments,
        "crossovers": crossovers,
    }))
}

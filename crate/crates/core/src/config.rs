//! Run configuration: defaults, a JSON config file, then command-line flags,
//! with the rightmost source winning.

use std::path::PathBuf;

use clap::{Args, Parser};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::adapt::{AdaptationPolicy, Rung};
use crate::curve::{CurveFamily, LossCurve};
use crate::emit::OutputFormat;
use crate::error::{Error, Result};
use crate::link::{BerModel, RadioParams};
use crate::sweep::{
    SweepSpec, SweptAxis, DEFAULT_AREA_SIDES_M, DEFAULT_FREQUENCIES_HZ, DEFAULT_PACKET_SIZES,
    DEFAULT_POWERS_DBM,
};
use crate::topology::{ordered_pair_count, AreaSpec};

/// Fully merged settings for one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub num_uavs: usize,
    pub area_width_m: f64,
    pub area_height_m: f64,
    pub num_pairs: usize,
    pub tx_power_dbm: f64,
    pub noise_floor_dbm: f64,
    pub frequency_hz: f64,
    pub ber_model: BerModel,
    /// Accepted for completeness; no formula uses it.
    pub bandwidth_hz: f64,
    pub packet_sizes: Vec<u64>,
    pub powers_dbm: Vec<f64>,
    pub frequencies_hz: Vec<f64>,
    pub area_sides_m: Vec<f64>,
    pub uav_counts: Vec<usize>,
    pub replicates: u32,
    pub curves: Vec<LossCurve>,
    pub policy: AdaptationPolicy,
    pub query_loss_percent: f64,
    pub query_power_dbm: f64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let radio = RadioParams::default();
        Self {
            seed: 42,
            num_uavs: 20,
            area_width_m: 1500.0,
            area_height_m: 1500.0,
            num_pairs: 10,
            tx_power_dbm: radio.tx_power_dbm,
            noise_floor_dbm: radio.noise_floor_dbm,
            frequency_hz: radio.frequency_hz,
            ber_model: radio.ber_model,
            bandwidth_hz: 2e6,
            packet_sizes: DEFAULT_PACKET_SIZES.to_vec(),
            powers_dbm: DEFAULT_POWERS_DBM.to_vec(),
            frequencies_hz: DEFAULT_FREQUENCIES_HZ.to_vec(),
            area_sides_m: DEFAULT_AREA_SIDES_M.to_vec(),
            uav_counts: vec![5, 10, 20, 40, 80],
            replicates: 1,
            curves: CurveFamily::default().into(),
            policy: AdaptationPolicy::default(),
            query_loss_percent: 20.0,
            query_power_dbm: 9.0,
            format: OutputFormat::Csv,
            out: None,
        }
    }
}

fn strictly_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] < w[1])
}

fn positive(v: f64) -> bool {
    v > 0.0 && v.is_finite()
}

impl RunConfig {
    pub fn radio(&self) -> RadioParams {
        RadioParams {
            tx_power_dbm: self.tx_power_dbm,
            noise_floor_dbm: self.noise_floor_dbm,
            frequency_hz: self.frequency_hz,
            ber_model: self.ber_model,
        }
    }

    pub fn area(&self) -> AreaSpec {
        AreaSpec {
            width: self.area_width_m,
            height: self.area_height_m,
        }
    }

    pub fn curve_family(&self) -> Result<CurveFamily> {
        CurveFamily::new(self.curves.clone()).map_err(|e| Error::config("curves", e.to_string()))
    }

    pub fn sweep_spec(&self, axis: SweptAxis) -> SweepSpec {
        let axis_values = match axis {
            SweptAxis::PacketSizeByPower => self.powers_dbm.clone(),
            SweptAxis::Frequency => self.frequencies_hz.clone(),
            SweptAxis::Area => self.area_sides_m.clone(),
            SweptAxis::UavCount => self.uav_counts.iter().map(|&n| n as f64).collect(),
        };
        SweepSpec {
            base_seed: self.seed,
            num_uavs: self.num_uavs,
            area: self.area(),
            num_pairs: self.num_pairs,
            radio: self.radio(),
            packet_sizes: self.packet_sizes.clone(),
            swept_axis: axis,
            axis_values,
            replicates: self.replicates,
        }
    }

    /// Range checks; every failure names the offending key.
    pub fn validate(&self) -> Result<()> {
        let fail = |key: &str, msg: &str| Err(Error::config(key, msg));
        if self.num_uavs < 2 {
            return fail("num_uavs", "must be at least 2");
        }
        if !positive(self.area_width_m) {
            return fail("area_width_m", "must be positive");
        }
        if !positive(self.area_height_m) {
            return fail("area_height_m", "must be positive");
        }
        if self.num_pairs == 0 || self.num_pairs > ordered_pair_count(self.num_uavs) {
            return fail("num_pairs", "must be between 1 and num_uavs·(num_uavs−1)");
        }
        if !self.tx_power_dbm.is_finite() {
            return fail("tx_power_dbm", "must be finite");
        }
        if !self.noise_floor_dbm.is_finite() {
            return fail("noise_floor_dbm", "must be finite");
        }
        if !positive(self.frequency_hz) {
            return fail("frequency_hz", "must be positive");
        }
        if !positive(self.bandwidth_hz) {
            return fail("bandwidth_hz", "must be positive");
        }
        if self.packet_sizes.is_empty() || self.packet_sizes.contains(&0) {
            return fail("packet_sizes", "must be a non-empty list of positive bit counts");
        }
        if self.powers_dbm.is_empty()
            || !strictly_increasing(&self.powers_dbm)
            || self.powers_dbm.iter().any(|p| !p.is_finite())
        {
            return fail("powers_dbm", "must be non-empty and strictly increasing");
        }
        if self.frequencies_hz.is_empty()
            || !strictly_increasing(&self.frequencies_hz)
            || !self.frequencies_hz.iter().all(|&f| positive(f))
        {
            return fail("frequencies_hz", "must be non-empty, positive and strictly increasing");
        }
        if self.area_sides_m.is_empty()
            || !strictly_increasing(&self.area_sides_m)
            || !self.area_sides_m.iter().all(|&s| positive(s))
        {
            return fail("area_sides_m", "must be non-empty, positive and strictly increasing");
        }
        if self.uav_counts.is_empty()
            || self.uav_counts.windows(2).any(|w| w[0] >= w[1])
            || self.uav_counts[0] < 2
        {
            return fail("uav_counts", "must be non-empty, at least 2 and strictly increasing");
        }
        if let Some(&n) = self
            .uav_counts
            .iter()
            .find(|&&n| ordered_pair_count(n) < self.num_pairs)
        {
            return Err(Error::config(
                "uav_counts",
                format!("{n} UAVs cannot supply {} pairs", self.num_pairs),
            ));
        }
        if self.replicates == 0 {
            return fail("replicates", "must be at least 1");
        }
        let family = self.curve_family()?;
        self.policy
            .validate(&family)
            .map_err(|e| Error::config("policy", e.to_string()))?;
        if !self.query_loss_percent.is_finite() {
            return fail("query_loss_percent", "must be finite");
        }
        if !self.query_power_dbm.is_finite() {
            return fail("query_power_dbm", "must be finite");
        }
        Ok(())
    }
}

fn parse_fields<const N: usize>(item: &str) -> std::result::Result<[f64; N], String> {
    let parts: Vec<f64> = item
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|_| format!("`{item}` needs {N} colon-separated numbers"))
}

/// One `power:a:b` curve.
fn parse_curve(item: &str) -> std::result::Result<LossCurve, String> {
    parse_fields::<3>(item).map(|[p, a, b]| LossCurve::new(p, a, b))
}

/// One `power:threshold` rung.
fn parse_rung(item: &str) -> std::result::Result<Rung, String> {
    parse_fields::<2>(item).map(|[power_dbm, loss_threshold_percent]| Rung {
        power_dbm,
        loss_threshold_percent,
    })
}

/// Command-line overrides. Every flag mirrors a config key in kebab case.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigFlags {
    /// JSON config file merged over the defaults.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Also write the effective merged configuration to this path.
    #[arg(long, value_name = "PATH")]
    pub echo_config: Option<PathBuf>,

    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub num_uavs: Option<usize>,
    #[arg(long)]
    pub area_width_m: Option<f64>,
    #[arg(long)]
    pub area_height_m: Option<f64>,
    #[arg(long)]
    pub num_pairs: Option<usize>,
    #[arg(long)]
    pub tx_power_dbm: Option<f64>,
    #[arg(long)]
    pub noise_floor_dbm: Option<f64>,
    #[arg(long)]
    pub frequency_hz: Option<f64>,
    #[arg(long, value_enum)]
    pub ber_model: Option<BerModelArg>,
    #[arg(long)]
    pub bandwidth_hz: Option<f64>,
    /// Comma-separated packet sizes in bits.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub packet_sizes: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub powers_dbm: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub frequencies_hz: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub area_sides_m: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub uav_counts: Option<Vec<usize>>,
    #[arg(long)]
    pub replicates: Option<u32>,
    /// Curve family as `power:a:b,…`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_curve)]
    pub curves: Option<Vec<LossCurve>>,
    /// Policy ladder as `power:threshold,…`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_rung)]
    pub rungs: Option<Vec<Rung>>,
    #[arg(long)]
    pub initial_packet_bits: Option<u64>,
    #[arg(long)]
    pub growth_step_bits: Option<u64>,
    #[arg(long)]
    pub backoff_bits: Option<u64>,
    #[arg(long)]
    pub max_ticks: Option<u64>,
    #[arg(long, visible_alias = "loss")]
    pub query_loss_percent: Option<f64>,
    #[arg(long, visible_alias = "power")]
    pub query_power_dbm: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// Flag spelling of [`BerModel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BerModelArg {
    CodeVariant,
    TextVariant,
}

impl From<BerModelArg> for BerModel {
    fn from(arg: BerModelArg) -> Self {
        match arg {
            BerModelArg::CodeVariant => BerModel::CodeVariant,
            BerModelArg::TextVariant => BerModel::TextVariant,
        }
    }
}

#[derive(Debug, Parser)]
#[command(no_binary_name = true, allow_negative_numbers = true)]
struct FlagsOnly {
    #[command(flatten)]
    flags: ConfigFlags,
}

/// Parses a bare flag list (no program name, no subcommand).
pub fn parse_flags<S: AsRef<str>>(flags: &[S]) -> Result<ConfigFlags> {
    FlagsOnly::try_parse_from(flags.iter().map(|s| s.as_ref()))
        .map(|f| f.flags)
        .map_err(clap_error_to_config)
}

pub(crate) fn clap_error_to_config(err: clap::Error) -> Error {
    use clap::error::{ContextKind, ContextValue};
    let key = match err.get(ContextKind::InvalidArg) {
        Some(ContextValue::String(arg)) => arg
            .trim_start_matches('-')
            .split([' ', '=', '<'])
            .next()
            .unwrap_or("flags")
            .replace('-', "_"),
        _ => "flags".to_string(),
    };
    let message = err.render().to_string();
    let message = message.lines().next().unwrap_or_default().trim_start_matches("error: ");
    Error::config(key, message)
}

fn config_file_value(contents: &str) -> Result<serde_json::Map<String, Value>> {
    if contents.trim().is_empty() {
        return Ok(serde_json::Map::new());
    }
    match serde_json::from_str::<Value>(contents) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(Error::config("config", "top level must be a JSON object")),
        Err(e) => Err(Error::config("config", format!("malformed JSON: {e}"))),
    }
}

/// Merges defaults, the config file contents and the flags.
pub fn parse_config(contents: &str, flags: &ConfigFlags) -> Result<RunConfig> {
    let file = config_file_value(contents)?;
    let known = match serde_json::to_value(RunConfig::default()).expect("defaults serialize") {
        Value::Object(map) => map,
        _ => unreachable!("RunConfig serializes to an object"),
    };
    for (key, value) in &file {
        if !known.contains_key(key) {
            return Err(Error::config(key.as_str(), "unknown key"));
        }
        let mut single = serde_json::Map::new();
        single.insert(key.clone(), value.clone());
        if let Err(e) = serde_json::from_value::<RunConfig>(Value::Object(single)) {
            return Err(Error::config(key.as_str(), e.to_string()));
        }
    }
    let mut config: RunConfig = serde_json::from_value(Value::Object(file))
        .map_err(|e| Error::config("config", e.to_string()))?;
    apply_flags(&mut config, flags);
    config.validate()?;
    Ok(config)
}

/// Reads `--config` if given, then merges.
pub fn load_config(flags: &ConfigFlags) -> Result<RunConfig> {
    let contents = match &flags.config {
        Some(path) => std::fs::read_to_string(path).map_err(|e| {
            Error::config("config", format!("cannot read {}: {e}", path.display()))
        })?,
        None => String::new(),
    };
    parse_config(&contents, flags)
}

fn apply_flags(config: &mut RunConfig, flags: &ConfigFlags) {
    macro_rules! set {
        ($($field:ident),* $(,)?) => {
            $(if let Some(v) = &flags.$field { config.$field = v.clone().into(); })*
        };
    }
    set!(
        seed,
        num_uavs,
        area_width_m,
        area_height_m,
        num_pairs,
        tx_power_dbm,
        noise_floor_dbm,
        frequency_hz,
        ber_model,
        bandwidth_hz,
        packet_sizes,
        powers_dbm,
        frequencies_hz,
        area_sides_m,
        uav_counts,
        replicates,
        curves,
        query_loss_percent,
        query_power_dbm,
        format,
    );
    if let Some(rungs) = &flags.rungs {
        config.policy.rungs = rungs.clone();
    }
    if let Some(v) = flags.initial_packet_bits {
        config.policy.initial_packet_bits = v;
    }
    if let Some(v) = flags.growth_step_bits {
        config.policy.growth_step_bits = v;
    }
    if let Some(v) = flags.backoff_bits {
        config.policy.backoff_bits = v;
    }
    if let Some(v) = flags.max_ticks {
        config.policy.max_ticks = v;
    }
    if let Some(out) = &flags.out {
        config.out = Some(out.clone());
    }
}

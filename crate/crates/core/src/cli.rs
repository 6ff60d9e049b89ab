//! The `fanet-sim` command: one subcommand per dataset.

use std::io::Write;
use std::path::Path;

use clap::{Parser, ValueEnum};

use crate::adapt::run_adaptation;
use crate::config::{load_config, ConfigFlags, RunConfig};
use crate::curve::{fit_log_curve, grid_oracle_predict, predict_packet_size};
use crate::emit::{emit_table, Prediction, Table};
use crate::error::{Error, Result};
use crate::sweep::{run_sweep, SweptAxis};
use crate::topology::generate_topology;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subcommand {
    /// UAV positions and communicating pairs.
    Topology,
    /// Loss vs packet size for each transmit power.
    SweepPower,
    /// Loss vs packet size for each carrier frequency.
    SweepFrequency,
    /// Loss vs packet size for each square area side.
    SweepArea,
    /// Loss vs packet size for each swarm size.
    SweepCount,
    /// Logarithmic curves fitted to the power sweep.
    Fit,
    /// Packet size for a target loss and power.
    Predict,
    /// Threshold-driven power/packet-size adaptation trace.
    Adapt,
}

#[derive(Debug, Parser)]
#[command(name = "fanet-sim", version, about, allow_negative_numbers = true)]
struct Cli {
    #[arg(value_enum)]
    command: Subcommand,
    #[command(flatten)]
    flags: ConfigFlags,
}

/// Runs one subcommand and returns the rendered document.
pub fn run_subcommand(name: Subcommand, config: &RunConfig) -> Result<String> {
    let format = config.format;
    let sweep = |axis| -> Result<String> {
        let result = run_sweep(&config.sweep_spec(axis))?;
        Ok(emit_table(Table::Sweep(&result), format))
    };
    match name {
        Subcommand::Topology => {
            let topology =
                generate_topology(config.seed, config.num_uavs, config.area(), config.num_pairs)?;
            Ok(emit_table(Table::Topology(&topology), format))
        }
        Subcommand::SweepPower => sweep(SweptAxis::PacketSizeByPower),
        Subcommand::SweepFrequency => sweep(SweptAxis::Frequency),
        Subcommand::SweepArea => sweep(SweptAxis::Area),
        Subcommand::SweepCount => sweep(SweptAxis::UavCount),
        Subcommand::Fit => {
            let result = run_sweep(&config.sweep_spec(SweptAxis::PacketSizeByPower))?;
            let curves = config
                .powers_dbm
                .iter()
                .map(|&power| {
                    let points: Vec<(f64, f64)> = config
                        .packet_sizes
                        .iter()
                        .zip(result.column(power))
                        .map(|(&n, loss)| (n as f64, loss))
                        .collect();
                    fit_log_curve(&points, power)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(emit_table(Table::Curves(&curves), format))
        }
        Subcommand::Predict => {
            let family = config.curve_family()?;
            let (loss, power) = (config.query_loss_percent, config.query_power_dbm);
            let prediction = Prediction {
                loss_percent: loss,
                power_dbm: power,
                analytic_bits: predict_packet_size(loss, power, &family)?,
                grid_bits: match family.at_power(power) {
                    Some(_) => Some(grid_oracle_predict(loss, power, &family)?),
                    None => None,
                },
            };
            Ok(emit_table(Table::Prediction(&prediction), format))
        }
        Subcommand::Adapt => {
            let trace = run_adaptation(&config.policy, &config.curve_family()?)?;
            Ok(emit_table(Table::Trace(&trace), format))
        }
    }
}

/// Writes through a temporary sibling file so a failed run never leaves a
/// partial document at `path`.
pub fn write_atomically(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Parses `args` (including the program name), runs, and writes the
/// document to `--out` or `stdout`.
pub fn execute<I, T>(args: I, stdout: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(crate::config::clap_error_to_config)?;
    let config = load_config(&cli.flags)?;
    if let Some(path) = &cli.flags.echo_config {
        let mut echo = serde_json::to_string_pretty(&config).expect("config serializes");
        echo.push('\n');
        write_atomically(path, &echo)?;
    }
    let document = run_subcommand(cli.command, &config)?;
    match &config.out {
        Some(path) => write_atomically(path, &document),
        None => Ok(stdout.write_all(document.as_bytes())?),
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    if let Err(e) = Cli::try_parse_from(&args) {
        use clap::error::ErrorKind;
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            let _ = e.print();
            return 0;
        }
    }
    let stdout = std::io::stdout();
    match execute(args, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("fanet-sim: {e}");
            e.exit_code()
        }
    }
}

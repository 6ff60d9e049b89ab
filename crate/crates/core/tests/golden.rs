//! Frozen outputs for the default configuration.
//!
//! Regenerate with `FANET_BLESS=1 cargo test -p fanet-sim --test golden`.

use std::path::PathBuf;

use fanet_sim::cli::{run_subcommand, Subcommand};
use fanet_sim::config::RunConfig;
use fanet_sim::emit::OutputFormat;

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(name)
}

fn check(name: &str, command: Subcommand, format: OutputFormat) {
    let config = RunConfig {
        format,
        ..RunConfig::default()
    };
    let produced = run_subcommand(command, &config).unwrap();
    let path = golden_path(name);
    if std::env::var_os("FANET_BLESS").is_some() {
        std::fs::write(&path, &produced).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
    assert_eq!(produced, expected, "{name} drifted from its golden file");
}

#[test]
fn topology_document() {
    check("topology.json", Subcommand::Topology, OutputFormat::Json);
}

#[test]
fn power_sweep() {
    check("sweep_power.csv", Subcommand::SweepPower, OutputFormat::Csv);
}

#[test]
fn frequency_sweep() {
    check("sweep_frequency.csv", Subcommand::SweepFrequency, OutputFormat::Csv);
}

#[test]
fn area_sweep() {
    check("sweep_area.csv", Subcommand::SweepArea, OutputFormat::Csv);
}

#[test]
fn count_sweep() {
    check("sweep_count.csv", Subcommand::SweepCount, OutputFormat::Csv);
}

#[test]
fn fitted_curves() {
    check("fit.csv", Subcommand::Fit, OutputFormat::Csv);
}

#[test]
fn prediction() {
    check("predict.csv", Subcommand::Predict, OutputFormat::Csv);
}

#[test]
fn adaptation_trace() {
    check("adapt.csv", Subcommand::Adapt, OutputFormat::Csv);
}

#[test]
fn adaptation_trace_json() {
    check("adapt.json", Subcommand::Adapt, OutputFormat::Json);
}

use std::path::Path;
use std::process::{Command, Output};

use fanet_sim::cli::{execute, run_subcommand, Subcommand};
use fanet_sim::config::RunConfig;
use fanet_sim::emit::OutputFormat;
use fanet_sim::topology::parse_topology;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fanet-sim"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

const ALL: [&str; 8] = [
    "topology",
    "sweep-power",
    "sweep-frequency",
    "sweep-area",
    "sweep-count",
    "fit",
    "predict",
    "adapt",
];

#[test]
fn every_subcommand_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for name in ALL {
        for format in ["csv", "json"] {
            let a = dir.path().join(format!("{name}-a.{format}"));
            let b = dir.path().join(format!("{name}-b.{format}"));
            for path in [&a, &b] {
                let out = run(&[name, "--format", format, "--out", path.to_str().unwrap()]);
                assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
                assert!(out.stdout.is_empty());
            }
            let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
            assert!(!a.is_empty());
            assert_eq!(a, b, "{name} {format} differs between runs");
        }
    }
}

#[test]
fn adapt_trace_ends_at_tick_36() {
    let csv = stdout_of(&["adapt"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "tick,packet_bits,loss_percent,power_dbm,event");
    assert_eq!(lines.len(), 38);
    assert_eq!(*lines.last().unwrap(), "36,340,30.1395,9,terminated");
}

#[test]
fn predict_prints_analytic_and_grid() {
    let csv = stdout_of(&["predict", "--loss", "20", "--power", "9"]);
    assert_eq!(csv, "loss_percent,power_dbm,analytic_bits,grid_bits\n20,9,66.2575,70\n");
    let between = stdout_of(&["predict", "--loss", "30", "--power", "6"]);
    assert!(between.ends_with(",\n"), "grid is blank off-anchor: {between}");
}

#[test]
fn topology_document_parses_back() {
    let doc = stdout_of(&["topology", "--format", "json", "--seed", "7", "--num-uavs", "6", "--num-pairs", "4"]);
    let topology = parse_topology(&doc).unwrap();
    assert_eq!(topology.seed, 7);
    assert_eq!(topology.positions.len(), 6);
    assert_eq!(topology.pairs.len(), 4);
    let csv = stdout_of(&["topology", "--num-uavs", "3", "--num-pairs", "2"]);
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"powers_dbm": [5, 9], "packet_sizes": [100], "seed": 1}"#).unwrap();
    let from_file = stdout_of(&["sweep-power", "--config", cfg.to_str().unwrap()]);
    assert_eq!(from_file.lines().count(), 3);
    let overridden = stdout_of(&["sweep-power", "--config", cfg.to_str().unwrap(), "--powers-dbm", "-3,0,3"]);
    assert_eq!(overridden.lines().count(), 4);
    assert!(overridden.lines().nth(1).unwrap().starts_with("-3,100,"));
}

#[test]
fn echoed_config_reproduces_output() {
    let dir = tempfile::tempdir().unwrap();
    let echo = dir.path().join("effective.json");
    let first = stdout_of(&[
        "sweep-area",
        "--replicates",
        "3",
        "--seed",
        "11",
        "--echo-config",
        echo.to_str().unwrap(),
    ]);
    let again = stdout_of(&["sweep-area", "--config", echo.to_str().unwrap()]);
    assert_eq!(first, again);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["adapt"]), 0);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["sweep-power", "--frequency-hz", "-1"]), 2);
    assert_eq!(code(&["sweep-power", "--no-such-flag"]), 2);
    assert_eq!(code(&["launch"]), 2);
    assert_eq!(code(&["predict", "--power", "12"]), 3);
    assert_eq!(code(&["adapt", "--backoff-bits", "100"]), 3);
    assert_eq!(code(&["adapt", "--max-ticks", "5"]), 4);

    let out = run(&["sweep-power", "--frequency-hz", "-1"]);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1);
    assert!(stderr.contains("frequency_hz"), "{stderr}");
}

#[test]
fn failed_run_leaves_no_partial_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.csv");
    let status = run(&["adapt", "--max-ticks", "5", "--out", out.to_str().unwrap()]).status;
    assert_eq!(status.code(), Some(4));
    assert!(!out.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);

    std::fs::write(&out, "previous\n").unwrap();
    run(&["adapt", "--max-ticks", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "previous\n");
}

#[test]
fn execute_matches_run_subcommand() {
    let mut buf = Vec::new();
    execute(["fanet-sim", "fit", "--format", "json"], &mut buf).unwrap();
    let config = RunConfig {
        format: OutputFormat::Json,
        ..RunConfig::default()
    };
    assert_eq!(String::from_utf8(buf).unwrap(), run_subcommand(Subcommand::Fit, &config).unwrap());
    assert!(Path::new(env!("CARGO_BIN_EXE_fanet-sim")).exists());
}

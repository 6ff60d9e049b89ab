//! Deterministic link-level simulation of ad-hoc UAV networks.
//!
//! * [`rng`]: SplitMix64, the only source of randomness.
//! * [`topology`]: random constellations and communicating pairs.
//! * [`link`]: Friis path loss, SNR, BER and packet-loss probability.
//! * [`sweep`]: packet-size grids against power, frequency, area and swarm size.
//! * [`curve`]: logarithmic loss curves, fitting and packet-size prediction.
//! * [`adapt`]: threshold-driven power escalation with packet-size backoff.
//! * [`config`], [`emit`], [`cli`]: configuration, CSV/JSON output and the
//!   `fanet-sim` command.
//!
//! ```
//! use fanet_sim::curve::{predict_packet_size, CurveFamily};
//!
//! let bits = predict_packet_size(20.0, 9.0, &CurveFamily::default()).unwrap();
//! assert!((bits - 66.2575).abs() < 1e-3);
//! ```

pub mod adapt;
pub mod cli;
pub mod config;
pub mod curve;
pub mod emit;
pub mod error;
pub mod link;
pub mod rng;
pub mod sweep;
pub mod topology;

pub use error::{Error, Result};

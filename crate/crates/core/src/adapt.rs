//! Threshold-driven transmission adaptation.
//!
//! The packet size grows by a fixed step every tick while loss is read off
//! the curve for the current power. When loss reaches the current rung's
//! threshold the controller backs the packet size off and moves to the next
//! (higher) power; crossing the last rung's threshold ends the run.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::{evaluate_curve, CurveFamily};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rung {
    pub power_dbm: f64,
    pub loss_threshold_percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdaptationPolicy {
    pub rungs: Vec<Rung>,
    pub initial_packet_bits: u64,
    pub growth_step_bits: u64,
    pub backoff_bits: u64,
    pub max_ticks: u64,
}

impl Default for AdaptationPolicy {
    fn default() -> Self {
        Self {
            rungs: vec![
                Rung { power_dbm: 5.0, loss_threshold_percent: 50.0 },
                Rung { power_dbm: 7.0, loss_threshold_percent: 40.0 },
                Rung { power_dbm: 9.0, loss_threshold_percent: 30.0 },
            ],
            initial_packet_bits: 20,
            growth_step_bits: 10,
            backoff_bits: 20,
            max_ticks: 10_000,
        }
    }
}

impl AdaptationPolicy {
    pub fn validate(&self, family: &CurveFamily) -> Result<()> {
        if self.rungs.is_empty() {
            return Err(Error::InvalidArgument("policy needs at least one rung".into()));
        }
        if self.rungs.windows(2).any(|w| w[0].power_dbm >= w[1].power_dbm) {
            return Err(Error::InvalidArgument(
                "rung powers must be strictly increasing".into(),
            ));
        }
        if let Some(r) = self.rungs.iter().find(|r| family.at_power(r.power_dbm).is_none()) {
            return Err(Error::InvalidArgument(format!(
                "no loss curve configured for rung power {} dBm",
                r.power_dbm
            )));
        }
        if self.initial_packet_bits == 0 {
            return Err(Error::InvalidArgument("initial packet size must be at least 1 bit".into()));
        }
        if self.max_ticks == 0 {
            return Err(Error::InvalidArgument("max_ticks must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceEvent {
    None,
    Escalated,
    Terminated,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TraceEvent::None => "none",
            TraceEvent::Escalated => "escalated",
            TraceEvent::Terminated => "terminated",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceSample {
    /// Minutes since the start of transmission.
    pub tick: u64,
    pub packet_bits: u64,
    pub loss_percent: f64,
    pub power_dbm: f64,
    pub event: TraceEvent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ControllerState {
    pub tick: u64,
    pub packet_bits: u64,
    pub rung: usize,
    pub terminated: bool,
}

impl ControllerState {
    pub fn initial(policy: &AdaptationPolicy) -> Self {
        Self {
            tick: 0,
            packet_bits: policy.initial_packet_bits,
            rung: 0,
            terminated: false,
        }
    }
}

/// Samples the current state, then applies escalation or termination and
/// the unconditional growth step, in that order.
pub fn step(
    state: ControllerState,
    policy: &AdaptationPolicy,
    family: &CurveFamily,
) -> Result<(ControllerState, TraceSample)> {
    if state.terminated {
        return Err(Error::InvalidArgument("controller already terminated".into()));
    }
    let rung = policy.rungs.get(state.rung).ok_or_else(|| {
        Error::InvalidArgument(format!("rung index {} out of range", state.rung))
    })?;
    let curve = family.at_power(rung.power_dbm).ok_or_else(|| {
        Error::InvalidArgument(format!("no loss curve for {} dBm", rung.power_dbm))
    })?;
    let loss_percent = evaluate_curve(curve, state.packet_bits as f64)?;

    let mut next = state;
    let mut event = TraceEvent::None;
    if loss_percent >= rung.loss_threshold_percent {
        if state.rung + 1 == policy.rungs.len() {
            event = TraceEvent::Terminated;
            next.terminated = true;
        } else {
            if state.packet_bits <= policy.backoff_bits {
                return Err(Error::PolicyDegenerate(format!(
                    "backing off {} bits from a {}-bit packet leaves no payload",
                    policy.backoff_bits, state.packet_bits
                )));
            }
            event = TraceEvent::Escalated;
            next.packet_bits -= policy.backoff_bits;
            next.rung += 1;
        }
    }
    if !next.terminated {
        next.packet_bits += policy.growth_step_bits;
        next.tick += 1;
    }

    let sample = TraceSample {
        tick: state.tick,
        packet_bits: state.packet_bits,
        loss_percent,
        power_dbm: rung.power_dbm,
        event,
    };
    Ok((next, sample))
}

/// Steps until the last rung's threshold is crossed.
pub fn run_adaptation(policy: &AdaptationPolicy, family: &CurveFamily) -> Result<Vec<TraceSample>> {
    policy.validate(family)?;
    let mut state = ControllerState::initial(policy);
    let mut trace = Vec::new();
    while (trace.len() as u64) < policy.max_ticks {
        let (next, sample) = step(state, policy, family)?;
        trace.push(sample);
        if next.terminated {
            return Ok(trace);
        }
        state = next;
    }
    Err(Error::NonTermination {
        max_ticks: policy.max_ticks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RungDwell {
    pub power_dbm: f64,
    pub ticks: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceSummary {
    /// Samples spent at each power, in order of first use.
    pub dwell: Vec<RungDwell>,
    pub peak_loss_percent: f64,
    pub peak_tick: u64,
    pub escalations: usize,
    pub final_sample: TraceSample,
}

pub fn summarize_trace(trace: &[TraceSample]) -> Result<TraceSummary> {
    let last = *trace
        .last()
        .ok_or_else(|| Error::InvalidArgument("trace is empty".into()))?;
    let mut dwell: Vec<RungDwell> = Vec::new();
    let mut peak = trace[0];
    for sample in trace {
        match dwell.iter_mut().find(|d| d.power_dbm == sample.power_dbm) {
            Some(d) => d.ticks += 1,
            None => dwell.push(RungDwell {
                power_dbm: sample.power_dbm,
                ticks: 1,
            }),
        }
        if sample.loss_percent > peak.loss_percent {
            peak = *sample;
        }
    }
    Ok(TraceSummary {
        dwell,
        peak_loss_percent: peak.loss_percent,
        peak_tick: peak.tick,
        escalations: trace
            .iter()
            .filter(|s| s.event == TraceEvent::Escalated)
            .count(),
        final_sample: last,
    })
}

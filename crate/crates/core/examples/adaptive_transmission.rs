//! Grow the packet size every minute, escalating power at 50% and 40% loss
//! and stopping at 30% on the top rung.

use fanet_sim::adapt::{run_adaptation, summarize_trace, AdaptationPolicy, TraceEvent};
use fanet_sim::curve::CurveFamily;

fn main() -> fanet_sim::Result<()> {
    let trace = run_adaptation(&AdaptationPolicy::default(), &CurveFamily::default())?;
    for s in &trace {
        let note = match s.event {
            TraceEvent::None => "",
            TraceEvent::Escalated => "  <- threshold reached, power up",
            TraceEvent::Terminated => "  <- final threshold, stop",
        };
        println!(
            "t={:2} min  x={:3} bits  loss={:6.2}%  power={} dBm{note}",
            s.tick, s.packet_bits, s.loss_percent, s.power_dbm
        );
    }
    let summary = summarize_trace(&trace)?;
    println!("\nminutes per power level:");
    for d in &summary.dwell {
        println!("  {} dBm: {}", d.power_dbm, d.ticks);
    }
    println!(
        "peak loss {:.2}% at t={}",
        summary.peak_loss_percent, summary.peak_tick
    );
    Ok(())
}

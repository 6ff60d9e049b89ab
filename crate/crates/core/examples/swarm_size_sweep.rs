//! Packet loss for swarms of 5 to 80 UAVs in the same 1500 m square.
//!
//! Under a pure free-space model the swarm size only changes which pairs
//! get sampled, so expect noise rather than a trend.

use fanet_sim::sweep::{run_count_sweep, SweepSpec, SweptAxis};

fn main() -> fanet_sim::Result<()> {
    let mut spec = SweepSpec::with_defaults(SweptAxis::UavCount);
    spec.replicates = 16;
    let result = run_count_sweep(&spec)?;
    for &count in &result.spec.axis_values {
        let col: Vec<String> = result.column(count).iter().map(|l| format!("{l:6.2}")).collect();
        println!("{count:3} UAVs: {}", col.join("  "));
    }
    Ok(())
}

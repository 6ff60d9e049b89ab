//! Packet loss as the flying area grows, averaged over 32 topologies.

use fanet_sim::sweep::{run_area_sweep, SweepSpec, SweptAxis};

fn main() -> fanet_sim::Result<()> {
    let mut spec = SweepSpec::with_defaults(SweptAxis::Area);
    spec.replicates = 32;
    let result = run_area_sweep(&spec)?;
    println!("side (m)  bits      mean %     std %");
    for row in &result.rows {
        println!(
            "{:8.0} {:5} {:11.3} {:9.3}",
            row.axis_value, row.packet_size_bits, row.mean_loss_percent, row.std_loss_percent
        );
    }
    Ok(())
}

//! Packet loss at 2.4 GHz, 5.8 GHz and 28 GHz for a fixed 7 dBm transmitter.

use fanet_sim::sweep::{run_frequency_sweep, SweepSpec, SweptAxis};

fn main() -> fanet_sim::Result<()> {
    let result = run_frequency_sweep(&SweepSpec::with_defaults(SweptAxis::Frequency))?;
    print!("{:>10}", "bits");
    for f in &result.spec.axis_values {
        print!("{:>12}", format!("{:.1} GHz", f / 1e9));
    }
    println!();
    for (i, n) in result.spec.packet_sizes.iter().enumerate() {
        print!("{n:>10}");
        for &f in &result.spec.axis_values {
            print!("{:>11.2}%", result.column(f)[i]);
        }
        println!();
    }
    Ok(())
}

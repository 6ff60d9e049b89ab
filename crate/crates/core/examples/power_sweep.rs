//! Packet loss against packet size at 5, 7 and 9 dBm, plus the loss ratios
//! between power levels.

use fanet_sim::emit::{emit_table, OutputFormat, Table};
use fanet_sim::sweep::{power_ratio_report, run_packet_power_sweep, SweepSpec, SweptAxis};

fn main() -> fanet_sim::Result<()> {
    let result = run_packet_power_sweep(&SweepSpec::with_defaults(SweptAxis::PacketSizeByPower))?;
    print!("{}", emit_table(Table::Sweep(&result), OutputFormat::Csv));

    println!("\nloss ratio, lower power over higher power:");
    for pair in power_ratio_report(&result)? {
        let cells: Vec<String> = pair
            .cells
            .iter()
            .map(|c| match c.ratio {
                Some(r) => format!("{}b: {r:.2}", c.packet_size_bits),
                None => format!("{}b: -", c.packet_size_bits),
            })
            .collect();
        println!(
            "  {} -> {} dBm (nominal {:.2}): {}  mean {:.2}",
            pair.high_dbm,
            pair.low_dbm,
            pair.nominal_ratio,
            cells.join(", "),
            pair.mean_ratio.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}

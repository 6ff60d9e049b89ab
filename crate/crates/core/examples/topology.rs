//! Generate the default 20-UAV constellation and list the communicating pairs.
//!
//! cargo run -p fanet-sim --example topology -- [seed]

use fanet_sim::topology::{generate_topology, serialize_topology, AreaSpec};

fn main() -> fanet_sim::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let topology = generate_topology(seed, 20, AreaSpec::default(), 10)?;

    println!("Initial UAV positions (seed {seed}):");
    for (i, (x, y)) in topology.positions.iter().enumerate() {
        println!("  UAV {i:2}: ({x:7.1}, {y:7.1}) m");
    }
    println!("\nPairs:");
    for (src, dst) in &topology.pairs {
        println!("  {src:2} -> {dst:2}  {:7.1} m", topology.distance(*src, *dst)?);
    }
    println!("\nDocument is {} bytes of JSON", serialize_topology(&topology).len());
    Ok(())
}

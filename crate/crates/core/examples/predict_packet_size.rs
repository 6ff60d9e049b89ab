//! Which packet size yields a given loss at a given power?
//!
//! cargo run -p fanet-sim --example predict_packet_size -- 20 9

use fanet_sim::curve::{grid_oracle_predict, predict_packet_size, CurveFamily};

fn main() -> fanet_sim::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>());
    let loss = args.next().and_then(Result::ok).unwrap_or(20.0);
    let power = args.next().and_then(Result::ok).unwrap_or(9.0);
    let family = CurveFamily::default();

    let analytic = predict_packet_size(loss, power, &family)?;
    println!("{loss}% loss at {power} dBm -> {analytic:.2} bits (closed form)");
    if family.at_power(power).is_some() {
        let grid = grid_oracle_predict(loss, power, &family)?;
        println!("nearest tabulated size: {grid} bits");
    }
    Ok(())
}

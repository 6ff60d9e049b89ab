//! Walk the link chain (path loss, SNR, BER, packet loss) over distance.

use fanet_sim::link::{fspl_db, link_quality, BerModel, RadioParams};

fn main() -> fanet_sim::Result<()> {
    let radio = RadioParams::default();
    let text = RadioParams {
        ber_model: BerModel::TextVariant,
        ..radio
    };
    println!(
        "{:>8} {:>9} {:>9} {:>8} {:>11} {:>11} {:>11}",
        "d (m)", "FSPL dB", "Rx dBm", "SNR dB", "BER", "loss 1000b", "text 1000b"
    );
    for d in [50.0, 100.0, 250.0, 500.0, 750.0, 1000.0, 1500.0, 2000.0] {
        let q = link_quality(d, &radio, 1000)?;
        let t = link_quality(d, &text, 1000)?;
        println!(
            "{d:8.0} {:9.2} {:9.2} {:8.2} {:11.3e} {:11.4} {:11.4}",
            fspl_db(d, radio.frequency_hz)?,
            q.rx_power_dbm,
            q.snr_db,
            q.ber,
            q.loss_prob,
            t.loss_prob
        );
    }
    Ok(())
}

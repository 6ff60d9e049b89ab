//! Free-space link budget and packet-loss model.
//!
//! The chain is: transmit power (dBm → mW), Friis gain `(λ / 4πd)²`,
//! received power back to dBm, SNR against a fixed noise floor, an
//! exponential BER approximation, and finally the probability that at least
//! one bit of a packet is corrupted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::Topology;

/// Speed of light used by the model, m/s.
pub const SPEED_OF_LIGHT: f64 = 3.0e8;

/// Exponential BER approximation to apply to a linear SNR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BerModel {
    /// `0.5 · exp(−snr / 2)`
    #[default]
    CodeVariant,
    /// `0.5 · exp(−snr)`
    TextVariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioParams {
    pub tx_power_dbm: f64,
    pub noise_floor_dbm: f64,
    pub frequency_hz: f64,
    pub ber_model: BerModel,
}

impl Default for RadioParams {
    fn default() -> Self {
        Self {
            tx_power_dbm: 7.0,
            noise_floor_dbm: -100.0,
            frequency_hz: 2.4e9,
            ber_model: BerModel::CodeVariant,
        }
    }
}

impl RadioParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.frequency_hz > 0.0 && self.frequency_hz.is_finite()) {
            return Err(Error::Domain(format!(
                "frequency must be positive, got {} Hz",
                self.frequency_hz
            )));
        }
        if !self.tx_power_dbm.is_finite() || !self.noise_floor_dbm.is_finite() {
            return Err(Error::Domain("power levels must be finite".into()));
        }
        Ok(())
    }
}

/// Every intermediate of the link chain for one distance and packet size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkQuality {
    pub rx_power_dbm: f64,
    pub snr_db: f64,
    pub snr_linear: f64,
    pub ber: f64,
    pub loss_prob: f64,
}

pub fn dbm_to_mw(p_dbm: f64) -> f64 {
    10f64.powf(p_dbm / 10.0)
}

pub fn mw_to_dbm(p_mw: f64) -> Result<f64> {
    if p_mw.is_nan() || p_mw <= 0.0 {
        return Err(Error::Domain(format!("power must be positive, got {p_mw} mW")));
    }
    Ok(10.0 * p_mw.log10())
}

fn check_distance_frequency(d: f64, f: f64) -> Result<()> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::Domain(format!("distance must be positive, got {d} m")));
    }
    if !(f > 0.0 && f.is_finite()) {
        return Err(Error::Domain(format!("frequency must be positive, got {f} Hz")));
    }
    Ok(())
}

/// Linear Friis power ratio `(λ / 4πd)²` with `λ = c / f`.
pub fn friis_gain_linear(d: f64, f: f64) -> Result<f64> {
    check_distance_frequency(d, f)?;
    let wavelength = SPEED_OF_LIGHT / f;
    Ok((wavelength / (4.0 * std::f64::consts::PI * d)).powi(2))
}

/// Free-space path loss in dB, `20·log10(d) + 20·log10(f) + 20·log10(4π/c)`.
pub fn fspl_db(d: f64, f: f64) -> Result<f64> {
    check_distance_frequency(d, f)?;
    Ok(20.0 * d.log10()
        + 20.0 * f.log10()
        + 20.0 * (4.0 * std::f64::consts::PI / SPEED_OF_LIGHT).log10())
}

pub fn ber_from_snr(snr_linear: f64, model: BerModel) -> Result<f64> {
    if snr_linear.is_nan() || snr_linear < 0.0 {
        return Err(Error::Domain(format!(
            "linear SNR must be non-negative, got {snr_linear}"
        )));
    }
    Ok(match model {
        BerModel::CodeVariant => 0.5 * (-snr_linear / 2.0).exp(),
        BerModel::TextVariant => 0.5 * (-snr_linear).exp(),
    })
}

/// `1 − (1 − ber)^packet_size`, evaluated as `−expm1(n·ln(1 − ber))` so
/// tiny BERs do not round to zero loss.
pub fn packet_loss_prob(ber: f64, packet_size: u64) -> Result<f64> {
    if !(0.0..=1.0).contains(&ber) {
        return Err(Error::Domain(format!("BER must lie in [0, 1], got {ber}")));
    }
    match packet_size {
        0 => Err(Error::InvalidArgument("packet size must be at least 1 bit".into())),
        1 => Ok(ber),
        n => Ok(-(n as f64 * (-ber).ln_1p()).exp_m1()),
    }
}

pub fn link_quality(d: f64, radio: &RadioParams, packet_size: u64) -> Result<LinkQuality> {
    radio.validate()?;
    let tx_mw = dbm_to_mw(radio.tx_power_dbm);
    let rx_mw = tx_mw * friis_gain_linear(d, radio.frequency_hz)?;
    let rx_power_dbm = mw_to_dbm(rx_mw)?;
    let snr_db = rx_power_dbm - radio.noise_floor_dbm;
    let snr_linear = 10f64.powf(snr_db / 10.0);
    let ber = ber_from_snr(snr_linear, radio.ber_model)?;
    let loss_prob = packet_loss_prob(ber, packet_size)?;
    Ok(LinkQuality {
        rx_power_dbm,
        snr_db,
        snr_linear,
        ber,
        loss_prob,
    })
}

/// Mean over the topology's pairs of the packet-loss percentage.
pub fn mean_pair_loss_percent(
    topology: &Topology,
    radio: &RadioParams,
    packet_size: u64,
) -> Result<f64> {
    if topology.pairs.is_empty() {
        return Err(Error::InvalidArgument("topology has no communicating pairs".into()));
    }
    let mut total = 0.0;
    for d in topology.pair_distances()? {
        total += link_quality(d, radio, packet_size)?.loss_prob * 100.0;
    }
    Ok(total / topology.pairs.len() as f64)
}

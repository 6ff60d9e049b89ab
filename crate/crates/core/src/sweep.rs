//! Experiment grids: packet size crossed with transmit power, carrier
//! frequency, flying-area side length, or swarm size.
//!
//! Each replicate `r` draws its topology from seed `base_seed + r`
//! (wrapping). Cells are independent and evaluated in parallel; rows are
//! always emitted sorted by `(axis_value, packet_size_bits)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link::{mean_pair_loss_percent, RadioParams};
use crate::topology::{generate_topology, AreaSpec};

pub const DEFAULT_PACKET_SIZES: [u64; 4] = [10, 100, 1000, 10_000];
pub const DEFAULT_POWERS_DBM: [f64; 3] = [5.0, 7.0, 9.0];
pub const DEFAULT_FREQUENCIES_HZ: [f64; 3] = [2.4e9, 5.8e9, 2.8e10];
pub const DEFAULT_AREA_SIDES_M: [f64; 5] = [500.0, 1000.0, 1500.0, 2000.0, 3000.0];
pub const DEFAULT_UAV_COUNTS: [f64; 5] = [5.0, 10.0, 20.0, 40.0, 80.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweptAxis {
    /// Transmit power in dBm.
    PacketSizeByPower,
    /// Carrier frequency in Hz.
    Frequency,
    /// Side of a square flying area in meters.
    Area,
    /// Number of UAVs.
    UavCount,
}

impl SweptAxis {
    pub fn default_values(self) -> Vec<f64> {
        match self {
            SweptAxis::PacketSizeByPower => DEFAULT_POWERS_DBM.to_vec(),
            SweptAxis::Frequency => DEFAULT_FREQUENCIES_HZ.to_vec(),
            SweptAxis::Area => DEFAULT_AREA_SIDES_M.to_vec(),
            SweptAxis::UavCount => DEFAULT_UAV_COUNTS.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base_seed: u64,
    pub num_uavs: usize,
    pub area: AreaSpec,
    pub num_pairs: usize,
    pub radio: RadioParams,
    pub packet_sizes: Vec<u64>,
    pub swept_axis: SweptAxis,
    pub axis_values: Vec<f64>,
    pub replicates: u32,
}

impl SweepSpec {
    /// Twenty UAVs over 1500 m × 1500 m with ten pairs, seed 42, one
    /// replicate, and the default values for `axis`.
    pub fn with_defaults(axis: SweptAxis) -> Self {
        Self {
            base_seed: 42,
            num_uavs: 20,
            area: AreaSpec::default(),
            num_pairs: 10,
            radio: RadioParams::default(),
            packet_sizes: DEFAULT_PACKET_SIZES.to_vec(),
            swept_axis: axis,
            axis_values: axis.default_values(),
            replicates: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.axis_values.is_empty() {
            return Err(Error::InvalidArgument("axis values must not be empty".into()));
        }
        if self.axis_values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("axis values must be finite".into()));
        }
        if self.axis_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "axis values must be strictly increasing".into(),
            ));
        }
        if self.packet_sizes.is_empty() || self.packet_sizes.contains(&0) {
            return Err(Error::InvalidArgument(
                "packet sizes must be a non-empty list of positive bit counts".into(),
            ));
        }
        if self.replicates == 0 {
            return Err(Error::InvalidArgument("at least one replicate is required".into()));
        }
        if self.num_pairs == 0 {
            return Err(Error::InvalidArgument("at least one pair is required".into()));
        }
        self.area.validate()?;
        self.radio.validate()?;
        for &v in &self.axis_values {
            match self.swept_axis {
                SweptAxis::PacketSizeByPower => {}
                SweptAxis::Frequency if v <= 0.0 => {
                    return Err(Error::Domain(format!("frequency axis value {v} must be positive")))
                }
                SweptAxis::Area if v <= 0.0 => {
                    return Err(Error::InvalidArgument(format!(
                        "area side {v} must be positive"
                    )))
                }
                SweptAxis::UavCount if v.fract() != 0.0 || v < 2.0 => {
                    return Err(Error::InvalidArgument(format!(
                        "UAV count {v} must be an integer of at least 2"
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub axis_value: f64,
    pub packet_size_bits: u64,
    pub mean_loss_percent: f64,
    pub std_loss_percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn row(&self, axis_value: f64, packet_size: u64) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.axis_value == axis_value && r.packet_size_bits == packet_size)
    }

    /// Mean losses for one axis value, in the spec's packet-size order.
    pub fn column(&self, axis_value: f64) -> Vec<f64> {
        self.spec
            .packet_sizes
            .iter()
            .filter_map(|&n| self.row(axis_value, n).map(|r| r.mean_loss_percent))
            .collect()
    }
}

/// Losses for every packet size of one (axis value, replicate) cell.
fn evaluate_cell(spec: &SweepSpec, axis_value: f64, replicate: u32) -> Result<Vec<f64>> {
    let seed = spec.base_seed.wrapping_add(u64::from(replicate));
    let mut radio = spec.radio;
    let mut area = spec.area;
    let mut num_uavs = spec.num_uavs;
    match spec.swept_axis {
        SweptAxis::PacketSizeByPower => radio.tx_power_dbm = axis_value,
        SweptAxis::Frequency => radio.frequency_hz = axis_value,
        SweptAxis::Area => area = AreaSpec::square(axis_value)?,
        SweptAxis::UavCount => num_uavs = axis_value as usize,
    }
    let topology = generate_topology(seed, num_uavs, area, spec.num_pairs)?;
    spec.packet_sizes
        .iter()
        .map(|&n| mean_pair_loss_percent(&topology, &radio, n))
        .collect()
}

fn mean_and_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Runs whatever axis `spec` names.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let replicates = spec.replicates;
    let cells: Vec<(usize, u32)> = (0..spec.axis_values.len())
        .flat_map(|a| (0..replicates).map(move |r| (a, r)))
        .collect();
    let losses: Vec<Vec<f64>> = cells
        .par_iter()
        .map(|&(a, r)| evaluate_cell(spec, spec.axis_values[a], r))
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(spec.axis_values.len() * spec.packet_sizes.len());
    for (a, &axis_value) in spec.axis_values.iter().enumerate() {
        let block = &losses[a * replicates as usize..(a + 1) * replicates as usize];
        for (s, &packet_size_bits) in spec.packet_sizes.iter().enumerate() {
            let samples: Vec<f64> = block.iter().map(|cell| cell[s]).collect();
            let (mean, std) = mean_and_std(&samples);
            rows.push(SweepRow {
                axis_value,
                packet_size_bits,
                mean_loss_percent: mean,
                std_loss_percent: std,
            });
        }
    }
    rows.sort_by(|x, y| {
        x.axis_value
            .total_cmp(&y.axis_value)
            .then(x.packet_size_bits.cmp(&y.packet_size_bits))
    });
    Ok(SweepResult {
        spec: spec.clone(),
        rows,
    })
}

fn run_expecting(spec: &SweepSpec, axis: SweptAxis) -> Result<SweepResult> {
    if spec.swept_axis != axis {
        return Err(Error::InvalidArgument(format!(
            "expected a {axis:?} sweep, got {:?}",
            spec.swept_axis
        )));
    }
    run_sweep(spec)
}

pub fn run_packet_power_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    run_expecting(spec, SweptAxis::PacketSizeByPower)
}

pub fn run_frequency_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    run_expecting(spec, SweptAxis::Frequency)
}

pub fn run_area_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    run_expecting(spec, SweptAxis::Area)
}

pub fn run_count_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    run_expecting(spec, SweptAxis::UavCount)
}

/// Loss ratio between a lower and a higher power at one packet size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioCell {
    pub packet_size_bits: u64,
    /// `loss(low) / loss(high)`; `None` when the high-power loss is zero.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerPairRatios {
    pub low_dbm: f64,
    pub high_dbm: f64,
    /// `high_dbm / low_dbm`, compared against the observed loss ratios.
    pub nominal_ratio: f64,
    pub cells: Vec<RatioCell>,
    /// Mean over the cells that have a ratio.
    pub mean_ratio: Option<f64>,
}

/// Loss ratios between every pair of swept powers, lower power over higher.
pub fn power_ratio_report(result: &SweepResult) -> Result<Vec<PowerPairRatios>> {
    if result.spec.swept_axis != SweptAxis::PacketSizeByPower {
        return Err(Error::InvalidArgument(
            "power ratios need a packet-size-by-power sweep".into(),
        ));
    }
    let powers = &result.spec.axis_values;
    if powers.len() < 2 {
        return Err(Error::InvalidArgument(
            "power ratios need at least two powers".into(),
        ));
    }
    let mut report = Vec::new();
    for (i, &low) in powers.iter().enumerate() {
        for &high in &powers[i + 1..] {
            let cells: Vec<RatioCell> = result
                .spec
                .packet_sizes
                .iter()
                .map(|&n| {
                    let lo = result.row(low, n).map(|r| r.mean_loss_percent);
                    let hi = result.row(high, n).map(|r| r.mean_loss_percent);
                    let ratio = match (lo, hi) {
                        (Some(lo), Some(hi)) if hi > 0.0 => Some(lo / hi),
                        _ => None,
                    };
                    RatioCell {
                        packet_size_bits: n,
                        ratio,
                    }
                })
                .collect();
            let present: Vec<f64> = cells.iter().filter_map(|c| c.ratio).collect();
            let mean_ratio =
                (!present.is_empty()).then(|| present.iter().sum::<f64>() / present.len() as f64);
            report.push(PowerPairRatios {
                low_dbm: low,
                high_dbm: high,
                nominal_ratio: high / low,
                cells,
                mean_ratio,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::generate_topology;

    #[test]
    fn degenerate_sweep_matches_direct_mean() {
        let mut spec = SweepSpec::with_defaults(SweptAxis::PacketSizeByPower);
        spec.axis_values = vec![7.0];
        spec.packet_sizes = vec![1000];
        let result = run_packet_power_sweep(&spec).unwrap();
        assert_eq!(result.rows.len(), 1);
        let topology = generate_topology(42, 20, AreaSpec::default(), 10).unwrap();
        let direct = mean_pair_loss_percent(&topology, &RadioParams::default(), 1000).unwrap();
        assert_eq!(result.rows[0].mean_loss_percent, direct);
        assert_eq!(result.rows[0].std_loss_percent, 0.0);
    }

    #[test]
    fn axis_views_agree_at_default_point() {
        let power = run_sweep(&SweepSpec::with_defaults(SweptAxis::PacketSizeByPower)).unwrap();
        let at_default = power.column(7.0);

        let mut freq = SweepSpec::with_defaults(SweptAxis::Frequency);
        freq.axis_values = vec![2.4e9];
        assert_eq!(run_frequency_sweep(&freq).unwrap().column(2.4e9), at_default);

        let mut area = SweepSpec::with_defaults(SweptAxis::Area);
        area.axis_values = vec![1500.0];
        assert_eq!(run_area_sweep(&area).unwrap().column(1500.0), at_default);

        let mut count = SweepSpec::with_defaults(SweptAxis::UavCount);
        count.axis_values = vec![20.0];
        assert_eq!(run_count_sweep(&count).unwrap().column(20.0), at_default);
    }

    #[test]
    fn count_sweep_with_exhaustive_pairing() {
        let mut spec = SweepSpec::with_defaults(SweptAxis::UavCount);
        spec.axis_values = vec![4.0];
        spec.num_pairs = 12;
        let result = run_count_sweep(&spec).unwrap();
        assert_eq!(result.rows.len(), spec.packet_sizes.len());

        spec.axis_values = vec![3.0];
        assert!(matches!(run_count_sweep(&spec), Err(Error::InvalidArgument(_))));
        spec.axis_values = vec![1.0];
        assert!(run_count_sweep(&spec).is_err());
        spec.axis_values = vec![4.5];
        assert!(run_count_sweep(&spec).is_err());
    }

    #[test]
    fn spec_validation() {
        let mut spec = SweepSpec::with_defaults(SweptAxis::Area);
        spec.axis_values = vec![1000.0, 500.0];
        assert!(run_sweep(&spec).is_err());
        spec.axis_values = vec![];
        assert!(run_sweep(&spec).is_err());
        spec.axis_values = vec![1000.0];
        spec.replicates = 0;
        assert!(run_sweep(&spec).is_err());
        spec.replicates = 1;
        spec.packet_sizes = vec![0];
        assert!(run_sweep(&spec).is_err());
        let wrong_axis = SweepSpec::with_defaults(SweptAxis::Frequency);
        assert!(run_packet_power_sweep(&wrong_axis).is_err());
    }

    #[test]
    fn replicates_are_reproducible_and_bounded() {
        let mut spec = SweepSpec::with_defaults(SweptAxis::Area);
        spec.replicates = 8;
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows.len(), 5 * 4);
        for row in &a.rows {
            assert!((0.0..=100.0).contains(&row.mean_loss_percent));
            assert!(row.std_loss_percent >= 0.0);
        }
        assert!(a.rows.iter().any(|r| r.std_loss_percent > 0.0));
    }

    #[test]
    fn ratio_report_handles_equal_and_zero_columns() {
        let mut spec = SweepSpec::with_defaults(SweptAxis::PacketSizeByPower);
        spec.axis_values = vec![5.0, 9.0];
        spec.packet_sizes = vec![10, 100];
        let mut result = SweepResult {
            rows: vec![
                SweepRow { axis_value: 5.0, packet_size_bits: 10, mean_loss_percent: 3.0, std_loss_percent: 0.0 },
                SweepRow { axis_value: 5.0, packet_size_bits: 100, mean_loss_percent: 6.0, std_loss_percent: 0.0 },
                SweepRow { axis_value: 9.0, packet_size_bits: 10, mean_loss_percent: 3.0, std_loss_percent: 0.0 },
                SweepRow { axis_value: 9.0, packet_size_bits: 100, mean_loss_percent: 6.0, std_loss_percent: 0.0 },
            ],
            spec,
        };
        let report = power_ratio_report(&result).unwrap();
        assert_eq!(report.len(), 1);
        assert!((report[0].nominal_ratio - 1.8).abs() < 1e-12);
        assert!(report[0].cells.iter().all(|c| c.ratio == Some(1.0)));
        assert_eq!(report[0].mean_ratio, Some(1.0));

        result.rows[2].mean_loss_percent = 0.0;
        let report = power_ratio_report(&result).unwrap();
        assert_eq!(report[0].cells[0].ratio, None);
        assert_eq!(report[0].mean_ratio, Some(1.0));

        result.spec.axis_values = vec![5.0];
        assert!(power_ratio_report(&result).is_err());
    }
}

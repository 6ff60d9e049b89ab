//! Logarithmic loss curves `y = a·ln(x) + b` and their inverses.
//!
//! A [`CurveFamily`] holds one curve per transmit power. Packet sizes are
//! predicted from a target loss by closed-form inversion, with linear
//! interpolation of the coefficients between neighbouring powers. A
//! tabulated nearest-neighbour lookup is kept alongside as a cross-check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Packet sizes tabulated by [`grid_oracle_predict`]: 10, 20, …, 10000 bits.
pub const GRID_START_BITS: u64 = 10;
pub const GRID_STEP_BITS: u64 = 10;
pub const GRID_END_BITS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LossCurve {
    /// Slope, percent per nat of packet size.
    pub a: f64,
    /// Intercept, percent.
    pub b: f64,
    pub power_dbm: f64,
}

impl LossCurve {
    pub fn new(power_dbm: f64, a: f64, b: f64) -> Self {
        Self { a, b, power_dbm }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<LossCurve>", into = "Vec<LossCurve>")]
pub struct CurveFamily {
    curves: Vec<LossCurve>,
}

impl CurveFamily {
    pub fn new(curves: Vec<LossCurve>) -> Result<Self> {
        if curves.is_empty() {
            return Err(Error::InvalidArgument("curve family is empty".into()));
        }
        if curves
            .iter()
            .any(|c| !(c.a.is_finite() && c.b.is_finite() && c.power_dbm.is_finite()))
        {
            return Err(Error::InvalidArgument("curve coefficients must be finite".into()));
        }
        if curves.windows(2).any(|w| w[0].power_dbm >= w[1].power_dbm) {
            return Err(Error::InvalidArgument(
                "curve powers must be strictly increasing".into(),
            ));
        }
        Ok(Self { curves })
    }

    pub fn curves(&self) -> &[LossCurve] {
        &self.curves
    }

    /// The member at exactly `power_dbm`, if any.
    pub fn at_power(&self, power_dbm: f64) -> Option<&LossCurve> {
        self.curves.iter().find(|c| c.power_dbm == power_dbm)
    }

    pub fn power_range(&self) -> (f64, f64) {
        (
            self.curves[0].power_dbm,
            self.curves[self.curves.len() - 1].power_dbm,
        )
    }

    /// Coefficients at `power_dbm`, linearly interpolated between the two
    /// bracketing members. No extrapolation.
    pub fn interpolate(&self, power_dbm: f64) -> Result<LossCurve> {
        if let Some(exact) = self.at_power(power_dbm) {
            return Ok(*exact);
        }
        let (min, max) = self.power_range();
        if !(power_dbm > min && power_dbm < max) {
            return Err(Error::OutOfRange {
                value: power_dbm,
                min,
                max,
            });
        }
        let upper = self
            .curves
            .iter()
            .position(|c| c.power_dbm > power_dbm)
            .expect("bracketed by range check");
        let (lo, hi) = (self.curves[upper - 1], self.curves[upper]);
        let t = (power_dbm - lo.power_dbm) / (hi.power_dbm - lo.power_dbm);
        Ok(LossCurve {
            a: lo.a + t * (hi.a - lo.a),
            b: lo.b + t * (hi.b - lo.b),
            power_dbm,
        })
    }
}

impl Default for CurveFamily {
    /// Reference curves for 5, 7 and 9 dBm.
    fn default() -> Self {
        Self {
            curves: vec![
                LossCurve::new(5.0, 6.8, 26.0),
                LossCurve::new(7.0, 7.1, 4.0),
                LossCurve::new(9.0, 6.2, -6.0),
            ],
        }
    }
}

impl TryFrom<Vec<LossCurve>> for CurveFamily {
    type Error = Error;

    fn try_from(curves: Vec<LossCurve>) -> Result<Self> {
        Self::new(curves)
    }
}

impl From<CurveFamily> for Vec<LossCurve> {
    fn from(family: CurveFamily) -> Self {
        family.curves
    }
}

/// Ordinary least squares of `y` on `ln(x)`.
pub fn fit_log_curve(points: &[(f64, f64)], power_dbm: f64) -> Result<LossCurve> {
    if let Some(&(x, _)) = points.iter().find(|(x, _)| !(*x >= 1.0 && x.is_finite())) {
        return Err(Error::InvalidArgument(format!("packet size {x} must be at least 1")));
    }
    if points.iter().any(|(_, y)| !y.is_finite()) {
        return Err(Error::InvalidArgument("loss values must be finite".into()));
    }
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() < 2 {
        return Err(Error::InvalidArgument(
            "need at least two distinct packet sizes to fit".into(),
        ));
    }

    let n = points.len() as f64;
    let mean_lx = points.iter().map(|p| p.0.ln()).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut cov, mut var) = (0.0, 0.0);
    for &(x, y) in points {
        let dx = x.ln() - mean_lx;
        cov += dx * (y - mean_y);
        var += dx * dx;
    }
    if var == 0.0 {
        return Err(Error::DegenerateData("ln(x) has zero variance".into()));
    }
    let a = cov / var;
    Ok(LossCurve {
        a,
        b: mean_y - a * mean_lx,
        power_dbm,
    })
}

pub fn evaluate_curve(curve: &LossCurve, x: f64) -> Result<f64> {
    if x.is_nan() || x < 1.0 {
        return Err(Error::Domain(format!("packet size {x} must be at least 1 bit")));
    }
    Ok(curve.a * x.ln() + curve.b)
}

/// Packet size whose predicted loss is `y`, `exp((y − b) / a)`.
pub fn invert_curve(curve: &LossCurve, y: f64) -> Result<f64> {
    if curve.a == 0.0 {
        return Err(Error::NonInvertible {
            power_dbm: curve.power_dbm,
        });
    }
    Ok(((y - curve.b) / curve.a).exp())
}

pub fn predict_packet_size(y: f64, power_dbm: f64, family: &CurveFamily) -> Result<f64> {
    invert_curve(&family.interpolate(power_dbm)?, y)
}

/// Nearest tabulated packet size for a target loss at a member power.
///
/// Only rows with positive predicted loss are considered; ties go to the
/// smaller packet size.
pub fn grid_oracle_predict(y: f64, power_dbm: f64, family: &CurveFamily) -> Result<u64> {
    let curve = family.at_power(power_dbm).ok_or_else(|| {
        Error::InvalidArgument(format!("no curve tabulated at {power_dbm} dBm"))
    })?;
    let mut best: Option<(u64, f64)> = None;
    for x in (GRID_START_BITS..=GRID_END_BITS).step_by(GRID_STEP_BITS as usize) {
        let loss = evaluate_curve(curve, x as f64)?;
        if loss <= 0.0 {
            continue;
        }
        let gap = (loss - y).abs();
        if best.is_none_or(|(_, g)| gap < g) {
            best = Some((x, gap));
        }
    }
    best.map(|(x, _)| x).ok_or_else(|| {
        Error::EmptyTable(format!("no positive-loss rows at {power_dbm} dBm"))
    })
}

//! Static 2-D UAV constellations and the directional links between them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Rectangular flying area in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaSpec {
    pub width: f64,
    pub height: f64,
}

impl AreaSpec {
    pub fn new(width: f64, height: f64) -> Result<Self> {
        let area = Self { width, height };
        area.validate()?;
        Ok(area)
    }

    pub fn square(side: f64) -> Result<Self> {
        Self::new(side, side)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.width > 0.0 && self.width.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "area width must be positive, got {}",
                self.width
            )));
        }
        if !(self.height > 0.0 && self.height.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "area height must be positive, got {}",
                self.height
            )));
        }
        Ok(())
    }
}

impl Default for AreaSpec {
    fn default() -> Self {
        Self {
            width: 1500.0,
            height: 1500.0,
        }
    }
}

/// UAV positions plus the ordered source/destination pairs that carry traffic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Topology {
    pub seed: u64,
    pub area: AreaSpec,
    pub positions: Vec<(f64, f64)>,
    pub pairs: Vec<(usize, usize)>,
}

/// Number of ordered pairs `(i, j)`, `i != j`, over `num_uavs` nodes.
pub fn ordered_pair_count(num_uavs: usize) -> usize {
    num_uavs.saturating_mul(num_uavs.saturating_sub(1))
}

/// Generates a reproducible constellation.
///
/// Coordinates are drawn x before y, UAV 0 first. The same generator then
/// picks `num_pairs` entries from the lexicographic list of all ordered
/// pairs.
pub fn generate_topology(
    seed: u64,
    num_uavs: usize,
    area: AreaSpec,
    num_pairs: usize,
) -> Result<Topology> {
    area.validate()?;
    if num_uavs < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 UAVs, got {num_uavs}"
        )));
    }
    let available = ordered_pair_count(num_uavs);
    if num_pairs > available {
        return Err(Error::InvalidArgument(format!(
            "{num_pairs} pairs requested but only {available} ordered pairs exist among {num_uavs} UAVs"
        )));
    }

    let mut rng = SplitMix64::new(seed);
    let positions = (0..num_uavs)
        .map(|_| {
            let x = rng.next_uniform() * area.width;
            let y = rng.next_uniform() * area.height;
            (x, y)
        })
        .collect();

    let candidates: Vec<(usize, usize)> = (0..num_uavs)
        .flat_map(|i| (0..num_uavs).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let pairs = rng
        .sample_without_replacement(candidates.len(), num_pairs)?
        .into_iter()
        .map(|idx| candidates[idx])
        .collect();

    Ok(Topology {
        seed,
        area,
        positions,
        pairs,
    })
}

impl Topology {
    pub fn num_uavs(&self) -> usize {
        self.positions.len()
    }

    /// Euclidean distance between UAVs `i` and `j` in meters.
    pub fn distance(&self, i: usize, j: usize) -> Result<f64> {
        let n = self.num_uavs();
        let (a, b) = match (self.positions.get(i), self.positions.get(j)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "UAV index ({i}, {j}) out of range for {n} UAVs"
                )))
            }
        };
        Ok((a.0 - b.0).hypot(a.1 - b.1))
    }

    /// Distances of every communicating pair, in pair order.
    pub fn pair_distances(&self) -> Result<Vec<f64>> {
        self.pairs
            .iter()
            .map(|&(src, dst)| self.distance(src, dst))
            .collect()
    }

    /// Checks the structural invariants of a topology built by hand or parsed
    /// from a document.
    pub fn validate(&self) -> Result<()> {
        self.area.validate()?;
        let n = self.num_uavs();
        for (idx, &(x, y)) in self.positions.iter().enumerate() {
            if !(0.0..=self.area.width).contains(&x) || !(0.0..=self.area.height).contains(&y) {
                return Err(Error::InvalidArgument(format!(
                    "UAV {idx} at ({x}, {y}) lies outside the area"
                )));
            }
        }
        let mut seen = std::collections::HashSet::with_capacity(self.pairs.len());
        for &(src, dst) in &self.pairs {
            if src >= n || dst >= n {
                return Err(Error::InvalidArgument(format!(
                    "pair ({src}, {dst}) references a missing UAV"
                )));
            }
            if src == dst {
                return Err(Error::InvalidArgument(format!("pair ({src}, {dst}) is a self-link")));
            }
            if !seen.insert((src, dst)) {
                return Err(Error::InvalidArgument(format!("pair ({src}, {dst}) is repeated")));
            }
        }
        Ok(())
    }
}

/// Renders the topology as a JSON document with fields `seed`, `area`,
/// `positions` and `pairs`. Coordinates keep full precision so the document
/// parses back to an identical value.
pub fn serialize_topology(topology: &Topology) -> String {
    let mut doc = serde_json::to_string_pretty(topology).expect("topology serializes");
    doc.push('\n');
    doc
}

pub fn parse_topology(doc: &str) -> Result<Topology> {
    let topology: Topology = serde_json::from_str(doc)
        .map_err(|e| Error::InvalidArgument(format!("malformed topology document: {e}")))?;
    topology.validate()?;
    Ok(topology)
}

//! Geometric network model: device placement, unit-disk adjacency, and the
//! topological quantities feeding the weight function.
//!
//! Two devices are linked iff their euclidean distance is strictly below the
//! transmission range, which keeps links bidirectional. Heterogeneous ranges
//! are supported by linking on the smaller of the two ranges so that symmetry
//! is preserved.

use crate::error::{Error, Result};

/// Identifier of a device. Ids are dense `0..n` within one simulation, so
/// they double as vector indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeviceId(pub u32);

impl DeviceId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for DeviceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "d{}", self.0)
    }
}

/// A point in the simulation area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn distance_to(self, other: Position) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Symmetric adjacency of all devices, stored both as sorted neighbor lists
/// and as bitsets (one word row per device) for cheap pair queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    lists: Vec<Vec<DeviceId>>,
    masks: Vec<Vec<u64>>,
    words: usize,
}

impl Adjacency {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            lists: vec![Vec::new(); n],
            masks: vec![vec![0u64; words]; n],
            words,
        }
    }

    fn link(&mut self, a: usize, b: usize) {
        self.lists[a].push(DeviceId(b as u32));
        self.lists[b].push(DeviceId(a as u32));
        self.masks[a][b / 64] |= 1u64 << (b % 64);
        self.masks[b][a / 64] |= 1u64 << (a % 64);
    }

    pub fn device_count(&self) -> usize {
        self.lists.len()
    }

    /// Sorted neighbor list of `d`. Panics if `d` is out of range; use
    /// [`Adjacency::check_device`] first when the id is untrusted.
    pub fn neighbors(&self, d: DeviceId) -> &[DeviceId] {
        &self.lists[d.index()]
    }

    pub fn degree(&self, d: DeviceId) -> usize {
        self.lists[d.index()].len()
    }

    pub fn contains(&self, d: DeviceId, n: DeviceId) -> bool {
        let idx = n.index();
        self.masks[d.index()][idx / 64] & (1u64 << (idx % 64)) != 0
    }

    pub fn check_device(&self, d: DeviceId) -> Result<()> {
        if d.index() < self.lists.len() {
            Ok(())
        } else {
            Err(Error::UnknownDevice(d))
        }
    }

    fn shared_neighbor_count(&self, a: DeviceId, b: DeviceId) -> usize {
        self.masks[a.index()]
            .iter()
            .zip(&self.masks[b.index()])
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }
}

/// The network at one instant: positions, per-device transmission ranges and
/// the derived adjacency.
#[derive(Debug, Clone)]
pub struct TopologySnapshot {
    pub positions: Vec<Position>,
    pub ranges: Vec<f64>,
    pub adjacency: Adjacency,
}

impl TopologySnapshot {
    /// Builds a snapshot with one uniform transmission range.
    pub fn build(positions: Vec<Position>, range: f64) -> Result<Self> {
        let ranges = vec![range; positions.len()];
        Self::build_with_ranges(positions, ranges)
    }

    /// Builds a snapshot with per-device ranges; a pair is linked on the
    /// smaller of the two ranges so links stay bidirectional.
    pub fn build_with_ranges(positions: Vec<Position>, ranges: Vec<f64>) -> Result<Self> {
        if positions.len() != ranges.len() {
            return Err(Error::Config(format!(
                "{} positions but {} ranges",
                positions.len(),
                ranges.len()
            )));
        }
        let adjacency = compute_neighbors_with_ranges(&positions, &ranges)?;
        Ok(Self {
            positions,
            ranges,
            adjacency,
        })
    }
}

/// Computes the unit-disk adjacency: `n` is a neighbor of `d` iff
/// `dist(d, n) < r` (strictly; a pair at distance exactly `r` is not linked).
pub fn compute_neighbors(positions: &[Position], range: f64) -> Result<Adjacency> {
    if !(range.is_finite() && range > 0.0) {
        return Err(Error::Config(format!(
            "transmission range must be positive and finite, got {range}"
        )));
    }
    let n = positions.len();
    let mut adj = Adjacency::new(n);
    validate_positions(positions)?;
    for a in 0..n {
        for b in (a + 1)..n {
            if positions[a].distance_to(positions[b]) < range {
                adj.link(a, b);
            }
        }
    }
    Ok(adj)
}

/// Heterogeneous-range variant of [`compute_neighbors`]; the effective range
/// of a pair is `min(r_a, r_b)`.
pub fn compute_neighbors_with_ranges(positions: &[Position], ranges: &[f64]) -> Result<Adjacency> {
    if positions.len() != ranges.len() {
        return Err(Error::Config(format!(
            "{} positions but {} ranges",
            positions.len(),
            ranges.len()
        )));
    }
    for &r in ranges {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Config(format!(
                "transmission range must be positive and finite, got {r}"
            )));
        }
    }
    validate_positions(positions)?;
    let n = positions.len();
    let mut adj = Adjacency::new(n);
    for a in 0..n {
        for b in (a + 1)..n {
            let r = ranges[a].min(ranges[b]);
            if positions[a].distance_to(positions[b]) < r {
                adj.link(a, b);
            }
        }
    }
    Ok(adj)
}

fn validate_positions(positions: &[Position]) -> Result<()> {
    for (i, p) in positions.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::InvalidInput(format!(
                "non-finite coordinate for device {i}: ({}, {})",
                p.x, p.y
            )));
        }
    }
    Ok(())
}

/// Number of links among the neighbors of `d`, i.e. edges of the subgraph
/// induced by `N(d)`.
pub fn neighbor_link_count(d: DeviceId, adjacency: &Adjacency) -> Result<usize> {
    adjacency.check_device(d)?;
    // Every edge {a, b} with a, b in N(d) is seen from both endpoints.
    let total: usize = adjacency
        .neighbors(d)
        .iter()
        .map(|&n| adjacency.shared_neighbor_count(d, n))
        .sum();
    Ok(total / 2)
}

/// Local clustering coefficient of `d`: realized neighbor links over the
/// `m(m-1)/2` possible ones, 0 when the device has fewer than two neighbors.
pub fn local_clustering_coefficient(d: DeviceId, adjacency: &Adjacency) -> Result<f64> {
    adjacency.check_device(d)?;
    let m = adjacency.degree(d);
    if m < 2 {
        return Ok(0.0);
    }
    let links = neighbor_link_count(d, adjacency)?;
    let possible = (m * (m - 1)) / 2;
    Ok(links as f64 / possible as f64)
}

/// Deviation of a device's degree from the ideal degree:
/// `1 - |deg - dd_ideal| / dd_ideal`. The value is not clamped, so degrees
/// far above the ideal yield negative scores.
pub fn degree_deviation(neighbor_count: usize, ideal_degree: u32) -> Result<f64> {
    if ideal_degree == 0 {
        return Err(Error::Config(
            "ideal degree must be a positive integer".into(),
        ));
    }
    let ideal = f64::from(ideal_degree);
    Ok(1.0 - (neighbor_count as f64 - ideal).abs() / ideal)
}

//! WCA baseline: 1-hop clusters around minimum-weight heads, with the
//! detachment-driven maintenance policy used for the comparison experiments.
//!
//! The combined metric is minimized: lower degree difference, shorter
//! distances to neighbors, lower speed and less accumulated head time all
//! make a device a better head. Unlike WACA, the inputs assume access to
//! geographic ground truth (distances and speeds), which the simulator
//! legitimately supplies.

use crate::error::{Error, Result};
use crate::topology::{Adjacency, DeviceId, TopologySnapshot};

/// Inputs of the combined WCA metric for one device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WcaWeightInputs {
    /// |degree - ideal degree|.
    pub degree_difference: f64,
    /// Sum of distances to all current neighbors.
    pub distance_sum: f64,
    /// Running-average speed in length units per second.
    pub mobility: f64,
    /// Cumulative seconds served as clusterhead in this run.
    pub head_time: f64,
}

/// Weighing factors of the combined metric; the defaults sum to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WcaFactors {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
    pub w4: f64,
}

impl Default for WcaFactors {
    fn default() -> Self {
        Self {
            w1: 0.7,
            w2: 0.2,
            w3: 0.05,
            w4: 0.05,
        }
    }
}

impl WcaFactors {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("w1", self.w1),
            ("w2", self.w2),
            ("w3", self.w3),
            ("w4", self.w4),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Config(format!(
                    "WCA factor {name} must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Combined WCA weight `w1*dv + w2*Dv + w3*Mv + w4*Pv`; smaller is better.
pub fn wca_weight(inputs: &WcaWeightInputs, factors: &WcaFactors) -> Result<f64> {
    for (name, v) in [
        ("degree difference", inputs.degree_difference),
        ("distance sum", inputs.distance_sum),
        ("mobility", inputs.mobility),
        ("head time", inputs.head_time),
    ] {
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!(
                "{name} must be finite, got {v}"
            )));
        }
    }
    Ok(factors.w1 * inputs.degree_difference
        + factors.w2 * inputs.distance_sum
        + factors.w3 * inputs.mobility
        + factors.w4 * inputs.head_time)
}

/// A 1-hop cluster assignment: every device is either a head (mapped to
/// itself) or a direct member of exactly one head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WcaAssignment {
    head_of: Vec<DeviceId>,
}

impl WcaAssignment {
    pub fn device_count(&self) -> usize {
        self.head_of.len()
    }

    pub fn head_of(&self, d: DeviceId) -> DeviceId {
        self.head_of[d.index()]
    }

    pub fn is_head(&self, d: DeviceId) -> bool {
        self.head_of[d.index()] == d
    }

    pub fn heads(&self) -> impl Iterator<Item = DeviceId> + '_ {
        self.head_of
            .iter()
            .enumerate()
            .filter(|&(i, &h)| h.index() == i)
            .map(|(_, &h)| h)
    }

    pub fn head_count(&self) -> usize {
        self.heads().count()
    }

    pub fn pointers(&self) -> &[DeviceId] {
        &self.head_of
    }
}

/// Greedy covering election: repeatedly promote the uncovered device with
/// the minimal weight (ties to the smallest id) to head and attach all of
/// its uncovered neighbors. Heads chosen in one pass are never neighbors of
/// each other.
pub fn wca_cluster(adjacency: &Adjacency, weights: &[f64]) -> WcaAssignment {
    let n = adjacency.device_count();
    debug_assert_eq!(weights.len(), n);
    let mut assignment = greedy_cover(adjacency, weights, &mut (0..n).collect::<Vec<_>>());
    for (i, slot) in assignment.iter_mut().enumerate() {
        if slot.is_none() {
            *slot = Some(DeviceId(i as u32));
        }
    }
    WcaAssignment {
        head_of: assignment.into_iter().map(Option::unwrap).collect(),
    }
}

/// Covers exactly the devices in `uncovered` (indices into the adjacency),
/// returning a sparse head map for them. Devices outside `uncovered` are
/// left untouched.
fn greedy_cover(
    adjacency: &Adjacency,
    weights: &[f64],
    uncovered: &mut Vec<usize>,
) -> Vec<Option<DeviceId>> {
    let n = adjacency.device_count();
    let mut head_of: Vec<Option<DeviceId>> = vec![None; n];
    let mut in_pool = vec![false; n];
    for &d in uncovered.iter() {
        in_pool[d] = true;
    }
    while !uncovered.is_empty() {
        let &best = uncovered
            .iter()
            .min_by(|&&a, &&b| {
                weights[a]
                    .partial_cmp(&weights[b])
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(a.cmp(&b))
            })
            .expect("non-empty uncovered set");
        let head = DeviceId(best as u32);
        head_of[best] = Some(head);
        in_pool[best] = false;
        for &nb in adjacency.neighbors(head) {
            if in_pool[nb.index()] {
                head_of[nb.index()] = Some(head);
                in_pool[nb.index()] = false;
            }
        }
        uncovered.retain(|&d| in_pool[d]);
    }
    head_of
}

/// Maintains an assignment across one topology change. Members whose head
/// left transmission range detach and join the nearest surviving in-range
/// head (ties to the smallest id); members with no head in range are covered
/// by a fresh greedy election restricted to them. Heads persist.
///
/// Returns the new assignment and the number of devices whose head pointer
/// changed identity.
pub fn wca_maintain(
    previous: &WcaAssignment,
    snapshot: &TopologySnapshot,
    weights: &[f64],
) -> (WcaAssignment, u64) {
    let n = previous.device_count();
    let adjacency = &snapshot.adjacency;
    debug_assert_eq!(adjacency.device_count(), n);
    let mut head_of: Vec<Option<DeviceId>> = vec![None; n];
    let mut orphans: Vec<usize> = Vec::new();

    for d in 0..n {
        let dev = DeviceId(d as u32);
        let head = previous.head_of(dev);
        if head == dev {
            head_of[d] = Some(dev);
            continue;
        }
        if adjacency.contains(dev, head) {
            head_of[d] = Some(head);
            continue;
        }
        // Detached: pick the nearest previous head still in range.
        let mut best: Option<(f64, DeviceId)> = None;
        for &nb in adjacency.neighbors(dev) {
            if previous.is_head(nb) {
                let dist = snapshot.positions[d].distance_to(snapshot.positions[nb.index()]);
                let closer = match best {
                    None => true,
                    Some((bd, bid)) => dist < bd || (dist == bd && nb < bid),
                };
                if closer {
                    best = Some((dist, nb));
                }
            }
        }
        match best {
            Some((_, h)) => head_of[d] = Some(h),
            None => orphans.push(d),
        }
    }

    if !orphans.is_empty() {
        let fresh = greedy_cover(adjacency, weights, &mut orphans);
        for (d, h) in fresh.into_iter().enumerate() {
            if let Some(h) = h {
                head_of[d] = Some(h);
            }
        }
    }

    let head_of: Vec<DeviceId> = head_of.into_iter().map(Option::unwrap).collect();
    let reaffiliations = head_of
        .iter()
        .zip(previous.pointers())
        .filter(|(new, old)| new != old)
        .count() as u64;
    (WcaAssignment { head_of }, reaffiliations)
}

//! The WACA per-device election: clusterhead choice from beaconed weights,
//! role classification, and the king bonus that stabilizes clusterheads with
//! steady neighborhoods.
//!
//! Election is driven entirely by beacons. Every device broadcasts one
//! beacon per tick carrying its weight and current clusterhead choice, and
//! elects the neighbor with the strictly highest beaconed weight above its
//! own (ties broken by smallest id). Weight updates therefore take one tick
//! to influence neighbors. Because all weights compared within a tick come
//! from the same committed snapshot, clusterhead pointers strictly increase
//! in weight along a chain and can never form a cycle.

use crate::error::{Error, Result};
use crate::topology::{Adjacency, DeviceId};

/// Maximum king bonus value.
pub const KING_BONUS_MAX: f64 = 99.0;
/// Amount added per completed stability period.
pub const KING_BONUS_STEP: f64 = 33.0;
/// Stability period in ticks (3 seconds at the default 1 s tick).
pub const KING_BONUS_PERIOD_TICKS: u32 = 3;

/// The per-tick broadcast of one device: its weight and clusterhead choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeaconData {
    pub weight: f64,
    pub clusterhead: DeviceId,
}

/// Role of a device in the cluster hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// Elected itself; top of a clusterhead chain.
    Clusterhead,
    /// Points at a higher-weight neighbor but is elected by at least one
    /// neighbor itself; an intermediary on the chain.
    SubHead,
    /// Points at a neighbor and is elected by nobody.
    Slave,
}

impl Role {
    pub fn is_head_like(self) -> bool {
        matches!(self, Role::Clusterhead | Role::SubHead)
    }
}

impl std::fmt::Display for Role {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Role::Clusterhead => "clusterhead",
            Role::SubHead => "sub-head",
            Role::Slave => "slave",
        })
    }
}

/// Outcome of one device's election pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Election {
    /// The elected clusterhead; equals the device itself when no neighbor
    /// beacons a strictly higher weight.
    pub clusterhead: DeviceId,
    pub is_cluster_head: bool,
    /// Local view: some neighbor's beacon names this device as clusterhead
    /// while the device itself points elsewhere. May lag the synchronous
    /// view of [`classify_roles`] by one tick.
    pub is_sub_head: bool,
}

/// Elects a clusterhead for `device` from its neighbors' beacons.
///
/// The neighbor with the greatest beaconed weight strictly above
/// `own_weight` wins; ties among maximal candidates go to the smallest id;
/// without any qualifying neighbor the device elects itself.
pub fn elect(
    device: DeviceId,
    own_weight: f64,
    neighbor_beacons: &[(DeviceId, BeaconData)],
) -> Result<Election> {
    let mut best: Option<(f64, DeviceId)> = None;
    let mut is_sub_head = false;
    let mut prev: Option<DeviceId> = None;
    for &(n, beacon) in neighbor_beacons {
        if n == device {
            return Err(Error::Consistency(format!(
                "{device} received its own beacon as a neighbor"
            )));
        }
        if prev == Some(n) {
            return Err(Error::Consistency(format!(
                "duplicate beacon from {n} for {device}"
            )));
        }
        prev = Some(n);
        if beacon.weight > own_weight {
            let better = match best {
                None => true,
                Some((w, id)) => beacon.weight > w || (beacon.weight == w && n < id),
            };
            if better {
                best = Some((beacon.weight, n));
            }
        }
        if beacon.clusterhead == device {
            is_sub_head = true;
        }
    }
    let clusterhead = best.map_or(device, |(_, id)| id);
    let is_cluster_head = clusterhead == device;
    Ok(Election {
        clusterhead,
        is_cluster_head,
        is_sub_head: is_sub_head && !is_cluster_head,
    })
}

/// Classifies every device from the synchronous view of this tick's
/// clusterhead pointers: `Clusterhead` if it points at itself, `SubHead` if
/// it points elsewhere but is pointed at by a neighbor, `Slave` otherwise.
///
/// Also verifies that every pointer chain terminates at a clusterhead;
/// a cycle means the strict-weight-increase property was broken upstream.
pub fn classify_roles(clusterhead_of: &[DeviceId], adjacency: &Adjacency) -> Result<Vec<Role>> {
    let n = clusterhead_of.len();
    if n != adjacency.device_count() {
        return Err(Error::Consistency(format!(
            "{n} clusterhead pointers for {} devices",
            adjacency.device_count()
        )));
    }
    let mut pointed_at = vec![false; n];
    for (d, &ch) in clusterhead_of.iter().enumerate() {
        if ch.index() >= n {
            return Err(Error::UnknownDevice(ch));
        }
        if ch.index() != d {
            if !adjacency.contains(DeviceId(d as u32), ch) {
                return Err(Error::Consistency(format!(
                    "d{d} elected non-neighbor {ch}"
                )));
            }
            pointed_at[ch.index()] = true;
        }
    }
    // Chain termination check: walking pointers from any device must reach a
    // self-elected head within n hops.
    for start in 0..n {
        let mut cur = start;
        let mut hops = 0;
        while clusterhead_of[cur].index() != cur {
            cur = clusterhead_of[cur].index();
            hops += 1;
            if hops > n {
                return Err(Error::Invariant(format!(
                    "clusterhead pointer cycle reachable from d{start}"
                )));
            }
        }
    }
    Ok(clusterhead_of
        .iter()
        .enumerate()
        .map(|(d, &ch)| {
            if ch.index() == d {
                Role::Clusterhead
            } else if pointed_at[d] {
                Role::SubHead
            } else {
                Role::Slave
            }
        })
        .collect())
}

/// Neighborhood turnover ratio `(|M \ N| + |N \ M|) / (|N| + |M|)` between
/// the previous neighbor set `M` and the updated set `N`. Both slices must
/// be sorted and at least one must be non-empty.
pub fn stability_coefficient(current: &[DeviceId], previous: &[DeviceId]) -> Result<f64> {
    let total = current.len() + previous.len();
    if total == 0 {
        return Err(Error::InvalidInput(
            "stability coefficient is undefined for two empty neighbor sets".into(),
        ));
    }
    debug_assert!(current.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(previous.windows(2).all(|w| w[0] < w[1]));
    let mut i = 0;
    let mut j = 0;
    let mut common = 0usize;
    while i < current.len() && j < previous.len() {
        match current[i].cmp(&previous[j]) {
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
        }
    }
    let lost = previous.len() - common;
    let gained = current.len() - common;
    Ok((lost + gained) as f64 / total as f64)
}

/// King bonus bookkeeping for one device.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct KingBonusState {
    /// Current bonus value in [0, 99].
    pub bonus: f64,
    /// Ticks elapsed since the last bonus event while heading a stable
    /// neighborhood.
    pub stable_ticks: u32,
    /// Neighbor set observed on the previous update (sorted).
    pub prev_neighbors: Vec<DeviceId>,
}

impl KingBonusState {
    pub fn new() -> Self {
        Self::default()
    }

    /// True while a further timed increase is still due, i.e. the device
    /// heads a non-empty stable neighborhood with an unsaturated bonus.
    pub fn pending_increase(&self, is_cluster_head: bool) -> bool {
        is_cluster_head && !self.prev_neighbors.is_empty() && self.bonus < KING_BONUS_MAX
    }
}

/// Advances the king bonus of one device by one tick and returns the new
/// value. `neighbors` must be sorted.
///
/// The bonus is zeroed for non-clusterheads and for clusterheads without
/// neighbors; a neighborhood change scales it down by the stability
/// coefficient; and a clusterhead whose neighborhood stayed unchanged for a
/// full stability period gains [`KING_BONUS_STEP`], capped at
/// [`KING_BONUS_MAX`]. Gaining or losing headship and any neighborhood
/// change restart the period.
pub fn update_king_bonus(
    state: &mut KingBonusState,
    was_cluster_head: bool,
    is_cluster_head: bool,
    neighbors: &[DeviceId],
) -> Result<f64> {
    if !is_cluster_head || neighbors.is_empty() {
        state.bonus = 0.0;
        state.stable_ticks = 0;
    } else if neighbors != state.prev_neighbors.as_slice() {
        let s = stability_coefficient(neighbors, &state.prev_neighbors)?;
        state.bonus -= state.bonus * s;
        state.stable_ticks = 0;
    } else if !was_cluster_head {
        // Freshly elected head over an unchanged neighborhood: the first
        // increase is only due a full period later.
        state.stable_ticks = 0;
    } else if state.bonus < KING_BONUS_MAX {
        state.stable_ticks += 1;
        if state.stable_ticks >= KING_BONUS_PERIOD_TICKS {
            state.bonus = (state.bonus + KING_BONUS_STEP).min(KING_BONUS_MAX);
            state.stable_ticks = 0;
        }
    }
    state.prev_neighbors.clear();
    state.prev_neighbors.extend_from_slice(neighbors);
    debug_assert!((0.0..=KING_BONUS_MAX).contains(&state.bonus));
    Ok(state.bonus)
}

/// Beacons required for one election round: exactly one per device.
pub fn beacon_count_for_round(n_devices: usize) -> usize {
    n_devices
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{compute_neighbors, Position};

    fn id(i: u32) -> DeviceId {
        DeviceId(i)
    }

    fn beacon(weight: f64, ch: u32) -> BeaconData {
        BeaconData {
            weight,
            clusterhead: id(ch),
        }
    }

    #[test]
    fn isolated_device_elects_itself() {
        let e = elect(id(0), 1.0, &[]).unwrap();
        assert_eq!(e.clusterhead, id(0));
        assert!(e.is_cluster_head);
        assert!(!e.is_sub_head);
    }

    #[test]
    fn heavier_neighbor_wins() {
        let e = elect(id(0), 3.0, &[(id(1), beacon(5.0, 1))]).unwrap();
        assert_eq!(e.clusterhead, id(1));
        assert!(!e.is_cluster_head);
    }

    #[test]
    fn equal_weight_does_not_displace_self() {
        let e = elect(id(0), 5.0, &[(id(1), beacon(5.0, 1)), (id(2), beacon(4.0, 2))]).unwrap();
        assert_eq!(e.clusterhead, id(0));
        assert!(e.is_cluster_head);
    }

    #[test]
    fn tie_between_qualifying_neighbors_goes_to_smallest_id() {
        let e = elect(id(0), 1.0, &[(id(2), beacon(5.0, 2)), (id(7), beacon(5.0, 7))]).unwrap();
        assert_eq!(e.clusterhead, id(2));
    }

    #[test]
    fn sub_head_flag_follows_neighbor_pointers() {
        // Neighbor 1 points at us while we point at a heavier neighbor 2.
        let e = elect(id(0), 2.0, &[(id(1), beacon(1.0, 0)), (id(2), beacon(3.0, 2))]).unwrap();
        assert!(e.is_sub_head);
        // Pointed at while electing ourselves: clusterhead, not sub-head.
        let e = elect(id(0), 2.0, &[(id(1), beacon(1.0, 0))]).unwrap();
        assert!(e.is_cluster_head);
        assert!(!e.is_sub_head);
    }

    #[test]
    fn own_beacon_in_neighbor_list_is_a_consistency_error() {
        let err = elect(id(0), 1.0, &[(id(0), beacon(2.0, 0))]).unwrap_err();
        assert!(matches!(err, Error::Consistency(_)));
    }

    #[test]
    fn duplicate_neighbor_beacon_is_a_consistency_error() {
        let err = elect(
            id(0),
            1.0,
            &[(id(1), beacon(2.0, 1)), (id(1), beacon(2.0, 1))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Consistency(_)));
    }

    fn line_adjacency(n: usize) -> Adjacency {
        let positions: Vec<Position> = (0..n)
            .map(|i| Position::new(i as f64 * 8.0, 0.0))
            .collect();
        compute_neighbors(&positions, 10.0).unwrap()
    }

    #[test]
    fn chain_of_three_yields_head_subhead_slave() {
        // Weights a=1 < b=2 < c=3 on a line a-b-c.
        let adj = line_adjacency(3);
        let weights = [1.0, 2.0, 3.0];
        let mut pointers = Vec::new();
        for d in 0..3 {
            let beacons: Vec<(DeviceId, BeaconData)> = adj
                .neighbors(id(d))
                .iter()
                .map(|&n| (n, beacon(weights[n.index()], n.0)))
                .collect();
            pointers.push(elect(id(d), weights[d as usize], &beacons).unwrap().clusterhead);
        }
        assert_eq!(pointers, vec![id(1), id(2), id(2)]);
        let roles = classify_roles(&pointers, &adj).unwrap();
        assert_eq!(roles, vec![Role::Slave, Role::SubHead, Role::Clusterhead]);
    }

    #[test]
    fn isolated_devices_are_all_clusterheads() {
        let positions: Vec<Position> = (0..4)
            .map(|i| Position::new(i as f64 * 100.0, 0.0))
            .collect();
        let adj = compute_neighbors(&positions, 10.0).unwrap();
        let pointers: Vec<DeviceId> = (0..4).map(id).collect();
        let roles = classify_roles(&pointers, &adj).unwrap();
        assert!(roles.iter().all(|&r| r == Role::Clusterhead));
    }

    #[test]
    fn star_with_heavy_center_makes_leaves_slaves() {
        let mut positions = vec![Position::new(50.0, 50.0)];
        positions.extend((0..4).map(|i| Position::new(50.0 + (i as f64 - 1.5), 55.0)));
        let adj = compute_neighbors(&positions, 20.0).unwrap();
        let weights = [9.0, 1.0, 2.0, 3.0, 4.0];
        let mut pointers = Vec::new();
        for d in 0..5u32 {
            let beacons: Vec<(DeviceId, BeaconData)> = adj
                .neighbors(id(d))
                .iter()
                .map(|&n| (n, beacon(weights[n.index()], n.0)))
                .collect();
            pointers.push(elect(id(d), weights[d as usize], &beacons).unwrap().clusterhead);
        }
        let roles = classify_roles(&pointers, &adj).unwrap();
        assert_eq!(roles[0], Role::Clusterhead);
        // The leaves are close enough to be mutual neighbors here, so some
        // may point at heavier leaves; nobody but the center may be a head.
        assert_eq!(
            roles.iter().filter(|&&r| r == Role::Clusterhead).count(),
            1
        );
    }

    #[test]
    fn two_components_elect_two_heads() {
        let positions = vec![
            Position::new(0.0, 0.0),
            Position::new(5.0, 0.0),
            Position::new(80.0, 0.0),
            Position::new(85.0, 0.0),
        ];
        let adj = compute_neighbors(&positions, 10.0).unwrap();
        let weights = [2.0, 1.0, 1.0, 2.0];
        let mut pointers = Vec::new();
        for d in 0..4u32 {
            let beacons: Vec<(DeviceId, BeaconData)> = adj
                .neighbors(id(d))
                .iter()
                .map(|&n| (n, beacon(weights[n.index()], n.0)))
                .collect();
            pointers.push(elect(id(d), weights[d as usize], &beacons).unwrap().clusterhead);
        }
        let roles = classify_roles(&pointers, &adj).unwrap();
        assert_eq!(
            roles.iter().filter(|&&r| r == Role::Clusterhead).count(),
            2
        );
    }

    #[test]
    fn pointer_cycle_is_detected() {
        let adj = line_adjacency(2);
        let pointers = vec![id(1), id(0)];
        let err = classify_roles(&pointers, &adj).unwrap_err();
        assert!(matches!(err, Error::Invariant(_)));
    }

    #[test]
    fn unknown_pointer_is_rejected() {
        let adj = line_adjacency(2);
        let err = classify_roles(&[id(0), id(9)], &adj).unwrap_err();
        assert!(matches!(err, Error::UnknownDevice(_)));
    }

    #[test]
    fn stability_coefficient_examples() {
        let a = [id(0), id(1)];
        assert_eq!(stability_coefficient(&a, &a).unwrap(), 0.0);
        let n = [id(0), id(1), id(2)];
        let m = [id(0), id(1)];
        assert!((stability_coefficient(&n, &m).unwrap() - 0.2).abs() < 1e-12);
        let n = [id(2), id(3)];
        let m = [id(0), id(1)];
        assert_eq!(stability_coefficient(&n, &m).unwrap(), 1.0);
        assert!(stability_coefficient(&[], &[]).is_err());
    }

    #[test]
    fn losing_headship_zeroes_the_bonus() {
        let mut state = KingBonusState {
            bonus: 66.0,
            stable_ticks: 1,
            prev_neighbors: vec![id(1)],
        };
        let k = update_king_bonus(&mut state, true, false, &[id(1)]).unwrap();
        assert_eq!(k, 0.0);
    }

    #[test]
    fn clusterhead_without_neighbors_has_zero_bonus() {
        let mut state = KingBonusState {
            bonus: 33.0,
            stable_ticks: 2,
            prev_neighbors: vec![id(1)],
        };
        let k = update_king_bonus(&mut state, true, true, &[]).unwrap();
        assert_eq!(k, 0.0);
    }

    #[test]
    fn stable_head_gains_the_step_every_period() {
        let neighbors = [id(1), id(2)];
        let mut state = KingBonusState::new();
        // Becoming head counts as an event; the first increase lands a full
        // period later. Sampled at period boundaries: 0, 33, 66, 99, 99.
        let mut samples = vec![];
        let mut was_head = false;
        for tick in 0..15 {
            let k = update_king_bonus(&mut state, was_head, true, &neighbors).unwrap();
            was_head = true;
            if tick % 3 == 0 {
                samples.push(k);
            }
        }
        assert_eq!(samples, vec![0.0, 33.0, 66.0, 99.0, 99.0]);
    }

    #[test]
    fn neighborhood_change_scales_the_bonus_down() {
        let mut state = KingBonusState {
            bonus: 66.0,
            stable_ticks: 0,
            prev_neighbors: vec![id(1), id(2)],
        };
        // {1,2} -> {1,3}: one lost + one new over 4 = 0.5.
        let k = update_king_bonus(&mut state, true, true, &[id(1), id(3)]).unwrap();
        assert!((k - 33.0).abs() < 1e-12);
    }

    #[test]
    fn bonus_stays_within_bounds_under_churn() {
        let mut state = KingBonusState::new();
        let sets: Vec<Vec<DeviceId>> = vec![
            vec![id(1)],
            vec![id(1), id(2)],
            vec![id(2)],
            vec![id(2)],
            vec![id(2)],
            vec![id(2)],
            vec![id(3), id(4)],
            vec![],
            vec![id(5)],
        ];
        let mut was_head = false;
        for set in &sets {
            let k = update_king_bonus(&mut state, was_head, true, set).unwrap();
            assert!((0.0..=KING_BONUS_MAX).contains(&k));
            was_head = true;
        }
    }

    #[test]
    fn beacon_count_is_one_per_device() {
        assert_eq!(beacon_count_for_round(1), 1);
        assert_eq!(beacon_count_for_round(20), 20);
        assert_eq!(beacon_count_for_round(60), 60);
    }
}

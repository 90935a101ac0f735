//! Simulation library for hierarchical weighted clustering in mobile ad-hoc
//! networks.
//!
//! The crate models an ad-hoc network as a unit-disk graph over a rectangular
//! area and provides two clusterhead election algorithms on top of it:
//!
//! * **WACA** — each device computes a heuristic weight from its power
//!   appropriateness, backbone signal strength, local clustering coefficient
//!   and degree deviation, then elects the highest-weight neighbor as its
//!   clusterhead. Chains of elections produce multi-hop clusters with
//!   intermediate sub-heads. A *king bonus* rewards clusterheads with stable
//!   neighborhoods so that transiently passing high-weight devices do not
//!   trigger needless re-elections.
//! * **WCA** — the classic weighted clustering baseline: 1-hop clusters,
//!   minimization of a combined degree/distance/mobility/head-time metric,
//!   and an on-demand detachment policy.
//!
//! The [`sim`] module wraps both in a deterministic two-phase tick engine
//! with metric collection and a seed-averaged parameter sweep harness.

pub mod error;
pub mod mobility;
pub mod rng;
pub mod sim;
pub mod stats;
pub mod topology;
pub mod verify;
pub mod waca;
pub mod wca;
pub mod weighting;

pub use error::{Error, Result};
pub use sim::config::{Algorithm, Mobility, SignalMode, SimulationConfig};
pub use sim::engine::{run_simulation, World};
pub use sim::metrics::{MetricsSeries, RunSummary, TickRecord};
pub use sim::sweep::{build_grid, sweep, CellKey, ExperimentTable, MetricRow, SweepCell};
pub use topology::{DeviceId, Position, TopologySnapshot};
pub use waca::Role;

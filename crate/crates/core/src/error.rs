//! Crate-wide error type.

use crate::topology::DeviceId;

/// Errors surfaced by the simulator and its building blocks.
///
/// `Config` and `InvalidInput` indicate bad parameterization and map to CLI
/// exit code 1; `Consistency` and `Invariant` indicate a broken run and map
/// to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid configuration value (bad range, zero devices, unknown key...).
    #[error("configuration error: {0}")]
    Config(String),

    /// Invalid value fed to an operation (non-finite coordinate, negative power...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Reference to a device id that does not exist in the current topology.
    #[error("unknown device id {}", (.0).0)]
    UnknownDevice(DeviceId),

    /// Cross-device state disagrees in a way the protocol rules out.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// A structural invariant failed mid-simulation; the run is aborted.
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

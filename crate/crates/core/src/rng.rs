//! Seeded random streams.
//!
//! All randomness flows through ChaCha8, which is portable across platforms
//! and offers independent streams for one seed. Placement, attribute
//! sampling and each device's waypoint draws get their own stream, so
//! trajectories do not depend on the order devices are stepped and stay
//! identical across algorithm variants run on the same seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const PLACEMENT_STREAM: u64 = 0;
pub const ATTRIBUTE_STREAM: u64 = 1;
const DEVICE_STREAM_BASE: u64 = 2;

/// A deterministic generator for (seed, stream).
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// The waypoint stream of one device.
pub fn device_stream_rng(seed: u64, device: usize) -> ChaCha8Rng {
    stream_rng(seed, DEVICE_STREAM_BASE + device as u64)
}

//! Device placement and the random waypoint mobility model.
//!
//! Movers travel in a straight line at constant speed toward a uniformly
//! drawn destination and immediately draw a new one on arrival (zero pause
//! time). Residual travel budget at a waypoint is spent toward the next
//! waypoint within the same step, so the realized speed is exact.

use rand::Rng;

use crate::error::{Error, Result};
use crate::topology::Position;

/// Rectangular simulation area anchored at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Area {
    pub width: f64,
    pub height: f64,
}

impl Area {
    pub fn validate(&self) -> Result<()> {
        if !(self.width.is_finite() && self.width > 0.0)
            || !(self.height.is_finite() && self.height > 0.0)
        {
            return Err(Error::Config(format!(
                "area must have positive finite dimensions, got {}x{}",
                self.width, self.height
            )));
        }
        Ok(())
    }

    pub fn contains(&self, p: Position) -> bool {
        (0.0..=self.width).contains(&p.x) && (0.0..=self.height).contains(&p.y)
    }

    fn sample(&self, rng: &mut impl Rng) -> Position {
        Position::new(
            rng.gen_range(0.0..self.width),
            rng.gen_range(0.0..self.height),
        )
    }
}

/// Motion state of one device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobilityState {
    pub position: Position,
    pub waypoint: Position,
    pub speed: f64,
    pub moving: bool,
}

impl MobilityState {
    /// A device that never moves.
    pub fn stationary(position: Position) -> Self {
        Self {
            position,
            waypoint: position,
            speed: 0.0,
            moving: false,
        }
    }

    /// A mover with its first waypoint drawn from `rng`.
    pub fn waypoint_walker(
        position: Position,
        speed: f64,
        area: Area,
        rng: &mut impl Rng,
    ) -> Self {
        Self {
            position,
            waypoint: area.sample(rng),
            speed,
            moving: true,
        }
    }
}

/// Draws `n` independent uniform positions over the area.
pub fn init_positions(n: usize, area: Area, rng: &mut impl Rng) -> Result<Vec<Position>> {
    if n == 0 {
        return Err(Error::Config("device count must be at least 1".into()));
    }
    area.validate()?;
    Ok((0..n).map(|_| area.sample(rng)).collect())
}

/// Advances one device by `dt` seconds. Waypoints reached mid-step are
/// replaced immediately and the remaining travel budget continues toward the
/// fresh destination.
pub fn step(state: &mut MobilityState, area: Area, dt: f64, rng: &mut impl Rng) {
    debug_assert!(dt > 0.0);
    if !state.moving || state.speed <= 0.0 {
        return;
    }
    let mut budget = state.speed * dt;
    // The loop consumes distance toward successive waypoints; the draw-limit
    // guard only matters if a waypoint ever lands exactly on the position.
    let mut draws = 0;
    while budget > 0.0 {
        let dx = state.waypoint.x - state.position.x;
        let dy = state.waypoint.y - state.position.y;
        let dist = (dx * dx + dy * dy).sqrt();
        if dist <= budget {
            state.position = state.waypoint;
            budget -= dist;
            state.waypoint = area.sample(rng);
            draws += 1;
            if draws > 10_000 {
                break;
            }
        } else {
            let f = budget / dist;
            state.position = Position::new(state.position.x + dx * f, state.position.y + dy * f);
            budget = 0.0;
        }
    }
}

//! The heuristic weight function combining power appropriateness, backbone
//! signal strength, local clustering coefficient and degree deviation, plus
//! the additive king bonus.

use crate::error::{Error, Result};

/// Floor for the logarithm argument in [`power_appropriateness`]; keeps the
/// result finite for under-provisioned devices.
pub const POWER_LOG_FLOOR: f64 = 1e-6;

/// Per-device scalars feeding the weight function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceAttributes {
    /// Available power over the power required for the task at hand; >= 0.
    pub power_ratio: f64,
    /// Backbone signal strength in [0, 1].
    pub signal_strength: f64,
}

impl DeviceAttributes {
    pub fn validate(&self) -> Result<()> {
        if !(self.power_ratio.is_finite() && self.power_ratio >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "power ratio must be finite and >= 0, got {}",
                self.power_ratio
            )));
        }
        if !(self.signal_strength.is_finite()
            && (0.0..=1.0).contains(&self.signal_strength))
        {
            return Err(Error::InvalidInput(format!(
                "signal strength must be in [0, 1], got {}",
                self.signal_strength
            )));
        }
        Ok(())
    }
}

/// Weighing factors of the combined weight plus the ideal degree and the
/// scale applied to the king bonus term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightFactors {
    pub wf1: f64,
    pub wf2: f64,
    pub wf3: f64,
    pub wf4: f64,
    pub ideal_degree: u32,
    pub king_bonus_scale: f64,
}

impl Default for WeightFactors {
    fn default() -> Self {
        Self {
            wf1: 0.9,
            wf2: 1.0,
            wf3: 0.85,
            wf4: 0.65,
            // Bluetooth-style master/slave limit of seven active slaves.
            ideal_degree: 7,
            king_bonus_scale: 1.0,
        }
    }
}

impl WeightFactors {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("wf1", self.wf1),
            ("wf2", self.wf2),
            ("wf3", self.wf3),
            ("wf4", self.wf4),
            ("king_bonus_scale", self.king_bonus_scale),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Config(format!(
                    "weighing factor {name} must be finite and >= 0, got {v}"
                )));
            }
        }
        if self.ideal_degree == 0 {
            return Err(Error::Config(
                "ideal degree must be a positive integer".into(),
            ));
        }
        Ok(())
    }
}

/// Fully evaluated inputs of the weight function for one device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightInputs {
    pub power_appropriateness: f64,
    pub signal_strength: f64,
    pub clustering_coefficient: f64,
    pub degree_deviation: f64,
    pub king_bonus: f64,
}

/// Power appropriateness of a device with power ratio `p`:
/// `3/2 + 1/2 * log10(p - 3/5)`, with the log argument floored at
/// [`POWER_LOG_FLOOR`] and the result clamped below at 0 so that
/// under-provisioned devices score minimally instead of diverging.
pub fn power_appropriateness(power_ratio: f64) -> Result<f64> {
    if !(power_ratio.is_finite() && power_ratio >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "power ratio must be finite and >= 0, got {power_ratio}"
        )));
    }
    let arg = (power_ratio - 0.6).max(POWER_LOG_FLOOR);
    Ok((1.5 + 0.5 * arg.log10()).max(0.0))
}

/// Combined device weight:
/// `wf1*P_A + wf2*s + wf3*c_L + wf4*dd + king_bonus_scale*k`.
pub fn total_weight(inputs: &WeightInputs, factors: &WeightFactors) -> Result<f64> {
    for (name, v) in [
        ("power appropriateness", inputs.power_appropriateness),
        ("signal strength", inputs.signal_strength),
        ("clustering coefficient", inputs.clustering_coefficient),
        ("degree deviation", inputs.degree_deviation),
        ("king bonus", inputs.king_bonus),
    ] {
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!(
                "{name} must be finite, got {v}"
            )));
        }
    }
    Ok(factors.wf1 * inputs.power_appropriateness
        + factors.wf2 * inputs.signal_strength
        + factors.wf3 * inputs.clustering_coefficient
        + factors.wf4 * inputs.degree_deviation
        + factors.king_bonus_scale * inputs.king_bonus)
}

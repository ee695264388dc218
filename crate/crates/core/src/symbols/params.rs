use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Below this distance from `a = 1` the weight is treated as the self-adjoint one.
pub const SELF_ADJOINT_EPS: f64 = 1e-12;

/// Minimum distance of an accepted angle from `0`, `π` and `2π`.
pub const ANGLE_GAP: f64 = 1e-5;

/// Wedge opening angle `α ∈ (0, 2π) \ {π}` and weight exponent `a ∈ (−1, 3)`.
///
/// Angles closer than [`ANGLE_GAP`] to an excluded value are rejected too,
/// since the wedge degenerates there (a half-space at `α = π`). The gap also
/// catches `π` typed with five or six decimals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeParams {
    alpha: f64,
    a: f64,
}

impl WedgeParams {
    pub fn new(alpha: f64, a: f64) -> Result<Self> {
        if !alpha.is_finite() || !(alpha > 0.0 && alpha < 2.0 * PI) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 2π), got {alpha}"
            )));
        }
        let gap = ANGLE_GAP;
        if alpha < gap || (alpha - PI).abs() < gap || 2.0 * PI - alpha < gap {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} is an excluded angle (0, π and 2π give no wedge)"
            )));
        }
        if !a.is_finite() || !(a > -1.0 && a < 3.0) {
            return Err(Error::InvalidParameter(format!(
                "weight exponent a must lie in (-1, 3), got {a}"
            )));
        }
        Ok(Self { alpha, a })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Same angle, different weight.
    pub fn with_weight(&self, a: f64) -> Result<Self> {
        Self::new(self.alpha, a)
    }

    /// `a = 1`, where the curve collapses to a real interval.
    pub fn is_self_adjoint_weight(&self) -> bool {
        (self.a - 1.0).abs() < SELF_ADJOINT_EPS
    }

    /// Exponential decay rate `min(α, 2π − α)` of the symbol in `|ξ|`.
    pub fn decay_rate(&self) -> f64 {
        self.alpha.min(2.0 * PI - self.alpha)
    }
}

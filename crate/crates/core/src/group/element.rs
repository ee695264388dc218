use std::ops::Mul;

use crate::error::{Error, Result};

/// A point `(x, z)` of the `ax+b` group, `x > 0`, acting on the line by
/// `y ↦ x·y + z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    x: f64,
    z: f64,
}

impl GroupElement {
    pub fn new(x: f64, z: f64) -> Result<Self> {
        if !(x > 0.0 && x.is_finite()) || !z.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "group element needs finite x > 0 and finite z, got ({x}, {z})"
            )));
        }
        Ok(Self { x, z })
    }

    pub const IDENTITY: GroupElement = GroupElement { x: 1.0, z: 0.0 };

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// `(x, z)⁻¹ = (1/x, −z/x)`.
    pub fn inverse(&self) -> Self {
        Self {
            x: 1.0 / self.x,
            z: -self.z / self.x,
        }
    }

    /// Haar modulus `Δ(x, z) = 1/x`.
    pub fn haar_modulus(&self) -> f64 {
        1.0 / self.x
    }
}

/// `(x, z)·(s, t) = (xs, xt + z)`.
impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, h: GroupElement) -> GroupElement {
        GroupElement {
            x: self.x * h.x,
            z: self.x * h.z + self.z,
        }
    }
}

pub fn multiply(g: GroupElement, h: GroupElement) -> GroupElement {
    g * h
}

pub fn inverse(g: GroupElement) -> GroupElement {
    g.inverse()
}

pub fn haar_modulus(g: GroupElement) -> f64 {
    g.haar_modulus()
}

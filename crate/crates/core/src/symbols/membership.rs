use num_complex::Complex64;

use super::curve::{sample_curve, segment_distance, SpectralCurve, DEFAULT_TAU_ON};
use super::params::WedgeParams;
use super::symbol::{norm_bound, sigma_point};
use crate::error::{Error, Result};

/// Where a point sits relative to the L² spectrum `−Σ̂ ∪ Σ̂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Resolvent,
    Boundary,
    Interior,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Resolvent => "resolvent",
            Classification::Boundary => "boundary",
            Classification::Interior => "interior",
        }
    }
}

/// Tolerances for spectrum membership.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipTolerance {
    /// Points closer than this to `±Σ` are classified as boundary.
    pub tau_on: f64,
    /// Chord length used when sampling `Σ`.
    pub curve_tol: f64,
}

impl Default for MembershipTolerance {
    fn default() -> Self {
        Self {
            tau_on: DEFAULT_TAU_ON,
            curve_tol: 1e-3,
        }
    }
}

impl MembershipTolerance {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau_on > 0.0 && self.tau_on.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tau_on must be positive, got {}",
                self.tau_on
            )));
        }
        if !(self.curve_tol > 0.0 && self.curve_tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "curve tolerance must be positive, got {}",
                self.curve_tol
            )));
        }
        Ok(())
    }
}

/// Outcome of a membership query, with the evidence used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipReport {
    pub classification: Classification,
    /// Winding numbers of `Σ` around `λ` and around `−λ` (`None` when not computed).
    pub winding: Option<(i64, i64)>,
    /// Distance from `λ` to `±Σ` (the boundary of the spectrum).
    pub boundary_distance: f64,
    pub certificate: &'static str,
}

/// The filled curve `Σ̂_{α,a}` (one branch) together with its sampled boundary.
///
/// Built once and queried many times. At `a = 1` the region is the real
/// segment between `0` and `α/π − 1` and no curve is sampled.
#[derive(Debug, Clone)]
pub struct SpectrumRegion {
    params: WedgeParams,
    tol: MembershipTolerance,
    shape: Shape,
}

#[derive(Debug, Clone)]
enum Shape {
    Segment { end: f64 },
    Curve(SpectralCurve),
}

impl SpectrumRegion {
    pub fn new(p: &WedgeParams, tol: MembershipTolerance) -> Result<Self> {
        tol.validate()?;
        let shape = if p.is_self_adjoint_weight() {
            Shape::Segment {
                end: sigma_point(p, 0.0).re,
            }
        } else {
            Shape::Curve(sample_curve(p, tol.curve_tol)?)
        };
        Ok(Self { params: *p, tol, shape })
    }

    pub fn params(&self) -> &WedgeParams {
        &self.params
    }

    pub fn curve(&self) -> Option<&SpectralCurve> {
        match &self.shape {
            Shape::Curve(c) => Some(c),
            Shape::Segment { .. } => None,
        }
    }

    /// Distance from `lambda` to the boundary of `Σ̂` (to the segment when `a = 1`).
    pub fn boundary_distance(&self, lambda: Complex64) -> f64 {
        match &self.shape {
            Shape::Segment { end } => segment_distance(lambda, Complex64::new(0.0, 0.0), Complex64::new(*end, 0.0)),
            Shape::Curve(c) => c.distance(lambda),
        }
    }

    /// Whether `lambda` lies in the interior of `Σ̂` (winding number ≠ 0).
    /// Points on the boundary return an on-curve error.
    pub fn encloses(&self, lambda: Complex64) -> Result<bool> {
        match &self.shape {
            Shape::Segment { .. } => Ok(false),
            Shape::Curve(c) => Ok(c.winding_number_with(lambda, self.tol.tau_on)? != 0),
        }
    }

    /// Distance to `Σ̂`, zero inside or on it.
    pub fn distance(&self, lambda: Complex64) -> Result<f64> {
        let d = self.boundary_distance(lambda);
        if d < self.tol.tau_on {
            return Ok(0.0);
        }
        if self.encloses(lambda)? {
            Ok(0.0)
        } else {
            Ok(d)
        }
    }

    /// Classifies `lambda` against the full L² spectrum `−Σ̂ ∪ Σ̂`.
    pub fn classify(&self, lambda: Complex64) -> Result<MembershipReport> {
        let tau = self.tol.tau_on;
        if let Shape::Segment { end } = &self.shape {
            return Ok(classify_interval(lambda, end.abs(), tau));
        }
        let bd = self.boundary_distance(lambda).min(self.boundary_distance(-lambda));
        if bd < tau {
            return Ok(MembershipReport {
                classification: Classification::Boundary,
                winding: None,
                boundary_distance: bd,
                certificate: "within tau_on of the spectral boundary",
            });
        }
        match &self.shape {
            Shape::Segment { .. } => unreachable!("handled above"),
            Shape::Curve(c) => {
                if lambda.norm() > norm_bound(&self.params) + self.tol.curve_tol {
                    return Ok(MembershipReport {
                        classification: Classification::Resolvent,
                        winding: Some((0, 0)),
                        boundary_distance: bd,
                        certificate: "modulus exceeds the norm bound",
                    });
                }
                let wp = c.winding_number_with(lambda, tau)?;
                let wm = c.winding_number_with(-lambda, tau)?;
                Ok(MembershipReport {
                    classification: if wp != 0 || wm != 0 {
                        Classification::Interior
                    } else {
                        Classification::Resolvent
                    },
                    winding: Some((wp, wm)),
                    boundary_distance: bd,
                    certificate: "winding numbers of the sampled curve",
                })
            }
        }
    }
}

/// `[−m, m]` on the real line: the endpoints are the boundary, the rest of the
/// segment (to within `tau` off the axis) is reported as interior.
pub fn classify_interval(lambda: Complex64, m: f64, tau: f64) -> MembershipReport {
    let to_end = (lambda - m).norm().min((lambda + m).norm());
    let to_segment = segment_distance(lambda, Complex64::new(-m, 0.0), Complex64::new(m, 0.0));
    let classification = if to_end < tau {
        Classification::Boundary
    } else if to_segment < tau {
        Classification::Interior
    } else {
        Classification::Resolvent
    };
    MembershipReport {
        classification,
        winding: None,
        boundary_distance: to_end,
        certificate: "real interval test [-m, m]",
    }
}

/// One-shot classification of `lambda` against `−Σ̂_{α,a} ∪ Σ̂_{α,a}`.
pub fn in_spectrum_l2(p: &WedgeParams, lambda: Complex64, tol: MembershipTolerance) -> Result<MembershipReport> {
    SpectrumRegion::new(p, tol)?.classify(lambda)
}

//! Well-posedness of the transmission problems across the wedge boundary.
//!
//! For permittivity ratio `ε ≠ 1` the problem `∂ₙ⁺U − ε ∂ₙ⁻U = g` reduces to
//! inverting `K_α − λ` with `λ = (1 + ε)/(1 − ε)`. Problem L (square-integrable
//! boundary data, weight `a`) is well posed iff `λ ∉ −Σ̂_{α,a} ∪ Σ̂_{α,a}`;
//! problem E (finite energy) iff `λ ∉ [−|1 − α/π|, |1 − α/π|]`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symbols::{classify_interval, in_spectrum_l2, Classification, MembershipTolerance, WedgeParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    L,
    E,
}

impl Problem {
    pub fn as_str(&self) -> &'static str {
        match self {
            Problem::L => "L",
            Problem::E => "E",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionQuery {
    epsilon: Complex64,
    params: WedgeParams,
    problem: Problem,
}

impl TransmissionQuery {
    /// `a` only matters for problem L.
    pub fn new(epsilon: Complex64, alpha: f64, problem: Problem, a: f64) -> Result<Self> {
        if !(epsilon.re.is_finite() && epsilon.im.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be finite, got {epsilon}"
            )));
        }
        if epsilon == Complex64::new(1.0, 0.0) {
            return Err(Error::Domain("epsilon = 1 has no transmission problem".into()));
        }
        let params = WedgeParams::new(alpha, if problem == Problem::E { 1.0 } else { a })?;
        Ok(Self {
            epsilon,
            params,
            problem,
        })
    }

    pub fn epsilon(&self) -> Complex64 {
        self.epsilon
    }

    pub fn params(&self) -> &WedgeParams {
        &self.params
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub wellposed: bool,
    pub lambda: Complex64,
    pub classification: Classification,
    pub certificate: String,
}

/// `λ = (1 + ε)/(1 − ε)`.
pub fn mobius(epsilon: Complex64) -> Result<Complex64> {
    if epsilon == Complex64::new(1.0, 0.0) {
        return Err(Error::Domain("mobius map is undefined at epsilon = 1".into()));
    }
    Ok((1.0 + epsilon) / (1.0 - epsilon))
}

/// `ε = (λ − 1)/(λ + 1)`.
pub fn mobius_inverse(lambda: Complex64) -> Result<Complex64> {
    if lambda == Complex64::new(-1.0, 0.0) {
        return Err(Error::Domain("inverse mobius map is undefined at lambda = -1".into()));
    }
    Ok((lambda - 1.0) / (lambda + 1.0))
}

/// Half-length `|1 − α/π|` of the energy-space spectrum.
pub fn energy_spectrum_radius(alpha: f64) -> f64 {
    (1.0 - alpha / PI).abs()
}

/// Verdict for `q`. Boundary points count as ill-posed.
pub fn check(q: &TransmissionQuery, tol: MembershipTolerance) -> Result<Verdict> {
    tol.validate()?;
    let lambda = mobius(q.epsilon)?;
    match q.problem {
        Problem::E => {
            let m = energy_spectrum_radius(q.params.alpha());
            let report = classify_interval(lambda, m, tol.tau_on);
            Ok(Verdict {
                wellposed: report.classification == Classification::Resolvent,
                lambda,
                classification: report.classification,
                certificate: format!(
                    "real interval test of lambda against [-m, m], m = {m:.17e}, imaginary tolerance {:e}",
                    tol.tau_on
                ),
            })
        }
        Problem::L => {
            let report = in_spectrum_l2(&q.params, lambda, tol)?;
            let certificate = match report.winding {
                Some((wp, wm)) => format!(
                    "{}: {wp} for the curve, {wm} for the reflected curve, boundary distance {:e}",
                    report.certificate, report.boundary_distance
                ),
                None => format!(
                    "{}; boundary distance {:e}",
                    report.certificate, report.boundary_distance
                ),
            };
            Ok(Verdict {
                wellposed: report.classification == Classification::Resolvent,
                lambda,
                classification: report.classification,
                certificate,
            })
        }
    }
}

/// Real `ε` for which problem E is ill posed: the preimage of
/// `[−m, m]`, `m = |1 − α/π|`, under the Möbius map, ascending.
pub fn illposed_interval_e(alpha: f64) -> Result<(f64, f64)> {
    let p = WedgeParams::new(alpha, 1.0)?;
    let m = energy_spectrum_radius(p.alpha());
    let e_plus = (m - 1.0) / (m + 1.0);
    let e_minus = (-m - 1.0) / (-m + 1.0);
    Ok((e_plus.min(e_minus), e_plus.max(e_minus)))
}

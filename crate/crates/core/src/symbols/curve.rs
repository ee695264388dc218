use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::params::WedgeParams;
use super::symbol::sigma_point;
use crate::error::{Error, Result};

/// Default distance below which a point counts as lying on a curve.
pub const DEFAULT_TAU_ON: f64 = 1e-6;

const INITIAL_GRID: usize = 128;
const MAX_SAMPLES: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub xi: f64,
    pub value: Complex64,
}

/// Sampled polyline of `Σ_{α,a} = { σ(ξ) : ξ ∈ ℝ } ∪ {0}`.
///
/// Samples are stored in increasing `ξ`; the curve is closed through the
/// origin (the common limit as `ξ → ±∞`), which [`SpectralCurve::vertices`]
/// appends. Traversal in increasing `ξ` is the positive orientation for
/// `−1 < a < 1` and the negative one for `1 < a < 3`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCurve {
    params: WedgeParams,
    tol: f64,
    samples: Vec<CurveSample>,
}

/// Adaptive sampling with chord length at most `tol`; tails are extended until
/// `|σ| < tol/10`.
pub fn sample_curve(p: &WedgeParams, tol: f64) -> Result<SpectralCurve> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "curve tolerance must be positive, got {tol}"
        )));
    }
    let scale = 1.0 / p.decay_rate();
    // tan-spaced seeds on ξ ≥ 0, starting at ξ = 0
    let half = INITIAL_GRID / 2;
    let mut xis: Vec<f64> = (half..INITIAL_GRID)
        .map(|j| scale * (PI * (j as f64 / INITIAL_GRID as f64 - 0.5)).tan())
        .collect();
    xis[0] = 0.0;
    let mut right: Vec<CurveSample> = xis
        .par_iter()
        .map(|&xi| CurveSample {
            xi,
            value: sigma_point(p, xi),
        })
        .collect();

    let cutoff = tol / 10.0;
    loop {
        let last = *right.last().expect("seed grid is non-empty");
        if last.value.norm() < cutoff {
            break;
        }
        let xi = last.xi * 1.25 + scale;
        right.push(CurveSample {
            xi,
            value: sigma_point(p, xi),
        });
    }

    // bisect chords longer than tol
    let mut refined = Vec::with_capacity(right.len() * 4);
    refined.push(right[0]);
    for w in right.windows(2) {
        refine_chord(p, w[0], w[1], tol, &mut refined)?;
    }

    let mut samples: Vec<CurveSample> = refined
        .iter()
        .skip(1)
        .rev()
        .map(|s| CurveSample {
            xi: -s.xi,
            value: s.value.conj(),
        })
        .collect();
    samples.extend(refined);
    Ok(SpectralCurve {
        params: *p,
        tol,
        samples,
    })
}

fn refine_chord(
    p: &WedgeParams,
    left: CurveSample,
    right: CurveSample,
    tol: f64,
    out: &mut Vec<CurveSample>,
) -> Result<()> {
    let mut stack = vec![right];
    let mut current = left;
    while let Some(next) = stack.pop() {
        if (next.value - current.value).norm() > tol && next.xi - current.xi > 1e-14 * (1.0 + next.xi.abs()) {
            let xi = 0.5 * (current.xi + next.xi);
            stack.push(next);
            stack.push(CurveSample {
                xi,
                value: sigma_point(p, xi),
            });
        } else {
            out.push(next);
            current = next;
            if out.len() > MAX_SAMPLES {
                return Err(Error::InvalidParameter(format!(
                    "curve tolerance {tol} needs more than {MAX_SAMPLES} samples"
                )));
            }
        }
    }
    Ok(())
}

impl SpectralCurve {
    pub fn params(&self) -> &WedgeParams {
        &self.params
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Samples in increasing `ξ`, conjugate-symmetric about `ξ = 0`.
    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    /// The curve closes at the origin as `ξ → ±∞`.
    pub fn is_closed(&self) -> bool {
        true
    }

    /// Polyline vertices including the closing origin.
    pub fn vertices(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.samples
            .iter()
            .map(|s| s.value)
            .chain(std::iter::once(Complex64::new(0.0, 0.0)))
    }

    /// Closed polyline edges `(start, end)`.
    pub fn edges(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        let first = self.samples[0].value;
        let verts: Vec<Complex64> = self.vertices().collect();
        (0..verts.len()).map(move |i| (verts[i], if i + 1 < verts.len() { verts[i + 1] } else { first }))
    }

    /// Euclidean distance from `lambda` to the closed polyline.
    pub fn distance(&self, lambda: Complex64) -> f64 {
        self.edges()
            .map(|(a, b)| segment_distance(lambda, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Winding number of the closed polyline (traversed in increasing `ξ`)
    /// around `lambda`, with the default on-curve tolerance.
    pub fn winding_number(&self, lambda: Complex64) -> Result<i64> {
        self.winding_number_with(lambda, DEFAULT_TAU_ON)
    }

    pub fn winding_number_with(&self, lambda: Complex64, tau_on: f64) -> Result<i64> {
        let mut total = 0.0;
        let mut closest = f64::INFINITY;
        for (a, b) in self.edges() {
            closest = closest.min(segment_distance(lambda, a, b));
            let da = a - lambda;
            let db = b - lambda;
            total += (db * da.conj()).arg();
        }
        if closest < tau_on {
            return Err(Error::OnCurve {
                re: lambda.re,
                im: lambda.im,
                distance: closest,
            });
        }
        let turns = total / (2.0 * PI);
        let rounded = turns.round();
        let residue = (turns - rounded).abs();
        if residue >= 0.1 {
            return Err(Error::InsufficientSampling { residue });
        }
        Ok(rounded as i64)
    }

    /// Parity of crossings of the horizontal ray `{λ + t : t > 0}` with the
    /// polyline; odd means `lambda` is enclosed.
    pub fn ray_crossings(&self, lambda: Complex64) -> usize {
        self.edges()
            .filter(|(a, b)| {
                let (ya, yb) = (a.im - lambda.im, b.im - lambda.im);
                if (ya > 0.0) == (yb > 0.0) {
                    return false;
                }
                let t = ya / (ya - yb);
                a.re + t * (b.re - a.re) > lambda.re
            })
            .count()
    }
}

/// Distance from `p` to the segment `[a, b]`.
pub fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * d.re + (p - a).im * d.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

//! Fourier-type integrals `∫₀^∞ g(z) cos(ωz) dz` and `∫₀^∞ g(z) sin(ωz) dz`
//! for slowly decaying `g`.
//!
//! The half-line is cut at the zeros of the trigonometric factor, each
//! half-period panel is integrated adaptively, and the resulting
//! sign-alternating partial sums are accelerated with Wynn's epsilon
//! algorithm.

use super::quadrature::{integrate_try, Domain, Estimate, QuadratureRule};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trig {
    Cos,
    Sin,
}

const MAX_PANELS: usize = 400;
const WINDOW: usize = 40;

pub fn fourier_half_line<F: Fn(f64) -> Result<f64>>(
    g: F,
    omega: f64,
    trig: Trig,
    rule: &QuadratureRule,
) -> Result<Estimate<f64>> {
    if !omega.is_finite() {
        return Err(Error::Domain(format!("frequency must be finite, got {omega}")));
    }
    if omega == 0.0 {
        return match trig {
            Trig::Cos => integrate_try(g, Domain::HalfLine(0.0), rule),
            Trig::Sin => Ok(Estimate {
                value: 0.0,
                error: 0.0,
                evaluations: 0,
                converged: true,
            }),
        };
    }
    let w = omega.abs();
    let sign = if trig == Trig::Sin && omega < 0.0 { -1.0 } else { 1.0 };
    let panel = std::f64::consts::PI / w;
    // cos changes sign at (k + 1/2)π/ω, sin at kπ/ω
    let offset = if trig == Trig::Cos { 0.5 * panel } else { 0.0 };
    let panel_rule = rule.scaled(0.01);
    let integrand = |z: f64| -> Result<f64> {
        let t = match trig {
            Trig::Cos => (w * z).cos(),
            Trig::Sin => (w * z).sin(),
        };
        Ok(g(z)? * t)
    };

    let mut evaluations = 0;
    let mut all_converged = true;
    let mut partial = Vec::with_capacity(MAX_PANELS + 1);
    let mut running = 0.0;
    if offset > 0.0 {
        let est = integrate_try(integrand, Domain::Interval(0.0, offset), &panel_rule)?;
        evaluations += est.evaluations;
        all_converged &= est.converged;
        running += est.value;
    }
    partial.push(running);
    let mut history: Vec<f64> = Vec::new();
    let mut tiny_run = 0;
    for k in 0..MAX_PANELS {
        let a = offset + k as f64 * panel;
        let est = integrate_try(integrand, Domain::Interval(a, a + panel), &panel_rule)?;
        evaluations += est.evaluations;
        all_converged &= est.converged;
        running += est.value;
        partial.push(running);

        let target = rule.target(running.abs());
        if est.value.abs() < 0.01 * target {
            tiny_run += 1;
            if tiny_run >= 3 {
                return Ok(Estimate {
                    value: sign * running,
                    error: est.value.abs() * 3.0,
                    evaluations,
                    converged: all_converged,
                });
            }
        } else {
            tiny_run = 0;
        }

        let start = partial.len().saturating_sub(WINDOW);
        let extrap = wynn_epsilon(&partial[start..]);
        history.push(extrap);
        let m = history.len();
        if m >= 6 {
            let err = (history[m - 1] - history[m - 2]).abs() + (history[m - 1] - history[m - 3]).abs();
            if err <= rule.target(extrap.abs()) {
                return Ok(Estimate {
                    value: sign * extrap,
                    error: err,
                    evaluations,
                    converged: all_converged,
                });
            }
        }
    }
    let m = history.len();
    let value = history[m - 1];
    Ok(Estimate {
        value: sign * value,
        error: (history[m - 1] - history[m - 2]).abs(),
        evaluations,
        converged: false,
    })
}

/// Wynn's epsilon extrapolation of a sequence of partial sums; returns the
/// deepest even-column entry available.
pub fn wynn_epsilon(s: &[f64]) -> f64 {
    let n = s.len();
    if n < 3 {
        return *s.last().unwrap_or(&0.0);
    }
    let mut prev = vec![0.0; n + 1];
    let mut cur: Vec<f64> = s.to_vec();
    let mut best = s[n - 1];
    let mut col = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff == 0.0 || !diff.is_finite() {
                return best;
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        prev = cur;
        cur = next;
        col += 1;
        if col % 2 == 0 {
            match cur.last() {
                Some(v) if v.is_finite() => best = *v,
                _ => return best,
            }
        }
    }
    best
}

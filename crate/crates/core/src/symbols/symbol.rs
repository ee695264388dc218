use std::f64::consts::PI;

use num_complex::Complex64;

use super::params::WedgeParams;
use crate::error::Result;
use crate::numerics::{integrate, Domain, Estimate, QuadratureRule};

/// Dilation kernel `i_{α,a}(s) = −(sin α/π) s^{(3−a)/2} / (1 + s² − 2s cos α)`.
pub fn mellin_kernel(p: &WedgeParams, s: f64) -> f64 {
    let alpha = p.alpha();
    let denom = (1.0 - s).powi(2) + 2.0 * s * (1.0 - alpha.cos());
    -(alpha.sin() / PI) * s.powf(0.5 * (3.0 - p.a())) / denom
}

/// `sin(u + iv) · 2e^{−|v|}`, which never overflows.
fn scaled_sin(u: f64, v: f64) -> Complex64 {
    let e = (-2.0 * v.abs()).exp();
    Complex64::new(u.sin() * (1.0 + e), u.cos() * v.signum() * (1.0 - e))
}

/// Mellin symbol `−sin(w(π−α)) / sin(wπ)` with `w = (1−a)/2 + iξ`.
///
/// At `a = 1` this is `−sinh(ξ(π−α))/sinh(ξπ)`, continuous through `ξ = 0`
/// with value `α/π − 1`.
pub fn sigma_point(p: &WedgeParams, xi: f64) -> Complex64 {
    let beta = PI - p.alpha();
    let w = Complex64::new(0.5 * (1.0 - p.a()), xi);
    if w.norm() < 1e-6 {
        // −(β/π)·(1 − w²(β² − π²)/6) + O(w⁴)
        let ratio = beta / PI;
        return -ratio * (1.0 - w * w * (beta * beta - PI * PI) / 6.0);
    }
    let num = scaled_sin(w.re * beta, w.im * beta);
    let den = scaled_sin(w.re * PI, w.im * PI);
    let scale = (xi.abs() * (beta.abs() - PI)).exp();
    -(num / den) * scale
}

/// Closed-form weighted operator norm `|sin((1−a)(π−α)/2) / sin((1−a)π/2)|`,
/// read as `|1 − α/π|` at `a = 1`. Equal to `|sigma_point(p, 0)|`.
pub fn norm_bound(p: &WedgeParams) -> f64 {
    let half = 0.5 * (1.0 - p.a());
    let beta = PI - p.alpha();
    if half.abs() < 1e-8 {
        return (beta / PI).abs();
    }
    ((half * beta).sin() / (half * PI).sin()).abs()
}

/// `∫₀^∞ i_{α,a}(s) s^{iξ} ds/s` by quadrature in `u = ln s`.
pub fn mellin_transform_numeric(p: &WedgeParams, xi: f64, rule: &QuadratureRule) -> Result<Estimate<Complex64>> {
    let alpha = p.alpha();
    let c = -alpha.sin() / PI;
    let expo = 0.5 * (3.0 - p.a());
    let cos_a = alpha.cos();
    let f = move |u: f64| {
        // 1 + s² − 2s cos α = s (e^{u} + e^{−u} − 2 cos α) keeps both tails finite
        let denom = 2.0 * u.cosh() - 2.0 * cos_a;
        let mag = c * ((expo - 1.0) * u).exp() / denom;
        Complex64::from_polar(1.0, xi * u) * mag
    };
    integrate(f, Domain::ExpTails { core: (-8.0, 8.0) }, rule)
}

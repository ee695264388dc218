//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::process::Command;

use num_complex::Complex64;
use wedge_spectra::numerics::QuadratureRule;
use wedge_spectra::symbols::WedgeParams;

pub fn rule(tol: f64) -> QuadratureRule {
    QuadratureRule::new(tol, tol, 4000).unwrap()
}

pub fn params(alpha: f64, a: f64) -> WedgeParams {
    WedgeParams::new(alpha, a).unwrap()
}

pub const ALPHAS: [f64; 5] = [PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, 1.5 * PI, 5.0 * PI / 3.0];
pub const WEIGHTS: [f64; 6] = [-0.5, 0.0, 0.5, 1.0, 1.5, 2.5];

pub fn grid() -> Vec<WedgeParams> {
    ALPHAS
        .iter()
        .flat_map(|&alpha| WEIGHTS.iter().map(move |&a| params(alpha, a)))
        .collect()
}

/// `∫ g(u) du` over `[−u_max, u_max]` by the plain trapezoid rule. For
/// integrands analytic in a strip and decaying exponentially the error
/// falls like `e^{−2πd/h}`, independent of any adaptive machinery.
pub fn trapezoid<F: Fn(f64) -> Complex64>(g: F, h: f64, u_max: f64) -> Complex64 {
    let n = (u_max / h).ceil() as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in -n..=n {
        sum += g(j as f64 * h);
    }
    sum * h
}

/// Mellin transform `∫₀^∞ i_{α,a}(s) s^{iξ} ds/s` written out from the
/// kernel `−(sin α/π) s^{(3−a)/2} / (1 + s² − 2s cos α)` in `u = ln s`.
pub fn mellin_oracle(p: &WedgeParams, xi: f64) -> Complex64 {
    let (alpha, a) = (p.alpha(), p.a());
    let g = |u: f64| {
        // s^{(3−a)/2}/(s(e^u + e^{−u} − 2cos α)) with s = e^u
        let mag = -(alpha.sin() / PI) * (0.5 * (1.0 - a) * u).exp() / (2.0 * u.cosh() - 2.0 * alpha.cos());
        Complex64::from_polar(mag, xi * u)
    };
    // slowest tail decay rate is 1 − |1 − a|/2 ≥ 1/4 on the test grid
    let rate = 1.0 - 0.5 * (1.0 - a).abs();
    trapezoid(g, 0.01, 40.0 / rate)
}

/// Roots of the monic cubic `z³ + b z² + c z + d` by Cardano's formula.
pub fn cubic_roots(b: Complex64, c: Complex64, d: Complex64) -> [Complex64; 3] {
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let mut u3 = -q / 2.0 + disc;
    if u3.norm() < (-q / 2.0 - disc).norm() {
        u3 = -q / 2.0 - disc;
    }
    let u = u3.powf(1.0 / 3.0);
    let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (k, root) in out.iter_mut().enumerate() {
        let uk = u * omega.powi(k as i32);
        let vk = if uk.norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            -p / (3.0 * uk)
        };
        *root = uk + vk - b / 3.0;
    }
    out
}

/// Characteristic polynomial `z³ + b z² + c z + d` of a 3×3 matrix.
pub fn char_poly_3(m: &[[f64; 3]; 3]) -> (Complex64, Complex64, Complex64) {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    (
        Complex64::new(-tr, 0.0),
        Complex64::new(minors, 0.0),
        Complex64::new(-det, 0.0),
    )
}

/// Greedy matching distance between two multisets of equal size.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for &x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &y)| (j, (x - y).norm()))
            .min_by(|l, r| l.1.total_cmp(&r.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Even-odd rule for a closed polygon: is `p` enclosed?
pub fn polygon_encloses(vertices: &[Complex64], p: Complex64) -> bool {
    let n = vertices.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        if (a.im > p.im) != (b.im > p.im) {
            let x = a.re + (p.im - a.im) * (b.re - a.re) / (b.im - a.im);
            if x > p.re {
                inside = !inside;
            }
        }
    }
    inside
}

pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn cli(args: &[&str]) -> CliOutput {
    cli_env(args, &[])
}

pub fn cli_env(args: &[&str], env: &[(&str, &str)]) -> CliOutput {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wedge-spectra"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    CliOutput {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Rows `(xi, re, im, branch)` of the curve CSV; `xi` is `inf` for closures.
pub fn parse_curve_csv(text: &str) -> Vec<(f64, f64, f64, String)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("xi,re,im,branch"));
    lines
        .map(|l| {
            let cols: Vec<&str> = l.split(',').collect();
            assert_eq!(cols.len(), 4, "row {l:?}");
            (
                cols[0].parse().unwrap(),
                cols[1].parse().unwrap(),
                cols[2].parse().unwrap(),
                cols[3].to_string(),
            )
        })
        .collect()
}

//! Eigenvalues of dense nonsymmetric complex matrices.
//!
//! Balancing (Parlett–Reinsch), Householder reduction to upper Hessenberg
//! form, then single-shift complex QR sweeps with Wilkinson shifts and
//! deflation on negligible subdiagonals. Only eigenvalues are computed, so
//! similarity updates are confined to the active diagonal block.

use num_complex::Complex64;
use rayon::prelude::*;

use super::matrix::{DenseMatrix, DIMENSION_CAP};
use crate::error::{Error, Result};

const ITERATIONS_PER_EIGENVALUE: usize = 30;

/// All `n` eigenvalues of `m`, repeated according to algebraic multiplicity,
/// in no particular order.
pub fn eigenvalues(m: &DenseMatrix) -> Result<Vec<Complex64>> {
    let n = m.n();
    if n > DIMENSION_CAP {
        return Err(Error::DimensionCap { n, cap: DIMENSION_CAP });
    }
    let mut a = m.entries().to_vec();
    balance(&mut a, n);
    hessenberg(&mut a, n);
    hessenberg_qr(&mut a, n)
}

/// Eigenvalues sorted by real part, then imaginary part.
pub fn eigenvalues_sorted(m: &DenseMatrix) -> Result<Vec<Complex64>> {
    let mut ev = eigenvalues(m)?;
    ev.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(ev)
}

fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

fn balance(a: &mut [Complex64], n: usize) {
    const RADIX: f64 = 2.0;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += abs1(a[j * n + i]);
                    r += abs1(a[i * n + j]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c >= g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    a[i * n + j] *= inv;
                    a[j * n + i] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

fn hessenberg(a: &mut [Complex64], n: usize) {
    if n < 3 {
        return;
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    let mut s = vec![zero; n];
    for k in 0..n - 2 {
        let norm = (k + 1..n).map(|i| a[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        for i in 0..n {
            v[i] = if i > k { a[i * n + k] } else { zero };
        }
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for vi in v.iter_mut().skip(k + 1) {
            *vi /= vnorm;
        }

        // A ← (I − 2vv^H) A on rows k+1.., columns k..
        for sj in s.iter_mut() {
            *sj = zero;
        }
        for i in k + 1..n {
            let cv = v[i].conj();
            let row = &a[i * n..(i + 1) * n];
            for j in k..n {
                s[j] += cv * row[j];
            }
        }
        for i in k + 1..n {
            let two_v = v[i] * 2.0;
            let row = &mut a[i * n..(i + 1) * n];
            for j in k..n {
                row[j] -= two_v * s[j];
            }
        }

        // A ← A (I − 2vv^H) on columns k+1..
        let vref = &v;
        a.par_chunks_mut(n).for_each(|row| {
            let mut dot = zero;
            for j in k + 1..n {
                dot += row[j] * vref[j];
            }
            let two_dot = dot * 2.0;
            for j in k + 1..n {
                row[j] -= two_dot * vref[j].conj();
            }
        });

        a[(k + 1) * n + k] = alpha;
        for i in k + 2..n {
            a[i * n + k] = zero;
        }
    }
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Givens rotation `[[c, s], [−s̄, c]]` with real `c` mapping `(x, y)` to `(r, 0)`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let rho = ax.hypot(ay);
    (ax / rho, (x / ax) * y.conj() / rho)
}

fn hessenberg_qr(h: &mut [Complex64], n: usize) -> Result<Vec<Complex64>> {
    let idx = |i: usize, j: usize| i * n + j;
    let norm = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut eig = Vec::with_capacity(n);
    let mut rot = vec![(1.0, Complex64::new(0.0, 0.0)); n];
    let mut hi = n as isize - 1;
    let mut iter = 0;
    while hi >= 0 {
        let hu = hi as usize;
        let mut l = hu;
        while l > 0 {
            let mut s = abs1(h[idx(l - 1, l - 1)]) + abs1(h[idx(l, l)]);
            if s == 0.0 {
                s = norm;
            }
            if abs1(h[idx(l, l - 1)]) <= f64::EPSILON * s {
                h[idx(l, l - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hu {
            eig.push(h[idx(hu, hu)]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > ITERATIONS_PER_EIGENVALUE {
            return Err(Error::EigenNoConvergence {
                iterations: ITERATIONS_PER_EIGENVALUE,
            });
        }
        let mu = if iter % 10 == 0 {
            let sub = h[idx(hu, hu - 1)].norm() + if hu >= 2 { h[idx(hu - 1, hu - 2)].norm() } else { 0.0 };
            h[idx(hu, hu)] + Complex64::new(0.75 * sub, 0.25 * sub)
        } else {
            wilkinson_shift(
                h[idx(hu - 1, hu - 1)],
                h[idx(hu - 1, hu)],
                h[idx(hu, hu - 1)],
                h[idx(hu, hu)],
            )
        };

        for k in l..=hu {
            h[idx(k, k)] -= mu;
        }
        for k in l..hu {
            let (c, s) = givens(h[idx(k, k)], h[idx(k + 1, k)]);
            rot[k] = (c, s);
            for j in k..=hu {
                let x = h[idx(k, j)];
                let y = h[idx(k + 1, j)];
                h[idx(k, j)] = x * c + s * y;
                h[idx(k + 1, j)] = -s.conj() * x + y * c;
            }
        }
        for k in l..hu {
            let (c, s) = rot[k];
            let sc = s.conj();
            for i in l..=(k + 2).min(hu) {
                let x = h[idx(i, k)];
                let y = h[idx(i, k + 1)];
                h[idx(i, k)] = x * c + y * sc;
                h[idx(i, k + 1)] = -x * s + y * c;
            }
        }
        for k in l..=hu {
            h[idx(k, k)] += mu;
        }
    }
    Ok(eig)
}

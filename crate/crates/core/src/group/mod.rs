//! The `ax+b` group `G = (0, ∞) × ℝ` with `(x, z)·(s, t) = (xs, xt + z)`,
//! right Haar measure `dx/x dz` and modulus `Δ(x, z) = 1/x`.

pub mod convolution;
pub mod element;
pub mod function;
pub mod plancherel;

pub use convolution::{convolution_function, convolve};
pub use element::{haar_modulus, inverse, multiply, GroupElement};
pub use function::{DecayClass, Evaluator, GroupFunction, LogGaussian, SupportBox};
pub use plancherel::{hs_norm, hs_norm_sq, plancherel_kernel, HsKernel, KernelLayout, Sign};

//! The Mellin symbol of the wedge double layer operator and the spectral
//! curve `Σ_{α,a}` it traces.

pub mod curve;
pub mod membership;
pub mod params;
pub mod symbol;

pub use curve::{sample_curve, segment_distance, CurveSample, SpectralCurve, DEFAULT_TAU_ON};
pub use membership::{
    classify_interval, in_spectrum_l2, Classification, MembershipReport, MembershipTolerance, SpectrumRegion,
};
pub use params::WedgeParams;
pub use symbol::{mellin_kernel, mellin_transform_numeric, norm_bound, sigma_point};

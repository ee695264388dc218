//! Layer potentials on the wedge boundary: kernels, direct application by
//! quadrature, and finite-section discretizations.

pub mod apply;
pub mod density;
pub mod kernels;
pub mod sections;

pub use apply::{
    apply_k, apply_s, double_layer_block, k_image_weighted_norm_sq, plemelj_residual, single_layer_cross,
    single_layer_diagonal, single_layer_energy, PlemeljResidual,
};
pub use density::{BoundaryDensity, Sheet, SheetSupport, MEAN_ZERO_TOL};
pub use kernels::{
    a_alpha, adjoint_double_layer_kernel, double_layer_kernel, i_kernel, k_alpha, s_beta, single_layer_kernel,
    t_kernel, wedge_kernel_function, weighted_l1_norm, weighted_wedge_kernel,
};
pub use sections::{containment, nystrom_t, toeplitz_section, Containment};

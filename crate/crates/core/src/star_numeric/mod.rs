//! Functions on a periodic box, the FFT-evaluated deformed product, and its operator picture.

pub mod fourier;
pub mod functions;
pub mod grid;
pub mod io;
pub mod operator;
pub mod product;
pub mod semiclassical;

pub use fourier::{derivative, fft_forward, fft_inverse, translate};
pub use grid::{inner_product_b, GridFunction, GridSpec};
pub use operator::{
    adjoint_defect, build_left_regular_matrix, cstar_identity_check, homomorphism_defect,
    spectral_norm, CStarReport, OperatorMatrix,
};
pub use product::{involution, poisson_bracket, star_commutator, star_product, weyl_action};
pub use semiclassical::{loglog_slope, semiclassical_sweep, SweepRow, SweepTable};

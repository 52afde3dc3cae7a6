//! A windowed plane wave acts on a Gaussian like the Weyl unitary u_α.

use moyal::geometry::{standard_skew_dim, Covector};
use moyal::star_numeric::functions::{default_window, gaussian, plane_wave};
use moyal::star_numeric::{star_product, weyl_action, GridSpec};

fn main() -> moyal::Result<()> {
    let spec = GridSpec::new(2, 64, 8.0, 0.5)?;
    let sigma = standard_skew_dim(2)?;
    let alpha = Covector(vec![0.7, -0.4]);
    let w = default_window(&spec);
    let f = plane_wave(&spec, &alpha).pointwise(&w)?;
    let g = gaussian(&spec, &[0.2, -0.1], 1.0);

    let lhs = star_product(&f, &g, &sigma)?;
    let rhs = weyl_action(&alpha, &g, &sigma)?.pointwise(&w)?;
    let inner = |x: &[f64]| x[0] * x[0] + x[1] * x[1] <= 4.0;
    println!("interior rel. L2 defect: {:.3e}", lhs.masked_rel_l2(&rhs, inner)?);
    Ok(())
}

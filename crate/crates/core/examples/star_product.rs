//! Star product of two Gaussians on the FFT grid.

use moyal::geometry::{standard_skew_dim, SkewForm};
use moyal::star_numeric::functions::gaussian;
use moyal::star_numeric::{star_commutator, star_product, GridSpec};
use num_complex::Complex64;

fn main() -> moyal::Result<()> {
    let spec = GridSpec::new(2, 64, 8.0, 1.0)?;
    let sigma = standard_skew_dim(2)?;
    let f = gaussian(&spec, &[0.3, -0.2], 1.0).scale(Complex64::new(0.6, 0.8));
    let g = gaussian(&spec, &[-0.25, 0.1], 0.8);
    let h = gaussian(&spec, &[0.0, 0.4], 1.2);

    let fg = star_product(&f, &g, &sigma)?;
    let pointwise = f.pointwise(&g)?;
    println!("|f*g|_2 = {:.6}, |fg|_2 = {:.6}", fg.norm_l2(), pointwise.norm_l2());
    println!("rel. distance from the pointwise product: {:.3e}", fg.rel_l2(&pointwise)?);

    let flat = star_product(&f, &g, &SkewForm::zero(2))?;
    println!("zero form vs pointwise: {:.3e}", flat.rel_l2(&pointwise)?);

    let left = star_product(&fg, &h, &sigma)?;
    let right = star_product(&f, &star_product(&g, &h, &sigma)?, &sigma)?;
    println!("associativity defect: {:.3e}", left.rel_l2(&right)?);

    println!("|[f, g]|_2 = {:.3e}", star_commutator(&f, &g, &sigma)?.norm_l2());
    Ok(())
}

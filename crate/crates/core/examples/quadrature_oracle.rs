//! Cross-check FFT star products against adaptive quadrature.

use moyal::geometry::standard_skew_dim;
use moyal::oracle::{star_product_at, star_product_grid, QuadratureOptions};
use moyal::star_numeric::functions::{gaussian, gaussian_at, gaussian_hat};
use moyal::star_numeric::{star_product, GridSpec};

fn main() -> moyal::Result<()> {
    let spec = GridSpec::new(2, 64, 8.0, 1.0)?;
    let sigma = standard_skew_dim(2)?;
    let (cf, cg) = ([0.3, -0.2], [-0.1, 0.25]);
    let f = gaussian(&spec, &cf, 1.1);
    let g = gaussian(&spec, &cg, 0.9);
    let fft = star_product(&f, &g, &sigma)?;
    let opts = QuadratureOptions::default();

    let points = [spec.flat_index(&[32, 32]), spec.flat_index(&[28, 36])];
    // Closed-form integrand: continuous Gaussians and their transforms.
    for &flat in &points {
        let q = spec.point(flat);
        let v = star_product_at(
            &|x| gaussian_at(&cf, 1.1, x),
            &|p| gaussian_hat(&cg, 0.9, p),
            &sigma,
            spec.theta,
            &q,
            6.0,
            &opts,
        )?;
        println!("q = {q:?}: fft {:.12e}  quadrature {v:.12e}", fft.values()[flat]);
    }
    // Grid-data integrand: trigonometric interpolation of the samples.
    let grid = star_product_grid(&f, &g, &sigma, &points, &opts)?;
    for (&flat, v) in points.iter().zip(grid) {
        println!("grid oracle at {:?}: |diff| = {:.3e}", spec.point(flat), (fft.values()[flat] - v).norm());
    }
    Ok(())
}

//! Windowed coordinates commute to the constant (θ/πi) Q_αβ in the interior.

use std::f64::consts::PI;

use moyal::geometry::{q_form, standard_skew_dim, Covector};
use moyal::star_numeric::functions::{default_window, windowed_coordinate};
use moyal::star_numeric::{star_commutator, GridSpec};
use num_complex::Complex64;

fn main() -> moyal::Result<()> {
    let spec = GridSpec::new(2, 64, 8.0, 0.5)?;
    let sigma = standard_skew_dim(2)?.scaled(0.8);
    let alpha = Covector(vec![1.0, 0.3]);
    let beta = Covector(vec![-0.2, 0.9]);
    let w = default_window(&spec);

    let comm = star_commutator(&windowed_coordinate(&w, &alpha), &windowed_coordinate(&w, &beta), &sigma)?;
    let constant = Complex64::new(0.0, -spec.theta * q_form(&sigma, &alpha, &beta) / PI);
    let expected = w.pointwise(&w)?.scale(constant);
    let centre = spec.flat_index(&[spec.n / 2, spec.n / 2]);
    println!("[α·q, β·q](0) = {:.6e}", comm.values()[centre]);
    println!("(θ/πi) Q_αβ   = {constant:.6e}");
    let inner = |x: &[f64]| x[0] * x[0] + x[1] * x[1] <= 4.0;
    println!("interior rel. L2 defect: {:.3e}", comm.masked_rel_l2(&expected, inner)?);
    Ok(())
}

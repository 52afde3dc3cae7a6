//! Fibered functions over a Lorentz sample in 1+1 dimensions: Φ^α
//! equivariance, τ–γ covariance and the pointwise-product theorem.

use moyal::covariance::checks::{
    check_gamma_covariance, check_phi_equivariance, check_pointwise_theorem, five_fiber_sample,
    pointwise_defects,
};
use moyal::covariance::{phi_alpha, RealLineFunction};
use moyal::geometry::{make_boost, standard_skew, Covector, Spacetime, Vector};
use moyal::star_numeric::functions::gaussian;
use moyal::star_numeric::GridSpec;

fn main() -> moyal::Result<()> {
    let st = Spacetime::minkowski(2)?;
    let sigma0 = standard_skew(&st)?;
    let sample = five_fiber_sample(&st)?;
    let line = GridSpec::new(1, 64, 8.0, 1.0)?;
    let k = sample.len();
    let psi1 = RealLineFunction::uniform(&gaussian(&line, &[0.3], 1.0), k)?;
    let psi2 = RealLineFunction::uniform(&gaussian(&line, &[-0.2], 0.8), k)?;

    let alpha = Covector(vec![1.0, -1.0]);
    let x = Vector(vec![0.25, -0.125]);
    println!("Φ equivariance defect: {:.3e}", check_phi_equivariance(&alpha, &x, &psi1, &sample)?);

    let f = phi_alpha(&alpha, &psi1, &sample)?;
    let s = make_boost(&st, 1, 0.3)?;
    println!("τγ covariance defect:  {:.3e}", check_gamma_covariance(&s, &x, &f)?);

    let same = check_pointwise_theorem(&alpha, &psi1, &psi2, &sample, &sigma0)?;
    let other = pointwise_defects(&alpha, &Covector(vec![1.0, 1.0]), &psi1, &psi2, &sample, &sigma0)?;
    let fmt = |v: &[f64]| v.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>().join(" ");
    println!("pointwise theorem, per fiber: {}", fmt(&same));
    println!("independent covectors, per fiber: {}", fmt(&other));
    Ok(())
}

//! Products of Weyl unitaries: phases, commutators and the involution.

use moyal::geometry::{q_form, standard_skew_dim, Covector};
use moyal::weyl_algebra::{commutator_phase, mul, star, unit_u, WeylElement};
use num_complex::Complex64;

fn main() -> moyal::Result<()> {
    let sigma = standard_skew_dim(2)?.scaled(0.25);
    let a = Covector(vec![0.0, 1.0]);
    let b = Covector(vec![1.0, 0.0]);

    let ab = mul(&unit_u(&a, &sigma), &unit_u(&b, &sigma))?;
    for (key, c) in ab.terms() {
        println!("u_a u_b = ({:+.3} {:+.3}i) u_{:?}", c.re, c.im, key.0);
    }
    println!("Q_ab = {}", q_form(&sigma, &a, &b));
    println!("group commutator phase = {:?}", commutator_phase(&a, &b, &sigma).value());

    let x = WeylElement::from_terms(
        &sigma,
        [(a.clone(), Complex64::new(1.0, 0.5)), (b.clone(), Complex64::new(-0.25, 0.0))],
    )?;
    let y = WeylElement::from_terms(&sigma, [(a.add(&b), Complex64::new(0.0, 2.0))])?;
    let lhs = star(&mul(&x, &y)?);
    let rhs = mul(&star(&y), &star(&x))?;
    println!("|(xy)* - y*x*| = {:.3e}", lhs.max_abs_diff(&rhs));
    println!("{}", serde_json::to_string_pretty(&x)?);
    Ok(())
}

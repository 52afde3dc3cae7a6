//! Sample the Lorentz orbit of the standard skew form and check that the
//! invariants stay put.

use moyal::geometry::{
    in_stabilizer, make_boost, make_rotation, orbit_invariants, sample_orbit, sample_stabilizer,
    standard_skew, Spacetime,
};

fn main() -> moyal::Result<()> {
    let st = Spacetime::minkowski(4)?;
    let sigma0 = standard_skew(&st)?;
    let base = orbit_invariants(&st, &sigma0);
    println!("invariants of sigma0: {base:?}");

    let mut worst = 0.0f64;
    for (_, sigma) in sample_orbit(&st, &sigma0, 200, 11)? {
        for (a, b) in orbit_invariants(&st, &sigma).iter().zip(&base) {
            worst = worst.max((a - b).abs() / b.abs().max(1.0));
        }
    }
    println!("max relative invariant drift over 200 orbit points: {worst:.3e}");

    let boost = make_boost(&st, 1, 0.8)?;
    let rot = make_rotation(&st, (1, 2), 0.5)?;
    println!("boost along axis 1 fixes sigma0: {}", in_stabilizer(&boost, &sigma0, 1e-12));
    println!("rotation in the (1,2) plane fixes sigma0: {}", in_stabilizer(&rot, &sigma0, 1e-12));

    let stab = sample_stabilizer(&st, &sigma0, 20, 11, 1e-12);
    println!("sampled {} stabilizer elements", stab.len());
    Ok(())
}

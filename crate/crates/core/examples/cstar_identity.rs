//! Left-regular representation on a commensurate grid and the C*-identity.

use moyal::geometry::standard_skew_dim;
use moyal::star_numeric::functions::gaussian;
use moyal::star_numeric::{adjoint_defect, cstar_identity_check, homomorphism_defect, GridSpec};

fn main() -> moyal::Result<()> {
    // θN/L² = 1, so the discrete twist is an exact cocycle.
    let spec = GridSpec::commensurate(2, 32, 1.0)?;
    let sigma = standard_skew_dim(2)?;
    let f = gaussian(&spec, &[0.3, -0.2], 1.0);
    let g = gaussian(&spec, &[-0.25, 0.1], 0.8);

    println!("L = {:.6}", spec.length);
    println!("homomorphism defect: {:.3e}", homomorphism_defect(&f, &g, &sigma)?);
    println!("adjoint defect:      {:.3e}", adjoint_defect(&f, &sigma)?);
    let report = cstar_identity_check(&f, &sigma)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    println!("positivity: {:.3e}", report.positivity());
    Ok(())
}

//! Distance from the classical limit as θ shrinks, with log-log slopes.

use moyal::geometry::standard_skew_dim;
use moyal::star_numeric::functions::gaussian;
use moyal::star_numeric::{semiclassical_sweep, GridSpec};

fn main() -> moyal::Result<()> {
    let spec = GridSpec::new(2, 64, 8.0, 1.0)?;
    let sigma = standard_skew_dim(2)?;
    let f = gaussian(&spec, &[0.3, 0.2], 1.5);
    let g = gaussian(&spec, &[-0.4, -0.1], 1.2);
    let table = semiclassical_sweep(&f, &g, &sigma, &[1.0, 0.5, 0.25, 0.125, 0.0625])?;
    print!("{}", table.to_csv());
    Ok(())
}

//! Round-trip a grid function and a fibered bundle through the on-disk formats.

use moyal::covariance::bundle::{load_bundle, save_bundle};
use moyal::covariance::checks::five_fiber_sample;
use moyal::covariance::FiberedFunction;
use moyal::geometry::{standard_skew_dim, Spacetime};
use moyal::star_numeric::functions::gaussian;
use moyal::star_numeric::io::{load_grid, save_grid, sidecar_path};
use moyal::star_numeric::GridSpec;

fn main() -> moyal::Result<()> {
    let dir = std::env::temp_dir().join(format!("moyal-grid-files-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;

    let spec = GridSpec::new(2, 32, 6.0, 0.5)?;
    let f = gaussian(&spec, &[0.1, 0.2], 1.0);
    let path = dir.join("f.moya");
    save_grid(&path, &f, Some(&standard_skew_dim(2)?))?;
    let (back, sidecar) = load_grid(&path)?;
    println!("grid round trip diff: {:e}", back.max_abs_diff(&f)?);
    println!("sidecar {}:\n{}", sidecar_path(&path).display(), serde_json::to_string_pretty(&sidecar)?);

    let st = Spacetime::minkowski(2)?;
    let sample = five_fiber_sample(&st)?;
    let bundle = FiberedFunction::from_fn(&sample, |t| {
        let shift = t.matrix().as_slice()[1];
        gaussian(&spec, &[shift, 0.0], 1.0)
    })?;
    save_bundle(&dir.join("bundle"), &bundle)?;
    let loaded = load_bundle(&dir.join("bundle"))?;
    println!("bundle round trip diff: {:e}", loaded.max_abs_diff(&bundle)?);

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

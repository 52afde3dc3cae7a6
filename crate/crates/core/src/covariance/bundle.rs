//! On-disk bundles: `transforms.json` plus one `fiber_k.moya` grid (with sidecar) per transform.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{FiberedFunction, GroupSample};
use crate::error::{Error, Result};
use crate::geometry::{LorentzTransform, Spacetime};
use crate::star_numeric::io::{load_grid, save_grid};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransformsFile {
    spacetime: Spacetime,
    transforms: Vec<LorentzTransform>,
    bounded: bool,
    #[serde(default)]
    bound: Option<f64>,
}

pub fn fiber_file(k: usize) -> String {
    format!("fiber_{k}.moya")
}

pub fn save_bundle(dir: &Path, f: &FiberedFunction) -> Result<()> {
    fs::create_dir_all(dir)?;
    let s = f.sample();
    let file = TransformsFile {
        spacetime: s.spacetime().clone(),
        transforms: s.transforms().to_vec(),
        bounded: s.bounded(),
        bound: s.bound(),
    };
    fs::write(dir.join("transforms.json"), serde_json::to_string_pretty(&file)? + "\n")?;
    for (k, g) in f.fibers().iter().enumerate() {
        save_grid(&dir.join(fiber_file(k)), g, None)?;
    }
    Ok(())
}

pub fn load_bundle(dir: &Path) -> Result<FiberedFunction> {
    let file: TransformsFile = serde_json::from_str(&fs::read_to_string(dir.join("transforms.json"))?)?;
    if file.bounded != file.bound.is_some() {
        return Err(Error::Format("bounded flag and bound disagree".into()));
    }
    let transforms = file
        .transforms
        .into_iter()
        .map(|t| LorentzTransform::new(&file.spacetime, t.matrix().clone()))
        .collect::<Result<Vec<_>>>()?;
    let sample = GroupSample::new(&file.spacetime, transforms, file.bound)?;
    let fibers = (0..sample.len())
        .map(|k| load_grid(&dir.join(fiber_file(k))).map(|(g, _)| g))
        .collect::<Result<_>>()?;
    FiberedFunction::new(sample, fibers)
}

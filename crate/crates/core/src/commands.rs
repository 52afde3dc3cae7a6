//! Command implementations behind the `moyal` binary. Each writes its outputs
//! under the configured output directory and returns what it wrote.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::geometry::{orbit_invariants, sample_orbit, standard_skew_dim, LorentzTransform, SkewForm};
use crate::oracle::{self, QuadratureOptions};
use crate::star_numeric::functions::gaussian;
use crate::star_numeric::io::{load_grid, save_grid};
use crate::star_numeric::{semiclassical_sweep, star_product, GridSpec, SweepTable};
use crate::suites::{run_suite, semiclassical_pair, Suite, SuiteReport};

#[derive(Serialize)]
struct OrbitFile<'a> {
    seed: u64,
    sigma0: &'a SkewForm,
    transforms: Vec<&'a LorentzTransform>,
    forms: Vec<&'a SkewForm>,
    invariants: Vec<Vec<f64>>,
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}

/// Samples `n` orbit points of σ₀ and writes `orbit.json`.
pub fn cmd_orbit(cfg: &RunConfig, n: usize) -> Result<PathBuf> {
    let sigma0 = cfg.sigma0()?;
    let orbit = sample_orbit(&cfg.spacetime, &sigma0, n, cfg.seed)?;
    let file = OrbitFile {
        seed: cfg.seed,
        sigma0: &sigma0,
        transforms: orbit.iter().map(|(t, _)| t).collect(),
        forms: orbit.iter().map(|(_, s)| s).collect(),
        invariants: orbit.iter().map(|(_, s)| orbit_invariants(&cfg.spacetime, s)).collect(),
    };
    let path = cfg.output_dir.join("orbit.json");
    write_json(&path, &file)?;
    Ok(path)
}

/// Writes a Gaussian `exp(−π|x − c|²/s²)` on the configured 2-D grid.
pub fn cmd_grid(cfg: &RunConfig, name: &str, center: &[f64], width: f64, sigma: Option<&SkewForm>) -> Result<PathBuf> {
    let spec = cfg.grid_spec(center.len())?;
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::InvalidSpec(format!("width {width} must be positive")));
    }
    fs::create_dir_all(&cfg.output_dir)?;
    let mut path = cfg.output_dir.join(name);
    if path.extension().is_none() {
        path.set_extension("moya");
    }
    save_grid(&path, &gaussian(&spec, center, width), sigma)?;
    Ok(path)
}

#[derive(Clone, Debug, Serialize)]
pub struct StarSummary {
    pub spec: GridSpec,
    pub sigma: SkewForm,
    pub norm_f: f64,
    pub norm_g: f64,
    pub norm_product: f64,
    /// `‖f⋆g − fg‖₂ / ‖fg‖₂`.
    pub pointwise_defect: f64,
    /// Relative L² distance to quadrature on a 3×3 sub-lattice, when requested.
    pub oracle_defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
}

/// Form for a product: from the `f` sidecar, else the configured σ₀ if its
/// dimension matches, else the block-standard form.
fn product_form(cfg: &RunConfig, sidecar: Option<SkewForm>, dim: usize) -> Result<SkewForm> {
    if let Some(s) = sidecar {
        return Ok(s);
    }
    match &cfg.sigma0 {
        Some(s) if s.dim() == dim => Ok(s.clone()),
        _ => standard_skew_dim(dim),
    }
}

/// Deformed product of two grid files; writes `star.moya` and `star_summary.json`.
pub fn cmd_star(cfg: &RunConfig, f_path: &Path, g_path: &Path, with_oracle: bool, timing: bool) -> Result<(StarSummary, PathBuf)> {
    let start = Instant::now();
    let (f, f_side) = load_grid(f_path)?;
    let (g, g_side) = load_grid(g_path)?;
    f.spec().require_same(g.spec())?;
    let f_sigma = f_side.and_then(|s| s.sigma);
    let g_sigma = g_side.and_then(|s| s.sigma);
    if let (Some(a), Some(b)) = (&f_sigma, &g_sigma) {
        if a != b {
            return Err(Error::Format("sidecars carry different forms".into()));
        }
    }
    let sigma = product_form(cfg, f_sigma.or(g_sigma), f.spec().dim)?;
    let product = star_product(&f, &g, &sigma)?;
    let oracle_defect = if with_oracle {
        let spec = f.spec();
        let step = spec.n / 4;
        let points: Vec<usize> = (0..spec.total())
            .filter(|&flat| spec.multi_index(flat).iter().all(|&i| i % step == 0 && i > 0))
            .collect();
        let opts = QuadratureOptions { tol: 1e-10, ..QuadratureOptions::default() };
        let quad = oracle::star_product_grid(&f, &g, &sigma, &points, &opts)?;
        let (mut num, mut den) = (0.0, 0.0);
        for (&flat, v) in points.iter().zip(&quad) {
            num += (product.values()[flat] - v).norm_sqr();
            den += v.norm_sqr();
        }
        Some((num / den).sqrt())
    } else {
        None
    };
    let pointwise = f.pointwise(&g)?;
    fs::create_dir_all(&cfg.output_dir)?;
    save_grid(&cfg.output_dir.join("star.moya"), &product, Some(&sigma))?;
    let summary = StarSummary {
        spec: f.spec().clone(),
        sigma,
        norm_f: f.norm_l2(),
        norm_g: g.norm_l2(),
        norm_product: product.norm_l2(),
        pointwise_defect: product.rel_l2(&pointwise)?,
        oracle_defect,
        runtime_seconds: timing.then(|| start.elapsed().as_secs_f64()),
    };
    let path = cfg.output_dir.join("star_summary.json");
    write_json(&path, &summary)?;
    Ok((summary, path))
}

/// Runs a suite and writes `verify_<suite>.json`, whether or not it passes.
pub fn cmd_verify(cfg: &RunConfig, suite: Suite) -> Result<(SuiteReport, PathBuf)> {
    let report = run_suite(suite, cfg)?;
    let path = cfg.output_dir.join(format!("verify_{}.json", suite.name()));
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(&path, report.to_json()?)?;
    Ok((report, path))
}

/// Semiclassical sweep of the standard Gaussian pair; writes `sweep.csv`.
pub fn cmd_sweep(cfg: &RunConfig, thetas: &[f64]) -> Result<(SweepTable, PathBuf)> {
    let spec = cfg.grid_spec(2)?;
    let (f, g) = semiclassical_pair(&spec);
    let table = semiclassical_sweep(&f, &g, &standard_skew_dim(2)?, thetas)?;
    fs::create_dir_all(&cfg.output_dir)?;
    let path = cfg.output_dir.join("sweep.csv");
    fs::write(&path, table.to_csv())?;
    Ok((table, path))
}

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{standard_skew, SkewForm, Spacetime};
use crate::star_numeric::GridSpec;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub n: usize,
    pub length: f64,
    pub theta: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { n: 64, length: 8.0, theta: 1.0 }
    }
}

/// Acceptance thresholds. Defaults are the contract values; overrides are for exploration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub weyl_phase: f64,
    pub associativity: f64,
    pub bridge: f64,
    pub oracle: f64,
    pub pointwise: f64,
    pub commutator: f64,
    pub pointwise_theorem: f64,
    pub negative_control: f64,
    pub equivariance: f64,
    pub homomorphism: f64,
    pub adjoint: f64,
    pub cstar: f64,
    pub positivity: f64,
    pub invariants: f64,
    pub q_covariance: f64,
    pub slope_d1: (f64, f64),
    pub slope_d2: (f64, f64),
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            weyl_phase: 1e-12,
            associativity: 1e-12,
            bridge: 1e-3,
            oracle: 1e-6,
            pointwise: 1e-10,
            commutator: 1e-3,
            pointwise_theorem: 1e-6,
            negative_control: 1e-2,
            equivariance: 1e-9,
            homomorphism: 1e-3,
            adjoint: 1e-6,
            cstar: 0.05,
            positivity: 1e-6,
            invariants: 1e-9,
            q_covariance: 1e-10,
            slope_d1: (0.9, 1.1),
            slope_d2: (1.8, 2.2),
        }
    }
}

/// Everything a command needs; loaded from one JSON file, then overridden by flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub spacetime: Spacetime,
    /// Base skew form for orbit work; the block-standard form when absent.
    pub sigma0: Option<SkewForm>,
    pub grid: GridConfig,
    pub seed: u64,
    pub thetas: Vec<f64>,
    pub tolerances: Tolerances,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            spacetime: Spacetime::default(),
            sigma0: None,
            grid: GridConfig::default(),
            seed: 7,
            thetas: vec![1.0, 0.5, 0.25, 0.125, 0.0625],
            tolerances: Tolerances::default(),
            output_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid_spec(2)?;
        let s = self.sigma0()?;
        if s.dim() != self.spacetime.dim() {
            return Err(crate::Error::Dimension(format!(
                "sigma0 is {}-d, spacetime is {}-d",
                s.dim(),
                self.spacetime.dim()
            )));
        }
        Ok(())
    }

    pub fn sigma0(&self) -> Result<SkewForm> {
        match &self.sigma0 {
            Some(s) => Ok(s.clone()),
            None => standard_skew(&self.spacetime),
        }
    }

    pub fn grid_spec(&self, dim: usize) -> Result<GridSpec> {
        GridSpec::new(dim, self.grid.n, self.grid.length, self.grid.theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_gives_defaults() {
        assert_eq!(RunConfig::from_json("{}").unwrap(), RunConfig::default());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(RunConfig::from_json(r#"{"sede": 3}"#).is_err());
        assert!(RunConfig::from_json(r#"{"grid": {"n": 32, "extra": 1}}"#).is_err());
    }

    #[test]
    fn invalid_grid_is_rejected() {
        assert!(RunConfig::from_json(r#"{"grid": {"n": 12}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"grid": {"theta": 0}}"#).is_err());
    }

    #[test]
    fn sigma_override_must_match_dimension() {
        let text = r#"{"sigma0": [[0, 2], [-2, 0]]}"#;
        assert!(RunConfig::from_json(text).is_err());
        let text = r#"{"spacetime": {"dim": 2, "metric": [-1, 1]}, "sigma0": [[0, 2], [-2, 0]]}"#;
        let cfg = RunConfig::from_json(text).unwrap();
        assert_eq!(cfg.sigma0().unwrap().matrix()[(0, 1)], 2.0);
    }
}

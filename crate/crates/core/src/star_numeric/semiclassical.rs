use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::grid::GridFunction;
use super::product::{poisson_bracket, star_product};
use crate::error::{Error, Result};
use crate::geometry::SkewForm;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    /// `‖f⋆g − fg‖₂`.
    pub d1: f64,
    /// `‖(f⋆g − g⋆f)/θ − {f,g}/(πi)‖₂`.
    pub d2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    /// Least-squares slope of `ln D₁` against `ln θ`; absent for a single θ.
    pub slope_d1: Option<f64>,
    pub slope_d2: Option<f64>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let fmt = |s: Option<f64>| s.map(|v| format!("{v:.12e}")).unwrap_or_default();
        let mut out = String::from("theta,d1,d2,slope_d1,slope_d2\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{:.12e},{:.12e},{:.12e},{},{}\n",
                r.theta,
                r.d1,
                r.d2,
                fmt(self.slope_d1),
                fmt(self.slope_d2)
            ));
        }
        out
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() < 2 || x.len() != y.len() {
        return None;
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// Distance of the deformed product and commutator from their classical limits over a θ list.
pub fn semiclassical_sweep(
    f: &GridFunction,
    g: &GridFunction,
    sigma: &SkewForm,
    thetas: &[f64],
) -> Result<SweepTable> {
    if thetas.is_empty() {
        return Err(Error::Empty);
    }
    if thetas.iter().any(|t| !(t.is_finite() && *t > 0.0)) || thetas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidSpec(format!("theta list must be positive and decreasing: {thetas:?}")));
    }
    let classical = f.pointwise(g)?;
    let bracket = poisson_bracket(f, g, sigma)?.scale(Complex64::new(0.0, -1.0 / PI));
    let mut rows = Vec::with_capacity(thetas.len());
    for &theta in thetas {
        let spec = f.spec().with_theta(theta)?;
        let ft = f.clone().with_spec(spec.clone())?;
        let gt = g.clone().with_spec(spec.clone())?;
        let fg = star_product(&ft, &gt, sigma)?;
        let gf = star_product(&gt, &ft, sigma)?;
        let d1 = fg.values().iter().zip(classical.values()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>();
        let comm = fg.sub(&gf)?.scale(Complex64::new(1.0 / theta, 0.0));
        let d2 = comm.values().iter().zip(bracket.values()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>();
        let w = spec.cell_volume();
        rows.push(SweepRow { theta, d1: (d1 * w).sqrt(), d2: (d2 * w).sqrt() });
    }
    let t: Vec<f64> = rows.iter().map(|r| r.theta).collect();
    let slope_d1 = loglog_slope(&t, &rows.iter().map(|r| r.d1).collect::<Vec<_>>());
    let slope_d2 = loglog_slope(&t, &rows.iter().map(|r| r.d2).collect::<Vec<_>>());
    Ok(SweepTable { rows, slope_d1, slope_d2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let x = [1.0, 0.5, 0.25];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(1.7)).collect();
        assert!((loglog_slope(&x, &y).unwrap() - 1.7).abs() < 1e-12);
        assert_eq!(loglog_slope(&x[..1], &y[..1]), None);
    }

    #[test]
    fn rejects_bad_theta_lists() {
        let spec = crate::star_numeric::GridSpec::new(2, 8, 4.0, 1.0).unwrap();
        let f = GridFunction::constant(&spec, Complex64::new(1.0, 0.0));
        let sigma = crate::geometry::standard_skew_dim(2).unwrap();
        assert!(semiclassical_sweep(&f, &f, &sigma, &[]).is_err());
        assert!(semiclassical_sweep(&f, &f, &sigma, &[0.5, 1.0]).is_err());
        assert!(semiclassical_sweep(&f, &f, &sigma, &[1.0, -0.5]).is_err());
    }

    #[test]
    fn single_theta_has_no_slope() {
        let spec = crate::star_numeric::GridSpec::new(2, 16, 8.0, 1.0).unwrap();
        let f = crate::star_numeric::functions::gaussian(&spec, &[0.0, 0.0], 1.0);
        let sigma = crate::geometry::standard_skew_dim(2).unwrap();
        let t = semiclassical_sweep(&f, &f, &sigma, &[0.5]).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert!(t.slope_d1.is_none());
        assert_eq!(t.to_csv().lines().count(), 2);
    }
}

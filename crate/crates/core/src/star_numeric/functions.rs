//! Test functions used throughout: Gaussians, plane waves and smooth plateau windows.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::grid::{GridFunction, GridSpec};
use crate::geometry::Covector;
use crate::weyl_algebra::e;

/// `exp(−π|x − c|²/s²)`.
pub fn gaussian(spec: &GridSpec, center: &[f64], width: f64) -> GridFunction {
    GridFunction::from_fn(spec, |x| {
        let r2: f64 = x.iter().zip(center).map(|(a, b)| (a - b).powi(2)).sum();
        Complex64::new((-PI * r2 / (width * width)).exp(), 0.0)
    })
}

/// Closed-form transform of [`gaussian`]: `s^d exp(−πs²|p|²) e(−c·p)`.
pub fn gaussian_hat(center: &[f64], width: f64, p: &[f64]) -> Complex64 {
    let p2: f64 = p.iter().map(|v| v * v).sum();
    let cp: f64 = p.iter().zip(center).map(|(a, b)| a * b).sum();
    width.powi(p.len() as i32) * (-PI * width * width * p2).exp() * e(-cp)
}

pub fn gaussian_at(center: &[f64], width: f64, x: &[f64]) -> Complex64 {
    let r2: f64 = x.iter().zip(center).map(|(a, b)| (a - b).powi(2)).sum();
    Complex64::new((-PI * r2 / (width * width)).exp(), 0.0)
}

pub fn plane_wave(spec: &GridSpec, alpha: &Covector) -> GridFunction {
    GridFunction::from_fn(spec, |x| e(x.iter().zip(&alpha.0).map(|(a, b)| a * b).sum()))
}

/// One-dimensional plateau `½[erf((x+a)/b) − erf((x−a)/b)]`: ≈1 on |x| < a, edge width b.
pub fn plateau(x: f64, half_width: f64, edge: f64) -> f64 {
    0.5 * (libm::erf((x + half_width) / edge) - libm::erf((x - half_width) / edge))
}

/// Product of per-axis plateaus.
pub fn plateau_window(spec: &GridSpec, half_width: f64, edge: f64) -> GridFunction {
    GridFunction::from_fn(spec, |x| {
        Complex64::new(x.iter().map(|&v| plateau(v, half_width, edge)).product(), 0.0)
    })
}

/// Default window for an `L`-box: flat on |x| < 3L/8, edge 3L/80.
pub fn default_window(spec: &GridSpec) -> GridFunction {
    plateau_window(spec, 0.375 * spec.length, 0.0375 * spec.length)
}

/// `q ↦ (α·q)·w(q)`.
pub fn windowed_coordinate(window: &GridFunction, alpha: &Covector) -> GridFunction {
    let spec = window.spec();
    let coord = GridFunction::from_fn(spec, |x| {
        Complex64::new(x.iter().zip(&alpha.0).map(|(a, b)| a * b).sum(), 0.0)
    });
    coord.pointwise(window).expect("same lattice")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_shape() {
        assert!((plateau(0.0, 3.0, 0.3) - 1.0).abs() < 1e-15);
        assert!((plateau(3.0, 3.0, 0.3) - 0.5).abs() < 1e-12);
        assert!(plateau(4.5, 3.0, 0.3) < 1e-11);
    }

    #[test]
    fn gaussian_transform_matches_grid_transform() {
        let spec = GridSpec::default();
        let c = [0.3, -0.2];
        let g = gaussian(&spec, &c, 1.2);
        let hat = crate::star_numeric::fft_forward(&g);
        let worst = (0..spec.total())
            .map(|i| {
                let p = crate::star_numeric::fourier::frequency(&spec, i);
                (hat.values()[i] - gaussian_hat(&c, 1.2, &p)).norm()
            })
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "{worst}");
    }
}

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use super::grid::{GridFunction, GridSpec};
use crate::error::{Error, Result};

fn parity_sign(spec: &GridSpec, flat: usize) -> f64 {
    let mut rest = flat;
    let mut sum = 0;
    for _ in 0..spec.dim {
        sum += rest % spec.n;
        rest /= spec.n;
    }
    if sum % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Unnormalized multi-dimensional DFT, axis by axis.
fn dft_in_place(spec: &GridSpec, data: &mut [Complex64], direction: FftDirection) {
    let n = spec.n;
    let fft = FftPlanner::new().plan_fft(n, direction);
    let mut line = vec![Complex64::default(); n];
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
    let total = data.len();
    for axis in 0..spec.dim {
        let stride = n.pow((spec.dim - 1 - axis) as u32);
        for hi in 0..total / (stride * n) {
            for lo in 0..stride {
                let base = hi * stride * n + lo;
                for (j, v) in line.iter_mut().enumerate() {
                    *v = data[base + j * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (j, v) in line.iter().enumerate() {
                    data[base + j * stride] = *v;
                }
            }
        }
    }
}

/// Centered transform with weight `(len/N)^d`; the same formula serves both directions.
fn centered_transform(spec: &GridSpec, values: &[Complex64], direction: FftDirection) -> Vec<Complex64> {
    let mut data: Vec<Complex64> =
        values.iter().enumerate().map(|(i, v)| v * parity_sign(spec, i)).collect();
    dft_in_place(spec, &mut data, direction);
    let w = spec.cell_volume();
    for (i, v) in data.iter_mut().enumerate() {
        *v *= parity_sign(spec, i) * w;
    }
    data
}

/// Samples of `ĝ(p) = ∫ g(x) e(−x·p) dx` on the centered dual lattice `p = (k − N/2)/L`.
pub(crate) fn spectrum(f: &GridFunction) -> Vec<Complex64> {
    centered_transform(f.spec(), f.values(), FftDirection::Forward)
}

/// Inverse of [`spectrum`], returning samples on the lattice of `spec`.
pub(crate) fn synthesize(spec: &GridSpec, spec_values: &[Complex64]) -> GridFunction {
    GridFunction::from_raw(spec.clone(), centered_transform(&spec.dual(), spec_values, FftDirection::Inverse))
}

pub fn fft_forward(f: &GridFunction) -> GridFunction {
    GridFunction::from_raw(f.spec().dual(), spectrum(f))
}

pub fn fft_inverse(f: &GridFunction) -> GridFunction {
    let spec = f.spec().dual();
    GridFunction::from_raw(spec.clone(), centered_transform(f.spec(), f.values(), FftDirection::Inverse))
}

/// Dual-lattice frequency of each axis for a flat spectral index.
pub(crate) fn frequency(spec: &GridSpec, flat: usize) -> Vec<f64> {
    spec.multi_index(flat)
        .into_iter()
        .map(|i| spec.wavenumber(i) as f64 / spec.length)
        .collect()
}

/// `x ↦ f(x + s)`, done with a phase ramp on the spectrum.
pub fn translate(f: &GridFunction, s: &[f64]) -> Result<GridFunction> {
    let spec = f.spec();
    if s.len() != spec.dim {
        return Err(Error::Dimension(format!("shift of length {} on a {}-d grid", s.len(), spec.dim)));
    }
    let mut hat = spectrum(f);
    for (flat, v) in hat.iter_mut().enumerate() {
        let p = frequency(spec, flat);
        let t: f64 = p.iter().zip(s).map(|(a, b)| a * b).sum();
        *v *= crate::weyl_algebra::e(t);
    }
    Ok(synthesize(spec, &hat))
}

/// Spectral partial derivative along `axis`; the unpaired Nyquist mode is dropped.
pub fn derivative(f: &GridFunction, axis: usize) -> Result<GridFunction> {
    let spec = f.spec();
    if axis >= spec.dim {
        return Err(Error::Index { index: axis, dim: spec.dim });
    }
    let mut hat = spectrum(f);
    for (flat, v) in hat.iter_mut().enumerate() {
        let i = spec.multi_index(flat)[axis];
        if i == 0 {
            *v = Complex64::default();
        } else {
            *v *= Complex64::new(0.0, TAU * spec.wavenumber(i) as f64 / spec.length);
        }
    }
    Ok(synthesize(spec, &hat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn gauss(spec: &GridSpec) -> GridFunction {
        GridFunction::from_fn(spec, |x| {
            Complex64::new((-PI * x.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0)
        })
    }

    #[test]
    fn gaussian_is_self_dual() {
        let spec = GridSpec::default();
        let g = gauss(&spec);
        let hat = fft_forward(&g);
        assert_eq!(hat.spec().length, 8.0);
        let d = hat.values().iter().zip(g.values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(d < 1e-9, "{d}");
    }

    #[test]
    fn spike_has_flat_spectrum() {
        let spec = GridSpec::new(2, 16, 4.0, 1.0).unwrap();
        let mut v = vec![Complex64::default(); spec.total()];
        v[spec.flat_index(&[8, 8])] = Complex64::new(1.0, 0.0);
        let hat = fft_forward(&GridFunction::new(spec.clone(), v).unwrap());
        let w = spec.cell_volume();
        assert!(hat.values().iter().all(|z| (z.norm() - w).abs() < 1e-15));
    }

    #[test]
    fn round_trip() {
        let spec = GridSpec::new(2, 32, 5.0, 1.0).unwrap();
        let f = GridFunction::from_fn(&spec, |x| Complex64::new(x[0].sin(), x[1] * x[0]));
        let back = fft_inverse(&fft_forward(&f));
        assert!(back.spec().same_lattice(&spec));
        let back = back.with_spec(spec).unwrap();
        assert!(back.rel_l2(&f).unwrap() < 1e-12);
    }

    #[test]
    fn translate_matches_analytic_shift() {
        let spec = GridSpec::default();
        let f = gauss(&spec);
        let s = [0.3, -0.7];
        let moved = translate(&f, &s).unwrap();
        let exact = GridFunction::from_fn(&spec, |x| {
            Complex64::new((-PI * ((x[0] + s[0]).powi(2) + (x[1] + s[1]).powi(2))).exp(), 0.0)
        });
        assert!(moved.max_abs_diff(&exact).unwrap() < 1e-12);
    }

    #[test]
    fn derivative_of_gaussian() {
        let spec = GridSpec::default();
        let f = gauss(&spec);
        let df = derivative(&f, 1).unwrap();
        let exact = GridFunction::from_fn(&spec, |x| {
            Complex64::new(-2.0 * PI * x[1] * (-PI * (x[0] * x[0] + x[1] * x[1])).exp(), 0.0)
        });
        assert!(df.max_abs_diff(&exact).unwrap() < 1e-10);
        assert!(derivative(&f, 2).is_err());
    }
}

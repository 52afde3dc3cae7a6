use num_complex::Complex64;
use rayon::prelude::*;

use super::fourier::{derivative, spectrum, synthesize, translate};
use super::grid::{GridFunction, GridSpec};
use crate::error::{Error, Result};
use crate::geometry::{Covector, SkewForm};
use crate::weyl_algebra::e;

pub(crate) fn check_form(spec: &GridSpec, sigma: &SkewForm) -> Result<()> {
    if sigma.dim() != spec.dim {
        return Err(Error::Dimension(format!(
            "{}-d form on a {}-d grid",
            sigma.dim(),
            spec.dim
        )));
    }
    Ok(())
}

/// Integer wavenumbers and per-axis strides used by the spectral kernels.
pub(crate) struct Lattice {
    pub n: i64,
    pub dim: usize,
    /// Centered wavenumbers, `dim` entries per flat index.
    pub k: Vec<i64>,
    pub strides: Vec<usize>,
}

impl Lattice {
    pub fn new(spec: &GridSpec) -> Self {
        let dim = spec.dim;
        let mut k = Vec::with_capacity(spec.total() * dim);
        for flat in 0..spec.total() {
            k.extend(spec.multi_index(flat).into_iter().map(|i| spec.wavenumber(i)));
        }
        let strides = (0..dim).map(|a| spec.n.pow((dim - 1 - a) as u32)).collect();
        Self { n: spec.n as i64, dim, k, strides }
    }

    pub fn of(&self, flat: usize) -> &[i64] {
        &self.k[flat * self.dim..(flat + 1) * self.dim]
    }

    /// Flat index of `wrap(m − k)`, writing the wrapped wavenumber into `out`.
    #[inline]
    pub fn difference(&self, m: &[i64], k: &[i64], out: &mut [i64]) -> usize {
        let half = self.n / 2;
        let mut flat = 0;
        for a in 0..self.dim {
            let mut j = m[a] - k[a];
            if j < -half {
                j += self.n;
            } else if j >= half {
                j -= self.n;
            }
            out[a] = j;
            flat += (j + half) as usize * self.strides[a];
        }
        flat
    }
}

/// `θσ/L²` as a dense row-major matrix acting on integer wavenumbers.
pub(crate) fn twist_matrix(spec: &GridSpec, sigma: &SkewForm) -> Vec<f64> {
    let c = spec.theta / (spec.length * spec.length);
    sigma.matrix().as_slice().iter().map(|v| v * c).collect()
}

/// Deformed product `(f⋆g)(q) = ∫ f(q − θσp) ĝ(p) e(q·p) dp` on the periodic grid.
///
/// The phase-ramp shift of `f` for every dual node is carried out in Fourier
/// space, where it becomes a twisted cyclic convolution of the two spectra.
pub fn star_product(f: &GridFunction, g: &GridFunction, sigma: &SkewForm) -> Result<GridFunction> {
    let spec = f.spec();
    spec.require_same(g.spec())?;
    check_form(spec, sigma)?;
    let fh = spectrum(f);
    let gh = spectrum(g);
    let lat = Lattice::new(spec);
    let d = spec.dim;
    let b = twist_matrix(spec, sigma);
    // w_k = Bᵗk so that kᵗ B j = w_k · j.
    let w: Vec<f64> = (0..spec.total())
        .flat_map(|flat| {
            let k = lat.of(flat);
            (0..d)
                .map(|col| (0..d).map(|row| k[row] as f64 * b[row * d + col]).sum::<f64>())
                .collect::<Vec<_>>()
        })
        .collect();
    let norm = 1.0 / spec.length.powi(d as i32);
    let out: Vec<Complex64> = (0..spec.total())
        .into_par_iter()
        .map(|m_flat| {
            let m = lat.of(m_flat);
            let mut j = vec![0i64; d];
            let mut acc = Complex64::default();
            for (k_flat, &fk) in fh.iter().enumerate() {
                let j_flat = lat.difference(m, lat.of(k_flat), &mut j);
                let wk = &w[k_flat * d..(k_flat + 1) * d];
                let arg: f64 = wk.iter().zip(&j).map(|(a, &b)| a * b as f64).sum();
                acc += fk * gh[j_flat] * e(-arg);
            }
            acc * norm
        })
        .collect();
    Ok(synthesize(spec, &out))
}

/// Pointwise complex conjugation, the `*`-operation of the deformed algebra.
pub fn involution(f: &GridFunction) -> GridFunction {
    f.conj()
}

/// `q ↦ e(α·q) f(q + θσα)`.
pub fn weyl_action(alpha: &Covector, f: &GridFunction, sigma: &SkewForm) -> Result<GridFunction> {
    let spec = f.spec();
    check_form(spec, sigma)?;
    if alpha.dim() != spec.dim {
        return Err(Error::Dimension(format!("covector of length {}", alpha.dim())));
    }
    let shift = sigma.apply(alpha).scale(spec.theta);
    let moved = translate(f, &shift.0)?;
    let phase = GridFunction::from_fn(spec, |q| e(q.iter().zip(&alpha.0).map(|(a, b)| a * b).sum()));
    moved.pointwise(&phase)
}

pub fn star_commutator(f: &GridFunction, g: &GridFunction, sigma: &SkewForm) -> Result<GridFunction> {
    star_product(f, g, sigma)?.sub(&star_product(g, f, sigma)?)
}

/// `{f, g} = Σ σ_jk ∂_k f ∂_j g`, so that `{α·q, β·q} = q_form(σ, α, β)`.
///
/// With this ordering `f⋆g = fg + (θ/2πi){f,g} + O(θ²)`.
pub fn poisson_bracket(f: &GridFunction, g: &GridFunction, sigma: &SkewForm) -> Result<GridFunction> {
    let spec = f.spec();
    spec.require_same(g.spec())?;
    check_form(spec, sigma)?;
    let df: Vec<GridFunction> = (0..spec.dim).map(|a| derivative(f, a)).collect::<Result<_>>()?;
    let dg: Vec<GridFunction> = (0..spec.dim).map(|a| derivative(g, a)).collect::<Result<_>>()?;
    // Pairs j < k with σ_kj = −σ_jk; the difference form makes {g,f} = −{f,g} exactly.
    let mut out = vec![Complex64::default(); spec.total()];
    for j in 0..spec.dim {
        for k in j + 1..spec.dim {
            let s = sigma.matrix()[(j, k)];
            if s == 0.0 {
                continue;
            }
            let (fj, fk, gj, gk) = (df[j].values(), df[k].values(), dg[j].values(), dg[k].values());
            for (i, o) in out.iter_mut().enumerate() {
                *o += s * (fk[i] * gj[i] - fj[i] * gk[i]);
            }
        }
    }
    Ok(GridFunction::from_raw(spec.clone(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::standard_skew_dim;
    use crate::star_numeric::functions::{gaussian, plane_wave};

    fn spec() -> GridSpec {
        GridSpec::new(2, 32, 8.0, 1.0).unwrap()
    }

    #[test]
    fn zero_form_gives_pointwise_product() {
        let s = spec();
        let f = gaussian(&s, &[0.2, -0.1], 1.1);
        let g = gaussian(&s, &[-0.3, 0.4], 0.9).scale(Complex64::new(0.5, 1.0));
        let p = star_product(&f, &g, &SkewForm::zero(2)).unwrap();
        assert!(p.rel_l2(&f.pointwise(&g).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn weyl_action_hand_example() {
        // σ = [[0,1],[-1,0]], α = (1,0): σα = (0,-1).
        let s = GridSpec::default();
        let sigma = standard_skew_dim(2).unwrap();
        let f = gaussian(&s, &[0.0, 0.0], 1.0);
        let out = weyl_action(&Covector(vec![1.0, 0.0]), &f, &sigma).unwrap();
        let exact = GridFunction::from_fn(&s, |q| {
            e(q[0]) * (-std::f64::consts::PI * (q[0] * q[0] + (q[1] - 1.0).powi(2))).exp()
        });
        assert!(out.max_abs_diff(&exact).unwrap() < 1e-12);
    }

    #[test]
    fn weyl_action_zero_is_identity() {
        let s = spec();
        let f = gaussian(&s, &[0.1, 0.0], 1.0);
        let out = weyl_action(&Covector::zero(2), &f, &standard_skew_dim(2).unwrap()).unwrap();
        assert!(out.max_abs_diff(&f).unwrap() < 1e-14);
    }

    #[test]
    fn weyl_actions_compose_with_phase() {
        let s = GridSpec::default().with_theta(0.5).unwrap();
        let sigma = standard_skew_dim(2).unwrap();
        let f = gaussian(&s, &[0.2, 0.1], 1.0);
        let a = Covector(vec![0.5, -0.25]);
        let b = Covector(vec![0.25, 0.75]);
        let lhs = weyl_action(&a, &weyl_action(&b, &f, &sigma).unwrap(), &sigma).unwrap();
        let q = crate::geometry::q_form(&sigma, &a, &b) * s.theta;
        let rhs = weyl_action(&a.add(&b), &f, &sigma).unwrap().scale(e(q));
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-9);
    }

    #[test]
    fn star_product_with_plane_wave_is_the_weyl_action() {
        // A lattice plane wave has a one-point spectrum, so the product is exactly u_α g.
        let s = GridSpec::new(2, 32, 8.0, 1.0).unwrap();
        let sigma = standard_skew_dim(2).unwrap();
        let alpha = Covector(vec![0.25, -0.5]);
        let g = gaussian(&s, &[0.1, 0.2], 1.0);
        let p = star_product(&plane_wave(&s, &alpha), &g, &sigma).unwrap();
        let w = weyl_action(&alpha, &g, &sigma).unwrap();
        assert!(p.rel_l2(&w).unwrap() < 1e-12);
    }

    #[test]
    fn commutator_of_equal_functions_vanishes() {
        let s = spec();
        let f = gaussian(&s, &[0.1, 0.2], 1.0);
        let c = star_commutator(&f, &f, &standard_skew_dim(2).unwrap()).unwrap();
        assert!(c.norm_max() < 1e-14);
    }

    #[test]
    fn poisson_bracket_is_antisymmetric() {
        let s = spec();
        let sigma = standard_skew_dim(2).unwrap();
        let f = gaussian(&s, &[0.1, 0.2], 1.0);
        let g = gaussian(&s, &[-0.4, 0.0], 1.3);
        let fg = poisson_bracket(&f, &g, &sigma).unwrap();
        let gf = poisson_bracket(&g, &f, &sigma).unwrap();
        assert_eq!(fg.scale(Complex64::new(-1.0, 0.0)).values(), gf.values());
        assert!(poisson_bracket(&f, &f, &sigma).unwrap().norm_max() < 1e-15);
    }

    #[test]
    fn spec_mismatch_is_reported() {
        let f = gaussian(&spec(), &[0.0, 0.0], 1.0);
        let g = gaussian(&GridSpec::default(), &[0.0, 0.0], 1.0);
        assert!(matches!(
            star_product(&f, &g, &standard_skew_dim(2).unwrap()),
            Err(Error::SpecMismatch(_))
        ));
    }
}

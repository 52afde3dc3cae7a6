use faer::{c64, Mat, Par, Side};
use num_complex::Complex64;
use serde::Serialize;

use super::fourier::spectrum;
use super::grid::{GridFunction, GridSpec};
use super::product::{check_form, star_product, twist_matrix, Lattice};
use crate::error::{Error, Result};
use crate::geometry::SkewForm;
use crate::weyl_algebra::e;

/// Largest grid side accepted for matrix construction.
pub const MAX_OPERATOR_DIM: usize = 2;

/// Left-regular operator `L_f` in the normalized Fourier basis of the grid.
///
/// The basis is orthonormal for the grid inner product, so adjoints and
/// singular values agree with those of the position-space operator.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub matrix: Mat<c64>,
    pub spec: GridSpec,
    pub sigma: SkewForm,
    pub label: String,
}

impl OperatorMatrix {
    pub fn side(&self) -> usize {
        self.matrix.nrows()
    }

    /// Applies the matrix to the Fourier coefficients of `xi`.
    pub fn apply(&self, xi: &GridFunction) -> Result<GridFunction> {
        self.spec.require_same(xi.spec())?;
        let xh = spectrum(xi);
        let out: Vec<Complex64> = (0..self.side())
            .map(|m| (0..self.side()).map(|n| self.matrix[(m, n)] * xh[n]).sum())
            .collect();
        Ok(super::fourier::synthesize(&self.spec, &out))
    }
}

fn sequential() {
    // Keeps every decomposition on one thread so reports are bit-reproducible.
    faer::set_global_parallelism(Par::Seq);
}

pub fn build_left_regular_matrix(f: &GridFunction, sigma: &SkewForm) -> Result<OperatorMatrix> {
    let spec = f.spec();
    if spec.dim > MAX_OPERATOR_DIM {
        return Err(Error::Dimension(format!(
            "operator matrices need d <= {MAX_OPERATOR_DIM}, got {}",
            spec.dim
        )));
    }
    check_form(spec, sigma)?;
    let fh = spectrum(f);
    let lat = Lattice::new(spec);
    let b = twist_matrix(spec, sigma);
    let d = spec.dim;
    let norm = 1.0 / spec.length.powi(d as i32);
    let mut diff = vec![0i64; d];
    let matrix = Mat::<c64>::from_fn(spec.total(), spec.total(), |m, n| {
        let k_flat = lat.difference(lat.of(m), lat.of(n), &mut diff);
        let j = lat.of(n);
        let mut arg = 0.0;
        for r in 0..d {
            for c in 0..d {
                arg += diff[r] as f64 * b[r * d + c] * j[c] as f64;
            }
        }
        fh[k_flat] * e(-arg) * norm
    });
    Ok(OperatorMatrix { matrix, spec: spec.clone(), sigma: sigma.clone(), label: String::new() })
}

/// Largest singular value.
pub fn spectral_norm(m: &Mat<c64>) -> Result<f64> {
    sequential();
    let s = m.singular_values().map_err(|e| Error::LinAlg(format!("{e:?}")))?;
    Ok(s.first().copied().unwrap_or(0.0))
}

/// `‖L_{f⋆g} − L_f L_g‖ / (‖L_f‖‖L_g‖)`.
pub fn homomorphism_defect(f: &GridFunction, g: &GridFunction, sigma: &SkewForm) -> Result<f64> {
    let lf = build_left_regular_matrix(f, sigma)?.matrix;
    let lg = build_left_regular_matrix(g, sigma)?.matrix;
    let lfg = build_left_regular_matrix(&star_product(f, g, sigma)?, sigma)?.matrix;
    sequential();
    let prod = &lf * &lg;
    Ok(spectral_norm(&(&lfg - &prod))? / (spectral_norm(&lf)? * spectral_norm(&lg)?))
}

/// `‖L_{f*} − L_f^†‖ / ‖L_f‖`.
pub fn adjoint_defect(f: &GridFunction, sigma: &SkewForm) -> Result<f64> {
    let lf = build_left_regular_matrix(f, sigma)?.matrix;
    let lstar = build_left_regular_matrix(&f.conj(), sigma)?.matrix;
    let diff = &lstar - lf.adjoint();
    Ok(spectral_norm(&diff)? / spectral_norm(&lf)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CStarReport {
    /// `‖L_f‖`.
    pub norm_f: f64,
    /// `‖L_{f*⋆f}‖`.
    pub norm_star_f: f64,
    /// `|‖L_{f*⋆f}‖ − ‖L_f‖²| / ‖L_f‖²`.
    pub defect: f64,
    /// Smallest eigenvalue of the Hermitian part of `L_{f*⋆f}`.
    pub min_eigenvalue: f64,
}

impl CStarReport {
    /// `min_eigenvalue / ‖L_f‖²`.
    pub fn positivity(&self) -> f64 {
        self.min_eigenvalue / (self.norm_f * self.norm_f)
    }
}

pub fn cstar_identity_check(f: &GridFunction, sigma: &SkewForm) -> Result<CStarReport> {
    let lf = build_left_regular_matrix(f, sigma)?.matrix;
    let ff = star_product(&f.conj(), f, sigma)?;
    let lff = build_left_regular_matrix(&ff, sigma)?.matrix;
    let norm_f = spectral_norm(&lf)?;
    let norm_star_f = spectral_norm(&lff)?;
    let herm = Mat::<c64>::from_fn(lff.nrows(), lff.ncols(), |i, j| {
        (lff[(i, j)] + lff[(j, i)].conj()) * 0.5
    });
    sequential();
    let eig = herm
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::LinAlg(format!("{e:?}")))?;
    let sq = norm_f * norm_f;
    Ok(CStarReport {
        norm_f,
        norm_star_f,
        defect: (norm_star_f - sq).abs() / sq,
        min_eigenvalue: eig.first().copied().unwrap_or(0.0),
    })
}

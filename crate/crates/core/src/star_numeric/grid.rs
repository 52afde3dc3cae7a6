use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used when comparing box lengths of two specs.
const LENGTH_RTOL: f64 = 1e-12;

/// Periodic lattice `{-L/2 + kL/N}^d` together with the deformation scale θ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dim: usize,
    pub n: usize,
    pub length: f64,
    pub theta: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { dim: 2, n: 64, length: 8.0, theta: 1.0 }
    }
}

impl GridSpec {
    pub fn new(dim: usize, n: usize, length: f64, theta: f64) -> Result<Self> {
        let spec = Self { dim, n, length, theta };
        spec.validate()?;
        Ok(spec)
    }

    /// Box length at which the discrete twist closes exactly: θN/L² = 1.
    pub fn commensurate(dim: usize, n: usize, theta: f64) -> Result<Self> {
        Self::new(dim, n, (theta * n as f64).sqrt(), theta)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidSpec("dim must be positive".into()));
        }
        if self.n < 8 || !self.n.is_power_of_two() {
            return Err(Error::InvalidSpec(format!("N = {} is not a power of two >= 8", self.n)));
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::InvalidSpec(format!("L = {} must be positive", self.length)));
        }
        if !(self.theta.is_finite() && self.theta > 0.0) {
            return Err(Error::InvalidSpec(format!("theta = {} must be positive", self.theta)));
        }
        if self.total_checked().is_none() {
            return Err(Error::InvalidSpec("N^d overflows".into()));
        }
        Ok(())
    }

    fn total_checked(&self) -> Option<usize> {
        (0..self.dim).try_fold(1usize, |acc, _| acc.checked_mul(self.n))
    }

    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(self.dim, self.n, self.length, theta)
    }

    /// Number of lattice points, `N^d`.
    pub fn total(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Riemann weight `(L/N)^d`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Spec of the reciprocal lattice: same N, box length N/L.
    pub fn dual(&self) -> Self {
        Self { length: self.n as f64 / self.length, ..self.clone() }
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        -0.5 * self.length + i as f64 * self.spacing()
    }

    /// Centered integer wavenumber of stored index `i`, in `[-N/2, N/2)`.
    pub fn wavenumber(&self, i: usize) -> i64 {
        i as i64 - (self.n / 2) as i64
    }

    /// Stored index of a wavenumber, wrapping modulo N.
    pub fn wrap(&self, k: i64) -> usize {
        let n = self.n as i64;
        (k + n / 2).rem_euclid(n) as usize
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim];
        for a in (0..self.dim).rev() {
            idx[a] = flat % self.n;
            flat /= self.n;
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat).into_iter().map(|i| self.coordinate(i)).collect()
    }

    /// True when the two lattices coincide; θ is not compared.
    pub fn same_lattice(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.n == other.n
            && (self.length - other.length).abs() <= LENGTH_RTOL * self.length.max(other.length)
    }

    pub fn require_same(&self, other: &Self) -> Result<()> {
        if !self.same_lattice(other) {
            return Err(Error::SpecMismatch(format!(
                "(d={}, N={}, L={}) vs (d={}, N={}, L={})",
                self.dim, self.n, self.length, other.dim, other.n, other.length
            )));
        }
        if self.theta != other.theta {
            return Err(Error::SpecMismatch(format!("theta {} vs {}", self.theta, other.theta)));
        }
        Ok(())
    }
}

/// Complex samples on the lattice of a [`GridSpec`], row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    spec: GridSpec,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        spec.validate()?;
        if values.len() != spec.total() {
            return Err(Error::Dimension(format!(
                "expected {} values, got {}",
                spec.total(),
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Format(format!("non-finite value at index {i}")));
        }
        Ok(Self { spec, values })
    }

    pub(crate) fn from_raw(spec: GridSpec, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), spec.total());
        Self { spec, values }
    }

    pub fn from_fn(spec: &GridSpec, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let mut x = vec![0.0; spec.dim];
        let values = (0..spec.total())
            .map(|flat| {
                let mut rest = flat;
                for a in (0..spec.dim).rev() {
                    x[a] = spec.coordinate(rest % spec.n);
                    rest /= spec.n;
                }
                f(&x)
            })
            .collect();
        Self { spec: spec.clone(), values }
    }

    pub fn constant(spec: &GridSpec, c: Complex64) -> Self {
        Self { spec: spec.clone(), values: vec![c; spec.total()] }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn with_spec(mut self, spec: GridSpec) -> Result<Self> {
        if !self.spec.same_lattice(&spec) {
            return Err(Error::SpecMismatch("lattice differs".into()));
        }
        self.spec = spec;
        Ok(self)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self { spec: self.spec.clone(), values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        self.spec.require_same(&other.spec)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { spec: self.spec.clone(), values })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise (commutative) product.
    pub fn pointwise(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|v| v * s)
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn norm_l2(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.spec.cell_volume()).sqrt()
    }

    pub fn norm_max(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `‖self − other‖₂ / ‖other‖₂`.
    pub fn rel_l2(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.norm_l2() / other.norm_l2())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.norm_max())
    }

    /// Relative L² defect over the lattice points accepted by `keep`.
    pub fn masked_rel_l2(&self, other: &Self, keep: impl Fn(&[f64]) -> bool) -> Result<f64> {
        self.spec.require_same(&other.spec)?;
        let (mut num, mut den) = (0.0, 0.0);
        for flat in 0..self.spec.total() {
            if keep(&self.spec.point(flat)) {
                num += (self.values[flat] - other.values[flat]).norm_sqr();
                den += other.values[flat].norm_sqr();
            }
        }
        if den == 0.0 {
            return Err(Error::Empty);
        }
        Ok((num / den).sqrt())
    }
}

/// Grid inner product `Σ conj(ξ) η (L/N)^d`, conjugate-linear in the first slot.
pub fn inner_product_b(xi: &GridFunction, eta: &GridFunction) -> Result<Complex64> {
    xi.spec.require_same(&eta.spec)?;
    let s: Complex64 = xi.values.iter().zip(&eta.values).map(|(a, b)| a.conj() * b).sum();
    Ok(s * xi.spec.cell_volume())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(GridSpec::new(2, 64, 8.0, 1.0).is_ok());
        assert!(GridSpec::new(2, 4, 8.0, 1.0).is_err());
        assert!(GridSpec::new(2, 48, 8.0, 1.0).is_err());
        assert!(GridSpec::new(2, 64, 0.0, 1.0).is_err());
        assert!(GridSpec::new(2, 64, 8.0, -1.0).is_err());
    }

    #[test]
    fn index_round_trip() {
        let s = GridSpec::new(3, 8, 2.0, 1.0).unwrap();
        for flat in [0, 1, 63, 200, 511] {
            assert_eq!(s.flat_index(&s.multi_index(flat)), flat);
        }
        assert_eq!(s.coordinate(0), -1.0);
        assert_eq!(s.coordinate(4), 0.0);
        assert_eq!(s.wavenumber(0), -4);
        assert_eq!(s.wrap(-4), 0);
        assert_eq!(s.wrap(4), 0);
        assert_eq!(s.wrap(-5), 7);
    }

    #[test]
    fn gaussian_self_inner_product() {
        let spec = GridSpec::default();
        let f = GridFunction::from_fn(&spec, |x| {
            Complex64::new((-std::f64::consts::PI * (x[0] * x[0] + x[1] * x[1])).exp(), 0.0)
        });
        // ∫ e^{-2π|x|²} dx = 1/2 in two dimensions.
        let ip = inner_product_b(&f, &f).unwrap();
        assert!((ip.re - 0.5).abs() < 1e-9 && ip.im == 0.0);
    }

    #[test]
    fn inner_product_is_hermitian() {
        let spec = GridSpec::new(2, 16, 4.0, 1.0).unwrap();
        let f = GridFunction::from_fn(&spec, |x| Complex64::new(x[0], x[1] * x[0]));
        let g = GridFunction::from_fn(&spec, |x| Complex64::new(1.0 + x[1], -x[0]));
        let a = inner_product_b(&f, &g).unwrap();
        let b = inner_product_b(&g, &f).unwrap();
        assert!((a - b.conj()).norm() < 1e-12);
        assert!(inner_product_b(&f, &f).unwrap().re >= 0.0);
    }

    #[test]
    fn rejects_wrong_length_and_nan() {
        let spec = GridSpec::new(2, 8, 1.0, 1.0).unwrap();
        assert!(GridFunction::new(spec.clone(), vec![Complex64::default(); 63]).is_err());
        let mut v = vec![Complex64::default(); 64];
        v[3].re = f64::NAN;
        assert!(GridFunction::new(spec, v).is_err());
    }
}

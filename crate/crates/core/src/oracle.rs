//! Adaptive Gauss–Kronrod quadrature of `∫ f(q − θσp) ĝ(p) e(q·p) dp`.
//!
//! This path never touches the FFT code: integrands are closures evaluated at
//! arbitrary continuous points, so agreement with `star_product` is a genuine
//! cross-check of the discretization.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::SkewForm;
use crate::star_numeric::{GridFunction, GridSpec};
use crate::weyl_algebra::e;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions {
    /// Absolute error target for the whole integral.
    pub tol: f64,
    /// Maximum bisection depth below each initial panel.
    pub max_depth: u32,
    /// Number of equal panels the interval is cut into before adapting.
    pub panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self { tol: 1e-11, max_depth: 30, panels: 8 }
    }
}

fn kronrod(f: &mut dyn FnMut(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += s * WGK[i];
        if i % 2 == 1 {
            g += s * WG[i / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

fn adapt(
    f: &mut dyn FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let (k, err) = kronrod(f, a, b);
    if err <= tol || depth == 0 {
        return k;
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth - 1) + adapt(f, m, b, 0.5 * tol, depth - 1)
}

/// Adaptive G7–K15 integral of a complex function over `[a, b]`.
pub fn integrate(f: &mut dyn FnMut(f64) -> Complex64, a: f64, b: f64, opts: &QuadratureOptions) -> Complex64 {
    let panels = opts.panels.max(1);
    let w = (b - a) / panels as f64;
    let tol = opts.tol / panels as f64;
    (0..panels)
        .map(|i| adapt(f, a + i as f64 * w, a + (i + 1) as f64 * w, tol, opts.max_depth))
        .sum()
}

/// Iterated integral over `[a, b]²`.
pub fn integrate_2d(
    f: &mut dyn FnMut(f64, f64) -> Complex64,
    a: f64,
    b: f64,
    opts: &QuadratureOptions,
) -> Complex64 {
    let inner_opts = QuadratureOptions { tol: opts.tol / (b - a), ..*opts };
    integrate(&mut |x| integrate(&mut |y| f(x, y), a, b, &inner_opts), a, b, opts)
}

/// Quadrature value of `(f⋆g)(q)` for `d = 2`, integrating `p` over `[-band, band]²`.
pub fn star_product_at(
    f: &dyn Fn(&[f64]) -> Complex64,
    g_hat: &dyn Fn(&[f64]) -> Complex64,
    sigma: &SkewForm,
    theta: f64,
    q: &[f64],
    band: f64,
    opts: &QuadratureOptions,
) -> Result<Complex64> {
    if sigma.dim() != 2 || q.len() != 2 {
        return Err(Error::Dimension("quadrature oracle is two-dimensional".into()));
    }
    let s = sigma.matrix();
    let mut integrand = |p1: f64, p2: f64| {
        let y = [
            q[0] - theta * (s[(0, 0)] * p1 + s[(0, 1)] * p2),
            q[1] - theta * (s[(1, 0)] * p1 + s[(1, 1)] * p2),
        ];
        f(&y) * g_hat(&[p1, p2]) * e(q[0] * p1 + q[1] * p2)
    };
    Ok(integrate_2d(&mut integrand, -band, band, opts))
}

/// `e(k t)` for the centered wavenumbers `k = -N/2 .. N/2 - 1`, scaled by `1/L`.
fn mode_row(spec: &GridSpec, t: f64, sign: f64) -> Vec<Complex64> {
    (0..spec.n)
        .map(|i| e(sign * spec.wavenumber(i) as f64 * t / spec.length))
        .collect()
}

/// Continuous trigonometric interpolant of a 2-D grid function.
pub struct TrigInterpolant {
    spec: GridSpec,
    coeff: Vec<Complex64>,
}

impl TrigInterpolant {
    pub fn new(f: &GridFunction) -> Result<Self> {
        if f.spec().dim != 2 {
            return Err(Error::Dimension("interpolant is two-dimensional".into()));
        }
        let hat = crate::star_numeric::fft_forward(f);
        let w = 1.0 / (f.spec().length * f.spec().length);
        Ok(Self { spec: f.spec().clone(), coeff: hat.values().iter().map(|v| v * w).collect() })
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let r0 = mode_row(&self.spec, x[0], 1.0);
        let r1 = mode_row(&self.spec, x[1], 1.0);
        let n = self.spec.n;
        (0..n)
            .map(|a| r0[a] * (0..n).map(|b| self.coeff[a * n + b] * r1[b]).sum::<Complex64>())
            .sum()
    }
}

/// Continuous Fourier transform of the grid samples, `Σ g(x) e(−x·p) (L/N)²`.
pub struct SampledTransform {
    spec: GridSpec,
    values: Vec<Complex64>,
}

impl SampledTransform {
    pub fn new(g: &GridFunction) -> Result<Self> {
        if g.spec().dim != 2 {
            return Err(Error::Dimension("transform is two-dimensional".into()));
        }
        Ok(Self { spec: g.spec().clone(), values: g.values().to_vec() })
    }

    pub fn eval(&self, p: &[f64]) -> Complex64 {
        let n = self.spec.n;
        let r0: Vec<Complex64> = (0..n).map(|i| e(-self.spec.coordinate(i) * p[0])).collect();
        let r1: Vec<Complex64> = (0..n).map(|i| e(-self.spec.coordinate(i) * p[1])).collect();
        let s: Complex64 = (0..n)
            .map(|a| r0[a] * (0..n).map(|b| self.values[a * n + b] * r1[b]).sum::<Complex64>())
            .sum();
        s * self.spec.cell_volume()
    }
}

/// Quadrature of `f⋆g` for grid data at the given lattice indices, `p` over the grid's band.
pub fn star_product_grid(
    f: &GridFunction,
    g: &GridFunction,
    sigma: &SkewForm,
    points: &[usize],
    opts: &QuadratureOptions,
) -> Result<Vec<Complex64>> {
    f.spec().require_same(g.spec())?;
    let fi = TrigInterpolant::new(f)?;
    let gh = SampledTransform::new(g)?;
    let spec = f.spec();
    let band = spec.n as f64 / (2.0 * spec.length);
    points
        .iter()
        .map(|&flat| {
            let q = spec.point(flat);
            star_product_at(&|x| fi.eval(x), &|p| gh.eval(p), sigma, spec.theta, &q, band, opts)
        })
        .collect()
}

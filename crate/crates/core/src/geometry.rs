//! Spacetime bookkeeping: the metric, Lorentz transforms, skew forms and the
//! orbit Σ = { T σ₀ Tᵗ } together with its stabilizer and the central
//! functions Q_αβ.
//!
//! Vectors (elements of V) and covectors (elements of V′) are kept as distinct
//! newtypes. A skew form σ is stored as a d×d matrix acting V′ → V, so σα is a
//! vector and β(σα) = βᵗσα is the pairing that defines Q_αβ.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Index, IndexMut};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for the metric-preservation invariant TᵗηT = η.
pub const LORENTZ_TOL: f64 = 1e-12;
/// Tolerance below which |det σ| counts as degenerate.
pub const DEGENERATE_TOL: f64 = 1e-12;
/// Longest generator word used by [`sample_orbit`].
pub const MAX_WORD_LEN: usize = 8;

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "expected a square matrix, got {} rows of lengths {:?}",
                n,
                rows.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Format("non-finite matrix entry".into()));
        }
        Ok(Self { n, data: rows.concat() })
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matmul dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.n, v.len(), "apply dimension mismatch");
        self.data
            .chunks(self.n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `selfᵗ v`
    pub fn apply_transpose(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.n, v.len(), "apply dimension mismatch");
        let mut out = vec![0.0; self.n];
        for (i, &vi) in v.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(&self.data[i * self.n..(i + 1) * self.n]) {
                *o += a * vi;
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
                .unwrap();
            if a[p * n + k] == 0.0 {
                return 0.0;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let piv = a[k * n + k];
            det *= piv;
            for i in k + 1..n {
                let f = a[i * n + k] / piv;
                for j in k..n {
                    a[i * n + j] -= f * a[k * n + j];
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
                .unwrap();
            if a[p * n + k].abs() < 1e-300 {
                return Err(Error::Degenerate(0.0));
            }
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
                inv.swap(k * n + j, p * n + j);
            }
            let piv = a[k * n + k];
            for j in 0..n {
                a[k * n + j] /= piv;
                inv[k * n + j] /= piv;
            }
            for i in 0..n {
                if i != k {
                    let f = a[i * n + k];
                    if f != 0.0 {
                        for j in 0..n {
                            a[i * n + j] -= f * a[k * n + j];
                            inv[i * n + j] -= f * inv[k * n + j];
                        }
                    }
                }
            }
        }
        Ok(Self { n, data: inv })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// The underlying vector space V together with its metric signature.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpacetimeRepr", into = "SpacetimeRepr")]
pub struct Spacetime {
    dim: usize,
    metric: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpacetimeRepr {
    dim: usize,
    #[serde(default)]
    metric: Option<Vec<f64>>,
}

impl TryFrom<SpacetimeRepr> for Spacetime {
    type Error = Error;
    fn try_from(r: SpacetimeRepr) -> Result<Self> {
        match r.metric {
            Some(m) => Spacetime::new(r.dim, m),
            None => Spacetime::minkowski(r.dim),
        }
    }
}

impl From<Spacetime> for SpacetimeRepr {
    fn from(s: Spacetime) -> Self {
        Self { dim: s.dim, metric: Some(s.metric) }
    }
}

impl Default for Spacetime {
    fn default() -> Self {
        Self::minkowski(4).expect("d = 4 is valid")
    }
}

impl Spacetime {
    pub fn new(dim: usize, metric: Vec<f64>) -> Result<Self> {
        if dim < 2 || dim % 2 != 0 {
            return Err(Error::Dimension(format!(
                "spacetime dimension must be even and ≥ 2, got {dim}"
            )));
        }
        if metric.len() != dim {
            return Err(Error::Dimension(format!(
                "metric has {} entries for dimension {dim}",
                metric.len()
            )));
        }
        if metric.iter().any(|&s| s != 1.0 && s != -1.0) {
            return Err(Error::Dimension(format!("metric entries must be ±1, got {metric:?}")));
        }
        Ok(Self { dim, metric })
    }

    /// Signature (+, −, …, −).
    pub fn minkowski(dim: usize) -> Result<Self> {
        let mut metric = vec![-1.0; dim];
        if let Some(first) = metric.first_mut() {
            *first = 1.0;
        }
        Self::new(dim, metric)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> &[f64] {
        &self.metric
    }

    pub fn eta(&self) -> Matrix {
        Matrix::diag(&self.metric)
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.dim {
            return Err(Error::Index { index, dim: self.dim });
        }
        Ok(())
    }
}

/// Element of the Lorentz group of a [`Spacetime`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct LorentzTransform {
    matrix: Matrix,
}

impl TryFrom<Vec<Vec<f64>>> for LorentzTransform {
    type Error = Error;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Ok(Self { matrix: Matrix::from_rows(&rows)? })
    }
}

impl From<LorentzTransform> for Vec<Vec<f64>> {
    fn from(t: LorentzTransform) -> Self {
        t.matrix.to_rows()
    }
}

impl LorentzTransform {
    /// Wraps `matrix` after checking TᵗηT = η. The tolerance scales with
    /// ‖T‖²_max so that strongly boosted products are not rejected for
    /// rounding alone.
    pub fn new(st: &Spacetime, matrix: Matrix) -> Result<Self> {
        if matrix.dim() != st.dim() {
            return Err(Error::Dimension(format!(
                "transform is {}×{}, spacetime has dimension {}",
                matrix.dim(),
                matrix.dim(),
                st.dim()
            )));
        }
        let t = Self { matrix };
        let defect = t.metric_defect(st);
        let scale = t.matrix.max_abs().powi(2).max(1.0);
        if defect > LORENTZ_TOL * scale {
            return Err(Error::NotLorentz(defect));
        }
        Ok(t)
    }

    pub fn identity(st: &Spacetime) -> Self {
        Self { matrix: Matrix::identity(st.dim()) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// max |TᵗηT − η|
    pub fn metric_defect(&self, st: &Spacetime) -> f64 {
        let eta = st.eta();
        self.matrix.transpose().matmul(&eta).matmul(&self.matrix).max_abs_diff(&eta)
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { matrix: self.matrix.matmul(&other.matrix) }
    }

    /// T⁻¹ = η⁻¹ Tᵗ η, exact up to rounding for metric-preserving T.
    pub fn inverse(&self, st: &Spacetime) -> Self {
        let eta = st.eta();
        Self { matrix: eta.matmul(&self.matrix.transpose()).matmul(&eta) }
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        Vector(self.matrix.apply(&x.0))
    }

    /// Dual action on covectors: α ↦ Tᵗα.
    pub fn pullback(&self, alpha: &Covector) -> Covector {
        Covector(self.matrix.apply_transpose(&alpha.0))
    }

    /// Operator norm bound used for bounded samples (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        self.matrix
            .as_slice()
            .chunks(self.dim())
            .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// A skew-symmetric d×d matrix, read as an operator V′ → V.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct SkewForm {
    matrix: Matrix,
}

impl TryFrom<Vec<Vec<f64>>> for SkewForm {
    type Error = Error;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        SkewForm::new(Matrix::from_rows(&rows)?)
    }
}

impl From<SkewForm> for Vec<Vec<f64>> {
    fn from(s: SkewForm) -> Self {
        s.matrix.to_rows()
    }
}

impl SkewForm {
    /// Requires σᵗ = −σ exactly.
    pub fn new(matrix: Matrix) -> Result<Self> {
        let defect = matrix.transpose().scale(-1.0).max_abs_diff(&matrix);
        if defect != 0.0 {
            return Err(Error::NotSkew(defect));
        }
        Ok(Self { matrix })
    }

    /// ½(M − Mᵗ), which is skew to the last bit.
    pub fn antisymmetrized(m: &Matrix) -> Self {
        let n = m.dim();
        let mut s = Matrix::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                let v = 0.5 * (m[(i, j)] - m[(j, i)]);
                s[(i, j)] = v;
                s[(j, i)] = -v;
            }
        }
        Self { matrix: s }
    }

    pub fn zero(dim: usize) -> Self {
        Self { matrix: Matrix::zeros(dim) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn det(&self) -> f64 {
        self.matrix.det()
    }

    pub fn is_invertible(&self) -> bool {
        self.det().abs() > DEGENERATE_TOL
    }

    /// Fails unless the form can serve as a deformation datum.
    pub fn require_invertible(&self) -> Result<&Self> {
        let det = self.det();
        if det.abs() <= DEGENERATE_TOL {
            return Err(Error::Degenerate(det.abs()));
        }
        Ok(self)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { matrix: self.matrix.scale(s) }
    }

    /// σα ∈ V.
    pub fn apply(&self, alpha: &Covector) -> Vector {
        Vector(self.matrix.apply(&alpha.0))
    }

    pub fn pfaffian(&self) -> f64 {
        pfaffian(&self.matrix)
    }
}

/// Element of V′.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Covector(pub Vec<f64>);

/// Element of V.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vector(pub Vec<f64>);

impl Covector {
    pub fn zero(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// α(v)
    pub fn pair(&self, v: &Vector) -> f64 {
        assert_eq!(self.0.len(), v.0.len(), "pairing dimension mismatch");
        self.0.iter().zip(&v.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.iter().map(|a| a * s).collect())
    }
}

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.iter().map(|a| a * s).collect())
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|a| a * a).sum::<f64>().sqrt()
    }
}

/// Block-diagonal form with d/2 blocks [[0, 1], [−1, 0]].
///
/// This pins σ₀ = e₀∧e₁ + e₂∧e₃ + …; any other invertible skew form can be
/// supplied in its place wherever a base form is taken as an argument.
pub fn standard_skew(st: &Spacetime) -> Result<SkewForm> {
    standard_skew_dim(st.dim())
}

pub fn standard_skew_dim(dim: usize) -> Result<SkewForm> {
    if dim < 2 || dim % 2 != 0 {
        return Err(Error::Dimension(format!("no invertible skew form in dimension {dim}")));
    }
    let mut m = Matrix::zeros(dim);
    for b in (0..dim).step_by(2) {
        m[(b, b + 1)] = 1.0;
        m[(b + 1, b)] = -1.0;
    }
    SkewForm::new(m)
}

/// σ ↦ TσTᵗ, re-skewed so the stored result is exactly antisymmetric.
pub fn act_on_form(t: &LorentzTransform, sigma: &SkewForm) -> Result<SkewForm> {
    if t.dim() != sigma.dim() {
        return Err(Error::Dimension(format!(
            "transform has dimension {}, form has dimension {}",
            t.dim(),
            sigma.dim()
        )));
    }
    let m = t.matrix.matmul(&sigma.matrix).matmul(&t.matrix.transpose());
    Ok(SkewForm::antisymmetrized(&m))
}

/// Hyperbolic rotation in the (0, axis) plane.
pub fn make_boost(st: &Spacetime, axis: usize, rapidity: f64) -> Result<LorentzTransform> {
    plane_transform(st, 0, axis, rapidity)
}

/// Euclidean rotation in the (i, j) plane; both axes must share a metric sign.
pub fn make_rotation(st: &Spacetime, plane: (usize, usize), angle: f64) -> Result<LorentzTransform> {
    let (i, j) = plane;
    st.check_index(i)?;
    st.check_index(j)?;
    if i == j || st.metric[i] != st.metric[j] {
        return Err(Error::Signature(i, j));
    }
    plane_transform(st, i, j, angle)
}

/// Rotation or boost in the (i, j) plane depending on the relative sign of
/// the metric there.
fn plane_transform(st: &Spacetime, i: usize, j: usize, param: f64) -> Result<LorentzTransform> {
    st.check_index(i)?;
    st.check_index(j)?;
    if i == j {
        return Err(Error::Signature(i, j));
    }
    let mut m = Matrix::identity(st.dim());
    if st.metric[i] == st.metric[j] {
        let (s, c) = param.sin_cos();
        m[(i, i)] = c;
        m[(i, j)] = -s;
        m[(j, i)] = s;
        m[(j, j)] = c;
    } else {
        let (c, s) = (param.cosh(), param.sinh());
        m[(i, i)] = c;
        m[(i, j)] = s;
        m[(j, i)] = s;
        m[(j, j)] = c;
    }
    Ok(LorentzTransform { matrix: m })
}

/// diag(1, −1, …, −1)
pub fn parity(st: &Spacetime) -> LorentzTransform {
    let mut d = vec![-1.0; st.dim()];
    d[0] = 1.0;
    LorentzTransform { matrix: Matrix::diag(&d) }
}

/// diag(−1, 1, …, 1)
pub fn time_reversal(st: &Spacetime) -> LorentzTransform {
    let mut d = vec![1.0; st.dim()];
    d[0] = -1.0;
    LorentzTransform { matrix: Matrix::diag(&d) }
}

/// One-parameter or discrete generator family of the Lorentz group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Plane (i, j) with opposite metric signs; rapidity drawn from [−1, 1].
    Boost(usize, usize),
    /// Plane (i, j) with equal metric signs; angle drawn from [0, 2π).
    Rotation(usize, usize),
    Parity,
    TimeReversal,
    /// −1, which lies in every stabilizer of a skew form.
    Inversion,
}

impl Generator {
    pub fn families(st: &Spacetime) -> Vec<Generator> {
        let mut out = Vec::new();
        for i in 0..st.dim() {
            for j in i + 1..st.dim() {
                if st.metric[i] == st.metric[j] {
                    out.push(Generator::Rotation(i, j));
                } else {
                    out.push(Generator::Boost(i, j));
                }
            }
        }
        out.push(Generator::Parity);
        out.push(Generator::TimeReversal);
        out
    }

    fn draw(&self, st: &Spacetime, rng: &mut impl Rng) -> LorentzTransform {
        match *self {
            Generator::Boost(i, j) => plane_transform(st, i, j, rng.random_range(-1.0..=1.0)),
            Generator::Rotation(i, j) => plane_transform(st, i, j, rng.random_range(0.0..TAU)),
            Generator::Parity => Ok(parity(st)),
            Generator::TimeReversal => Ok(time_reversal(st)),
            Generator::Inversion => Ok(LorentzTransform { matrix: Matrix::identity(st.dim()).scale(-1.0) }),
        }
        .expect("generator families only reference valid planes")
    }

    /// Representative element, used to test family-wide properties.
    fn representative(&self, st: &Spacetime) -> LorentzTransform {
        match *self {
            Generator::Boost(i, j) | Generator::Rotation(i, j) => {
                plane_transform(st, i, j, 0.731).expect("valid plane")
            }
            Generator::Parity => parity(st),
            Generator::TimeReversal => time_reversal(st),
            Generator::Inversion => LorentzTransform { matrix: Matrix::identity(st.dim()).scale(-1.0) },
        }
    }
}

fn random_word(st: &Spacetime, families: &[Generator], rng: &mut impl Rng) -> LorentzTransform {
    let len = rng.random_range(1..=MAX_WORD_LEN);
    let mut t = LorentzTransform::identity(st);
    for _ in 0..len {
        let g = families[rng.random_range(0..families.len())];
        t = t.compose(&g.draw(st, rng));
    }
    t
}

/// `n` seeded orbit points (T, Tσ₀Tᵗ) from random generator words of length
/// at most [`MAX_WORD_LEN`].
pub fn sample_orbit(
    st: &Spacetime,
    sigma0: &SkewForm,
    n: usize,
    seed: u64,
) -> Result<Vec<(LorentzTransform, SkewForm)>> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let families = Generator::families(st);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let t = random_word(st, &families, &mut rng);
            let s = act_on_form(&t, sigma0)?;
            Ok((t, s))
        })
        .collect()
}

/// Random words in the generator families that fix σ (within `tol`).
/// Returns an empty list when only the identity qualifies.
pub fn sample_stabilizer(
    st: &Spacetime,
    sigma: &SkewForm,
    n: usize,
    seed: u64,
    tol: f64,
) -> Vec<LorentzTransform> {
    let mut families: Vec<Generator> = Generator::families(st)
        .into_iter()
        .filter(|g| in_stabilizer(&g.representative(st), sigma, tol))
        .collect();
    families.push(Generator::Inversion);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_word(st, &families, &mut rng)).collect()
}

/// Q_αβ(σ) = β(σα) = βᵗσα.
pub fn q_form(sigma: &SkewForm, alpha: &Covector, beta: &Covector) -> f64 {
    let n = sigma.dim();
    assert!(alpha.dim() == n && beta.dim() == n, "q_form dimension mismatch");
    let m = sigma.matrix.as_slice();
    let mut acc = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += m[i * n + j] * alpha.0[j];
        }
        acc += beta.0[i] * row;
    }
    acc
}

/// (tr((ησ)²), tr((ησ)⁴), …, tr((ησ)^d), Pf(σ)²), each constant on the
/// orbit of σ. Odd powers are omitted since their traces vanish identically.
pub fn orbit_invariants(st: &Spacetime, sigma: &SkewForm) -> Vec<f64> {
    let m = st.eta().matmul(&sigma.matrix);
    let m2 = m.matmul(&m);
    let mut out = Vec::with_capacity(st.dim() / 2 + 1);
    let mut p = m2.clone();
    for k in 1..=st.dim() / 2 {
        if k > 1 {
            p = p.matmul(&m2);
        }
        out.push(p.trace());
    }
    let pf = sigma.pfaffian();
    out.push(pf * pf);
    out
}

/// Whether |SσSᵗ − σ|_max ≤ tol.
pub fn in_stabilizer(s: &LorentzTransform, sigma: &SkewForm, tol: f64) -> bool {
    let moved = s.matrix.matmul(&sigma.matrix).matmul(&s.matrix.transpose());
    moved.max_abs_diff(&sigma.matrix) <= tol
}

/// Pfaffian by skew-congruent elimination with pivoting.
fn pfaffian(m: &Matrix) -> f64 {
    let n = m.dim();
    if n % 2 == 1 {
        return 0.0;
    }
    let mut a = m.clone();
    let mut pf = 1.0;
    for k in (0..n).step_by(2) {
        let kp = (k + 1..n)
            .max_by(|&i, &j| a[(k, i)].abs().total_cmp(&a[(k, j)].abs()))
            .expect("k + 1 < n for even n");
        if kp != k + 1 {
            for c in 0..n {
                let tmp = a[(k + 1, c)];
                a[(k + 1, c)] = a[(kp, c)];
                a[(kp, c)] = tmp;
            }
            for r in 0..n {
                let tmp = a[(r, k + 1)];
                a[(r, k + 1)] = a[(r, kp)];
                a[(r, kp)] = tmp;
            }
            pf = -pf;
        }
        let piv = a[(k, k + 1)];
        if piv == 0.0 {
            return 0.0;
        }
        pf *= piv;
        let c: Vec<f64> = (0..n).map(|i| if i >= k + 2 { a[(k, i)] / piv } else { 0.0 }).collect();
        for i in k + 2..n {
            for j in k + 2..n {
                let upd = -c[i] * a[(k + 1, j)] + c[j] * a[(k + 1, i)];
                a[(i, j)] += upd;
            }
        }
    }
    pf
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn st4() -> Spacetime {
        Spacetime::default()
    }

    #[test]
    fn standard_skew_shapes() {
        let s2 = standard_skew_dim(2).unwrap();
        assert_eq!(s2.matrix().to_rows(), vec![vec![0.0, 1.0], vec![-1.0, 0.0]]);
        let s4 = standard_skew(&st4()).unwrap();
        assert_eq!(
            s4.matrix().to_rows(),
            vec![
                vec![0.0, 1.0, 0.0, 0.0],
                vec![-1.0, 0.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, 1.0],
                vec![0.0, 0.0, -1.0, 0.0],
            ]
        );
        assert!(s4.require_invertible().is_ok());
        assert!(matches!(standard_skew_dim(3), Err(Error::Dimension(_))));
        assert!(Spacetime::minkowski(3).is_err());
    }

    #[test]
    fn skew_form_rejects_non_skew() {
        let m = Matrix::from_rows(&[vec![0.0, 1.0], vec![-0.5, 0.0]]).unwrap();
        assert!(matches!(SkewForm::new(m), Err(Error::NotSkew(_))));
        assert!(SkewForm::zero(2).require_invertible().is_err());
    }

    #[test]
    fn act_on_form_identity_and_inverse() {
        let st = st4();
        let s0 = standard_skew(&st).unwrap();
        let id = LorentzTransform::identity(&st);
        assert_eq!(act_on_form(&id, &s0).unwrap(), s0);

        let t = make_boost(&st, 2, 0.4)
            .unwrap()
            .compose(&make_rotation(&st, (1, 3), 1.1).unwrap());
        let there = act_on_form(&t.inverse(&st), &s0).unwrap();
        let back = act_on_form(&t, &there).unwrap();
        assert!(back.matrix().max_abs_diff(s0.matrix()) <= 1e-10);
    }

    #[test]
    fn boost_preserves_invariants() {
        let st = st4();
        let s0 = standard_skew(&st).unwrap();
        let b = make_boost(&st, 1, 0.5).unwrap();
        let moved = act_on_form(&b, &s0).unwrap();
        for (a, c) in orbit_invariants(&st, &moved).iter().zip(orbit_invariants(&st, &s0)) {
            assert_abs_diff_eq!(*a, c, epsilon = 1e-9);
        }
    }

    #[test]
    fn generators_group_laws() {
        let st = st4();
        assert_eq!(make_boost(&st, 1, 0.0).unwrap(), LorentzTransform::identity(&st));
        let r = make_rotation(&st, (1, 2), PI / 2.0).unwrap();
        let r2 = make_rotation(&st, (1, 2), PI).unwrap();
        assert!(r.compose(&r).matrix().max_abs_diff(r2.matrix()) <= 1e-12);
        let b = make_boost(&st, 1, 0.3).unwrap().compose(&make_boost(&st, 1, 0.4).unwrap());
        assert!(b.matrix().max_abs_diff(make_boost(&st, 1, 0.7).unwrap().matrix()) <= 1e-12);
        for t in [r, b, parity(&st), time_reversal(&st)] {
            assert!(t.metric_defect(&st) <= LORENTZ_TOL);
        }
    }

    #[test]
    fn generator_index_errors() {
        let st = st4();
        assert!(matches!(make_boost(&st, 4, 0.1), Err(Error::Index { .. })));
        assert!(matches!(make_boost(&st, 0, 0.1), Err(Error::Signature(0, 0))));
        assert!(matches!(make_rotation(&st, (0, 1), 0.1), Err(Error::Signature(0, 1))));
        assert!(matches!(make_rotation(&st, (2, 2), 0.1), Err(Error::Signature(2, 2))));
    }

    #[test]
    fn orbit_sampling_is_deterministic() {
        let st = st4();
        let s0 = standard_skew(&st).unwrap();
        let a = sample_orbit(&st, &s0, 5, 42).unwrap();
        let b = sample_orbit(&st, &s0, 5, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_orbit(&st, &s0, 5, 43).unwrap());
        let one = sample_orbit(&st, &s0, 1, 7).unwrap();
        assert!(one[0].1.require_invertible().is_ok());
        assert!(sample_orbit(&st, &s0, 0, 7).is_err());
    }

    #[test]
    fn q_form_hand_values() {
        let s = standard_skew_dim(2).unwrap();
        let a = Covector(vec![1.0, 0.0]);
        let b = Covector(vec![0.0, 1.0]);
        // σα = (0, −1), β·(0, −1) = −1
        assert_eq!(s.apply(&a), Vector(vec![0.0, -1.0]));
        assert_eq!(q_form(&s, &a, &b), -1.0);
        assert_eq!(q_form(&s, &b, &a), 1.0);
        assert_eq!(q_form(&s, &a, &a), 0.0);
    }

    #[test]
    fn pfaffian_matches_determinant() {
        let st = st4();
        let s0 = standard_skew(&st).unwrap();
        assert_eq!(s0.pfaffian(), 1.0);
        let rows = vec![
            vec![0.0, 0.3, -1.2, 0.7, 0.1, 2.0],
            vec![-0.3, 0.0, 0.5, -0.9, 1.4, 0.2],
            vec![1.2, -0.5, 0.0, 0.8, -0.6, 1.1],
            vec![-0.7, 0.9, -0.8, 0.0, 0.4, -0.3],
            vec![-0.1, -1.4, 0.6, -0.4, 0.0, 0.9],
            vec![-2.0, -0.2, -1.1, 0.3, -0.9, 0.0],
        ];
        let s = SkewForm::try_from(rows).unwrap();
        let pf = s.pfaffian();
        assert!((pf * pf - s.det()).abs() <= 1e-12 * s.det().abs().max(1.0));
        // Pf of a 4×4: a01 a23 − a02 a13 + a03 a12
        let m = s0.matrix().clone();
        let mut m4 = m.clone();
        m4[(0, 2)] = 0.5;
        m4[(2, 0)] = -0.5;
        m4[(1, 3)] = 0.25;
        m4[(3, 1)] = -0.25;
        let s4 = SkewForm::new(m4).unwrap();
        assert_abs_diff_eq!(s4.pfaffian(), 1.0 - 0.5 * 0.25, epsilon = 1e-15);
    }

    #[test]
    fn invariants_detect_scaling() {
        let st = st4();
        let s0 = standard_skew(&st).unwrap();
        let a = orbit_invariants(&st, &s0);
        let b = orbit_invariants(&st, &s0.scaled(2.0));
        assert_eq!(a.len(), 3);
        assert_eq!(a[2], 1.0);
        assert_ne!(a, b);
    }

    #[test]
    fn stabilizer_membership() {
        let st = st4();
        let s0 = standard_skew(&st).unwrap();
        assert!(in_stabilizer(&LorentzTransform::identity(&st), &s0, 1e-12));
        // Both act inside one symplectic block of σ₀.
        assert!(in_stabilizer(&make_rotation(&st, (2, 3), 0.8).unwrap(), &s0, 1e-12));
        assert!(in_stabilizer(&make_boost(&st, 1, 0.5).unwrap(), &s0, 1e-12));
        // These mix the blocks.
        assert!(!in_stabilizer(&make_rotation(&st, (1, 2), 0.8).unwrap(), &s0, 1e-12));
        assert!(!in_stabilizer(&make_boost(&st, 2, 0.5).unwrap(), &s0, 1e-12));
        for s in sample_stabilizer(&st, &s0, 20, 3, 1e-12) {
            assert!(in_stabilizer(&s, &s0, 1e-10));
        }
    }

    #[test]
    fn serde_row_major() {
        let s0 = standard_skew_dim(2).unwrap();
        let json = serde_json::to_string(&s0).unwrap();
        assert_eq!(json, "[[0.0,1.0],[-1.0,0.0]]");
        let back: SkewForm = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s0);
        assert!(serde_json::from_str::<SkewForm>("[[0.0,1.0],[1.0,0.0]]").is_err());
        let st: Spacetime = serde_json::from_str(r#"{"dim": 2}"#).unwrap();
        assert_eq!(st.metric(), &[1.0, -1.0]);
    }
}

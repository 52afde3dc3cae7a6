//! Fibered functions over a finite sample E of the Lorentz group, the actions
//! τ, γ and ρ^α, and the maps Φ^α and R^E between them.
//!
//! Actions are pullbacks: `(τ_x F)(T, q) = F(T, q − Tx)`,
//! `(γ_S F)(T, q) = F(TS⁻¹, q)` and `(ρ^α_x ψ)(T, r) = ψ(T, r − α(Tx))`.
//! With these, `Φ^α ρ^α_x = τ_x Φ^α` and `τ_x γ_S = γ_S τ_{Sx}` hold exactly.

pub mod bundle;
pub mod checks;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{act_on_form, Covector, LorentzTransform, SkewForm, Spacetime, Vector};
use crate::star_numeric::{star_product, translate, GridFunction, GridSpec};

/// Relative tolerance for matching transforms and forms against a sample.
pub const MATCH_TOL: f64 = 1e-9;

/// Finite sample E of the Lorentz group, optionally with a declared norm bound.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSample {
    spacetime: Spacetime,
    transforms: Vec<LorentzTransform>,
    bound: Option<f64>,
}

impl GroupSample {
    pub fn new(spacetime: &Spacetime, transforms: Vec<LorentzTransform>, bound: Option<f64>) -> Result<Self> {
        if transforms.is_empty() {
            return Err(Error::Empty);
        }
        for t in &transforms {
            if t.dim() != spacetime.dim() {
                return Err(Error::Dimension(format!(
                    "{}-d transform in a {}-d sample",
                    t.dim(),
                    spacetime.dim()
                )));
            }
            if let Some(b) = bound {
                if t.norm_inf() > b {
                    return Err(Error::Unbounded { norm: t.norm_inf(), bound: b });
                }
            }
        }
        Ok(Self { spacetime: spacetime.clone(), transforms, bound })
    }

    pub fn spacetime(&self) -> &Spacetime {
        &self.spacetime
    }

    pub fn transforms(&self) -> &[LorentzTransform] {
        &self.transforms
    }

    pub fn len(&self) -> usize {
        self.transforms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transforms.is_empty()
    }

    pub fn bounded(&self) -> bool {
        self.bound.is_some()
    }

    pub fn bound(&self) -> Option<f64> {
        self.bound
    }

    /// Largest `‖T‖_∞` over the sample.
    pub fn max_norm(&self) -> f64 {
        self.transforms.iter().map(LorentzTransform::norm_inf).fold(0.0, f64::max)
    }

    /// Index of the sample element equal to `t` within [`MATCH_TOL`].
    pub fn position(&self, t: &LorentzTransform) -> Option<usize> {
        self.transforms.iter().position(|s| {
            let scale = s.matrix().max_abs().max(1.0);
            s.matrix().max_abs_diff(t.matrix()) <= MATCH_TOL * scale
        })
    }

    /// The right translate `E·S`, in the same order.
    pub fn right_translate(&self, s: &LorentzTransform) -> Self {
        let transforms = self.transforms.iter().map(|t| t.compose(s)).collect();
        Self { spacetime: self.spacetime.clone(), transforms, bound: None }
    }
}

/// One grid function per sample element, all on the same lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberedFunction {
    sample: GroupSample,
    fibers: Vec<GridFunction>,
}

impl FiberedFunction {
    pub fn new(sample: GroupSample, fibers: Vec<GridFunction>) -> Result<Self> {
        if fibers.len() != sample.len() {
            return Err(Error::Dimension(format!(
                "{} fibers for {} transforms",
                fibers.len(),
                sample.len()
            )));
        }
        let spec = fibers[0].spec();
        if spec.dim != sample.spacetime.dim() {
            return Err(Error::Dimension(format!(
                "{}-d fibers over a {}-d spacetime",
                spec.dim,
                sample.spacetime.dim()
            )));
        }
        for f in &fibers[1..] {
            spec.require_same(f.spec())?;
        }
        Ok(Self { sample, fibers })
    }

    pub fn from_fn(sample: &GroupSample, f: impl Fn(&LorentzTransform) -> GridFunction) -> Result<Self> {
        Self::new(sample.clone(), sample.transforms.iter().map(f).collect())
    }

    pub fn sample(&self) -> &GroupSample {
        &self.sample
    }

    pub fn fibers(&self) -> &[GridFunction] {
        &self.fibers
    }

    pub fn spec(&self) -> &GridSpec {
        self.fibers[0].spec()
    }

    /// Largest pointwise difference over all fibers; samples must agree.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.require_same_sample(other)?;
        self.fibers
            .iter()
            .zip(&other.fibers)
            .map(|(a, b)| a.max_abs_diff(b))
            .try_fold(0.0f64, |m, d| Ok(m.max(d?)))
    }

    fn require_same_sample(&self, other: &Self) -> Result<()> {
        if self.sample.len() != other.sample.len()
            || self
                .sample
                .transforms
                .iter()
                .zip(&other.sample.transforms)
                .any(|(a, b)| a.matrix().max_abs_diff(b.matrix()) > MATCH_TOL * a.matrix().max_abs().max(1.0))
        {
            return Err(Error::SpecMismatch("fibered functions live over different samples".into()));
        }
        Ok(())
    }

    fn map_fibers(&self, f: impl Fn(&LorentzTransform, &GridFunction) -> Result<GridFunction>) -> Result<Self> {
        let fibers = self
            .sample
            .transforms
            .iter()
            .zip(&self.fibers)
            .map(|(t, g)| f(t, g))
            .collect::<Result<_>>()?;
        Ok(Self { sample: self.sample.clone(), fibers })
    }
}

/// ψ(T, r): a 1-D periodic grid function per sample element.
#[derive(Clone, Debug, PartialEq)]
pub struct RealLineFunction {
    fibers: Vec<GridFunction>,
}

impl RealLineFunction {
    pub fn new(fibers: Vec<GridFunction>) -> Result<Self> {
        let first = fibers.first().ok_or(Error::Empty)?;
        if first.spec().dim != 1 {
            return Err(Error::Dimension("real-line fibers must be one-dimensional".into()));
        }
        for f in &fibers[1..] {
            first.spec().require_same(f.spec())?;
        }
        Ok(Self { fibers })
    }

    /// The same ψ on every one of `count` fibers.
    pub fn uniform(psi: &GridFunction, count: usize) -> Result<Self> {
        Self::new(vec![psi.clone(); count])
    }

    pub fn fibers(&self) -> &[GridFunction] {
        &self.fibers
    }

    pub fn spec(&self) -> &GridSpec {
        self.fibers[0].spec()
    }

    pub fn pointwise(&self, other: &Self) -> Result<Self> {
        if self.fibers.len() != other.fibers.len() {
            return Err(Error::Dimension("fiber counts differ".into()));
        }
        Self::new(
            self.fibers.iter().zip(&other.fibers).map(|(a, b)| a.pointwise(b)).collect::<Result<_>>()?,
        )
    }

    fn check_sample(&self, sample: &GroupSample) -> Result<()> {
        if self.fibers.len() != sample.len() {
            return Err(Error::Dimension(format!(
                "{} real-line fibers for {} transforms",
                self.fibers.len(),
                sample.len()
            )));
        }
        Ok(())
    }
}

fn neg_shift(t: &LorentzTransform, x: &Vector) -> Vec<f64> {
    t.apply(x).0.into_iter().map(|v| -v).collect()
}

/// `(τ_x F)(T, q) = F(T, q − Tx)`.
pub fn tau_act(x: &Vector, f: &FiberedFunction) -> Result<FiberedFunction> {
    if x.dim() != f.spec().dim {
        return Err(Error::Dimension(format!("vector of length {}", x.dim())));
    }
    f.map_fibers(|t, g| translate(g, &neg_shift(t, x)))
}

/// `(γ_S F)(TS, q) = F(T, q)`: the output lives over the right translate `E·S`.
pub fn gamma_act(s: &LorentzTransform, f: &FiberedFunction) -> Result<FiberedFunction> {
    if s.dim() != f.sample.spacetime.dim() {
        return Err(Error::Dimension(format!("{}-d transform", s.dim())));
    }
    Ok(FiberedFunction { sample: f.sample.right_translate(s), fibers: f.fibers.clone() })
}

/// [`gamma_act`] realigned onto the original sample; requires `E·S = E`.
pub fn gamma_act_closed(s: &LorentzTransform, f: &FiberedFunction) -> Result<FiberedFunction> {
    let moved = gamma_act(s, f)?;
    let fibers = f
        .sample
        .transforms
        .iter()
        .map(|t| {
            moved.sample.position(t).map(|i| moved.fibers[i].clone()).ok_or(Error::NotClosed)
        })
        .collect::<Result<_>>()?;
    Ok(FiberedFunction { sample: f.sample.clone(), fibers })
}

/// `(ρ^α_x ψ)(T, r) = ψ(T, r − α(Tx))`.
pub fn rho_act(
    alpha: &Covector,
    x: &Vector,
    psi: &RealLineFunction,
    sample: &GroupSample,
) -> Result<RealLineFunction> {
    psi.check_sample(sample)?;
    let fibers = sample
        .transforms
        .iter()
        .zip(&psi.fibers)
        .map(|(t, g)| translate(g, &[-alpha.pair(&t.apply(x))]))
        .collect::<Result<_>>()?;
    RealLineFunction::new(fibers)
}

/// Integer coordinates of `α`, or an error if it does not map the lattice to itself.
fn integer_covector(alpha: &Covector) -> Result<Vec<i64>> {
    if alpha.0.iter().any(|a| (a - a.round()).abs() > 1e-12) {
        return Err(Error::IncommensurateCovector(alpha.0.clone()));
    }
    Ok(alpha.0.iter().map(|a| a.round() as i64).collect())
}

/// `(Φ^α ψ)(T, q) = ψ(T, α(q))`.
///
/// Integer `α` sends lattice points to lattice points of the 1-D grid, so the
/// spectral interpolant is read off exactly.
pub fn phi_alpha(alpha: &Covector, psi: &RealLineFunction, sample: &GroupSample) -> Result<FiberedFunction> {
    psi.check_sample(sample)?;
    let a = integer_covector(alpha)?;
    let dim = sample.spacetime.dim();
    if a.len() != dim {
        return Err(Error::Dimension(format!("covector of length {} in dimension {dim}", a.len())));
    }
    let line = psi.spec();
    let spec = GridSpec::new(dim, line.n, line.length, line.theta)?;
    let n = line.n as i64;
    let offset = (n / 2) * (1 - a.iter().sum::<i64>());
    let index: Vec<usize> = (0..spec.total())
        .map(|flat| {
            let s: i64 = spec.multi_index(flat).iter().zip(&a).map(|(&i, &ai)| i as i64 * ai).sum();
            (s + offset).rem_euclid(n) as usize
        })
        .collect();
    let fibers = psi
        .fibers
        .iter()
        .map(|g| GridFunction::new(spec.clone(), index.iter().map(|&j| g.values()[j]).collect()))
        .collect::<Result<_>>()?;
    FiberedFunction::new(sample.clone(), fibers)
}

/// `R^E`: keep the fibers at the given indices.
pub fn restrict_to_e(f: &FiberedFunction, subset: &[usize]) -> Result<FiberedFunction> {
    if subset.is_empty() {
        return Err(Error::Empty);
    }
    let n = f.sample.len();
    if let Some(&bad) = subset.iter().find(|&&i| i >= n) {
        return Err(Error::Index { index: bad, dim: n });
    }
    let transforms = subset.iter().map(|&i| f.sample.transforms[i].clone()).collect();
    let sample = GroupSample::new(&f.sample.spacetime, transforms, f.sample.bound)?;
    FiberedFunction::new(sample, subset.iter().map(|&i| f.fibers[i].clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModulusRow {
    pub x_norm: f64,
    /// `sup_{T, r} |φ(r − α(Tx)) − φ(r)|` over the sampled `T` and `r`.
    pub modulus: f64,
    /// `sup_T ‖Tᵗα‖ · |x|`; times Lip(φ) this bounds the modulus.
    pub reach: f64,
}

/// Modulus of continuity of `x ↦ ρ^α_x φ` in the sup norm over `E × r-grid`.
pub fn modulus_of_continuity(
    alpha: &Covector,
    phi: &dyn Fn(f64) -> f64,
    sample: &GroupSample,
    xs: &[Vector],
    rs: &[f64],
) -> Vec<ModulusRow> {
    let sup_pull = sample
        .transforms
        .iter()
        .map(|t| t.pullback(alpha).0.iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    xs.iter()
        .map(|x| {
            let mut m = 0.0f64;
            for t in &sample.transforms {
                let shift = alpha.pair(&t.apply(x));
                for &r in rs {
                    m = m.max((phi(r - shift) - phi(r)).abs());
                }
            }
            ModulusRow { x_norm: x.norm(), modulus: m, reach: sup_pull * x.norm() }
        })
        .collect()
}

/// Fiberwise deformed product, fiber `T` using `σ_T = Tσ₀Tᵗ`.
pub fn fibered_star_product(f: &FiberedFunction, g: &FiberedFunction, sigma0: &SkewForm) -> Result<FiberedFunction> {
    f.require_same_sample(g)?;
    f.spec().require_same(g.spec())?;
    let fibers = f
        .sample
        .transforms
        .iter()
        .zip(f.fibers.iter().zip(&g.fibers))
        .map(|(t, (a, b))| star_product(a, b, &act_on_form(t, sigma0)?))
        .collect::<Result<_>>()?;
    Ok(FiberedFunction { sample: f.sample.clone(), fibers })
}

/// Finite table of functions indexed by points of an orbit in the space of skew forms.
#[derive(Clone, Debug, Default)]
pub struct OrbitTable {
    entries: Vec<(SkewForm, GridFunction)>,
}

impl OrbitTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, sigma: SkewForm, f: GridFunction) {
        if self.lookup(&sigma).is_err() {
            self.entries.push((sigma, f));
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, sigma: &SkewForm) -> Result<&GridFunction> {
        self.entries
            .iter()
            .find(|(s, _)| {
                let scale = s.matrix().max_abs().max(1.0);
                s.matrix().max_abs_diff(sigma.matrix()) <= MATCH_TOL * scale
            })
            .map(|(_, f)| f)
            .ok_or(Error::MissingOrbitPoint)
    }
}

/// Fiber `T ↦ h(Tσ₀Tᵗ)`.
pub fn lift_from_sigma(h: &OrbitTable, sample: &GroupSample, sigma0: &SkewForm) -> Result<FiberedFunction> {
    let fibers = sample
        .transforms
        .iter()
        .map(|t| Ok(h.lookup(&act_on_form(t, sigma0)?)?.clone()))
        .collect::<Result<_>>()?;
    FiberedFunction::new(sample.clone(), fibers)
}

/// Reads a fibered function as a function of `σ_T`; the first fiber wins on repeats.
pub fn eval_on_orbit(f: &FiberedFunction, sigma0: &SkewForm) -> Result<OrbitTable> {
    let mut table = OrbitTable::new();
    for (t, g) in f.sample.transforms.iter().zip(&f.fibers) {
        table.insert(act_on_form(t, sigma0)?, g.clone());
    }
    Ok(table)
}

#[cfg(test)]
mod tests;

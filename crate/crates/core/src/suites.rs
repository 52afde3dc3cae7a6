//! Verification suites. Each criterion returns named checks with measured values,
//! and suites bundle criteria into deterministic JSON reports.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::geometry::{
    act_on_form, in_stabilizer, orbit_invariants, q_form, sample_orbit, sample_stabilizer,
    standard_skew_dim, Covector, Matrix, SkewForm,
};
use crate::oracle::{self, QuadratureOptions};
use crate::star_numeric::functions::{
    default_window, gaussian, gaussian_at, gaussian_hat, plane_wave, plateau_window,
    windowed_coordinate,
};
use crate::star_numeric::{
    adjoint_defect, cstar_identity_check, homomorphism_defect, semiclassical_sweep, star_commutator,
    star_product, weyl_action, GridFunction, GridSpec,
};
use crate::weyl_algebra::{e, mul, unit_u, WeylElement};

/// θ used by the plane-wave bridge and coordinate commutator checks.
pub const WINDOWED_THETA: f64 = 0.5;
/// Sub-lattice stride at which the quadrature oracle is evaluated.
pub const ORACLE_STRIDE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
    Within(f64, f64),
}

impl Bound {
    pub fn holds(&self, v: f64) -> bool {
        match *self {
            Bound::AtMost(b) => v <= b,
            Bound::AtLeast(b) => v >= b,
            Bound::Within(lo, hi) => (lo..=hi).contains(&v),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Bound::AtMost(b) => write!(f, "<= {b:e}"),
            Bound::AtLeast(b) => write!(f, ">= {b:e}"),
            Bound::Within(lo, hi) => write!(f, "in [{lo}, {hi}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub value: f64,
    pub bound: Bound,
    pub pass: bool,
}

impl Check {
    pub fn new(criterion: u8, name: &str, value: f64, bound: Bound) -> Self {
        // NaN never passes.
        let pass = bound.holds(value);
        Self { criterion, name: name.to_string(), value, bound, pass }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {:>2} {:<34} {:.3e} {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.criterion,
            self.name,
            self.value,
            self.bound
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Weyl,
    Oracle,
    Equivariance,
    Cstar,
    Orbit,
    Semiclassical,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Weyl, Suite::Oracle, Suite::Equivariance, Suite::Cstar, Suite::Orbit, Suite::Semiclassical];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Weyl => "weyl",
            Suite::Oracle => "oracle",
            Suite::Equivariance => "equivariance",
            Suite::Cstar => "cstar",
            Suite::Orbit => "orbit",
            Suite::Semiclassical => "semiclassical",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "weyl" => Suite::Weyl,
            "oracle" => Suite::Oracle,
            "equivariance" => Suite::Equivariance,
            "cstar" => Suite::Cstar,
            "orbit" => Suite::Orbit,
            "semiclassical" => Suite::Semiclassical,
            "all" => Suite::All,
            other => return Err(Error::Format(format!("unknown suite '{other}'"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    match suite {
        Suite::Weyl => {
            checks.extend(weyl_relations(cfg)?);
            checks.extend(plane_wave_bridge(cfg)?);
            checks.extend(coordinate_commutator(cfg)?);
        }
        Suite::Oracle => checks.extend(oracle_equivalence(cfg)?),
        Suite::Equivariance => {
            checks.extend(crate::covariance::checks::pointwise_theorem(cfg)?);
            checks.extend(crate::covariance::checks::equivariance(cfg)?);
        }
        Suite::Cstar => checks.extend(cstar(cfg)?),
        Suite::Orbit => checks.extend(orbit_geometry(cfg)?),
        Suite::Semiclassical => checks.extend(semiclassical(cfg)?),
        Suite::All => {
            for s in Suite::ALL {
                checks.extend(run_suite(s, cfg)?.checks);
            }
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(SuiteReport { suite, seed: cfg.seed, pass, checks })
}

pub(crate) fn rng_for(cfg: &RunConfig, criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(criterion))
}

fn dyadic_covector(rng: &mut impl Rng, dim: usize) -> Covector {
    Covector((0..dim).map(|_| rng.random_range(-16i32..=16) as f64 / 8.0).collect())
}

fn random_element(rng: &mut impl Rng, sigma: &SkewForm, terms: usize) -> Result<WeylElement> {
    let t: Vec<(Covector, Complex64)> = (0..terms)
        .map(|_| {
            let alpha = dyadic_covector(rng, sigma.dim());
            let c = Complex64::from_polar(rng.random_range(0.2..1.0), rng.random_range(0.0..2.0 * PI));
            (alpha, c)
        })
        .collect();
    WeylElement::from_terms(sigma, t)
}

/// Exact generator relations and associativity over sampled orbit forms.
pub fn weyl_relations(cfg: &RunConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tolerances;
    let st = &cfg.spacetime;
    let orbit = sample_orbit(st, &cfg.sigma0()?, 100, cfg.seed)?;
    let mut rng = rng_for(cfg, 1);
    let (mut phase_err, mut assoc_err) = (0.0f64, 0.0f64);
    for (_, sigma) in &orbit {
        let a = dyadic_covector(&mut rng, st.dim());
        let b = dyadic_covector(&mut rng, st.dim());
        let lhs = mul(&unit_u(&a, sigma), &unit_u(&b, sigma))?;
        let rhs = unit_u(&a.add(&b), sigma).scale(e(q_form(sigma, &a, &b)));
        phase_err = phase_err.max(lhs.max_abs_diff(&rhs));

        let x = random_element(&mut rng, sigma, 3)?;
        let y = random_element(&mut rng, sigma, 3)?;
        let z = random_element(&mut rng, sigma, 3)?;
        let left = mul(&mul(&x, &y)?, &z)?;
        let right = mul(&x, &mul(&y, &z)?)?;
        assoc_err = assoc_err.max(left.max_abs_diff(&right));
    }
    Ok(vec![
        Check::new(1, "weyl_relation_phase_error", phase_err, Bound::AtMost(tol.weyl_phase)),
        Check::new(1, "associativity", assoc_err, Bound::AtMost(tol.associativity)),
    ])
}

fn interior(spec: &GridSpec) -> impl Fn(&[f64]) -> bool {
    let r = spec.length / 4.0;
    move |q: &[f64]| q.iter().map(|v| v * v).sum::<f64>() <= r * r
}

/// A windowed plane wave acts on a Gaussian as the Weyl operator in the window interior.
pub fn plane_wave_bridge(cfg: &RunConfig) -> Result<Vec<Check>> {
    let spec = cfg.grid_spec(2)?.with_theta(WINDOWED_THETA)?;
    let sigma = standard_skew_dim(2)?;
    let alpha = Covector(vec![0.7, -0.4]);
    let w = default_window(&spec);
    let f = plane_wave(&spec, &alpha).pointwise(&w)?;
    let g = gaussian(&spec, &[0.2, -0.1], 1.0);
    let lhs = star_product(&f, &g, &sigma)?;
    let rhs = weyl_action(&alpha, &g, &sigma)?.pointwise(&w)?;
    let defect = lhs.masked_rel_l2(&rhs, interior(&spec))?;
    Ok(vec![Check::new(2, "plane_wave_bridge", defect, Bound::AtMost(cfg.tolerances.bridge))])
}

/// Random Gaussian pair: (center, width) for f and g, and a complex amplitude for f.
fn gaussian_pair(rng: &mut impl Rng) -> ([f64; 2], f64, [f64; 2], f64, Complex64) {
    let mut c = || [rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5)];
    let (cf, cg) = (c(), c());
    let sf = rng.random_range(0.9..1.4);
    let sg = rng.random_range(0.9..1.4);
    let amp = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
    (cf, sf, cg, sg, amp)
}

/// Band outside which `s^2 exp(−πs²|p|²)` is below 1e-17.
fn gaussian_band(width: f64) -> f64 {
    (39.0 / PI).sqrt() / width
}

/// FFT product against adaptive quadrature of the single integral, plus the σ = 0 limit.
pub fn oracle_equivalence(cfg: &RunConfig) -> Result<Vec<Check>> {
    let spec = cfg.grid_spec(2)?;
    let sigma = standard_skew_dim(2)?;
    let zero = SkewForm::zero(2);
    let mut rng = rng_for(cfg, 3);
    let opts = QuadratureOptions::default();
    let points: Vec<usize> = (0..spec.total())
        .filter(|&flat| spec.multi_index(flat).iter().all(|i| i % ORACLE_STRIDE == 0))
        .collect();
    let (mut worst, mut worst_pointwise) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let (cf, sf, cg, sg, amp) = gaussian_pair(&mut rng);
        let f = gaussian(&spec, &cf, sf).scale(amp);
        let g = gaussian(&spec, &cg, sg);
        let fft = star_product(&f, &g, &sigma)?;
        let (mut num, mut den) = (0.0, 0.0);
        for &flat in &points {
            let q = spec.point(flat);
            let v = oracle::star_product_at(
                &|x| amp * gaussian_at(&cf, sf, x),
                &|p| gaussian_hat(&cg, sg, p),
                &sigma,
                spec.theta,
                &q,
                gaussian_band(sg),
                &opts,
            )?;
            num += (fft.values()[flat] - v).norm_sqr();
            den += v.norm_sqr();
        }
        worst = worst.max((num / den).sqrt());
        let flat_product = star_product(&f, &g, &zero)?;
        worst_pointwise = worst_pointwise.max(flat_product.rel_l2(&f.pointwise(&g)?)?);
    }
    Ok(vec![
        Check::new(3, "fft_vs_quadrature", worst, Bound::AtMost(cfg.tolerances.oracle)),
        Check::new(3, "zero_form_pointwise", worst_pointwise, Bound::AtMost(cfg.tolerances.pointwise)),
    ])
}

/// Quadrature value of `[f, g](0)/θ` for `f = (α·q)G`, `g = (β·q)G` with a unit Gaussian `G`.
pub fn commutator_constant_by_quadrature(
    sigma: &SkewForm,
    alpha: &Covector,
    beta: &Covector,
    theta: f64,
) -> Result<Complex64> {
    let lin = |c: &Covector, x: &[f64]| c.0.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
    let centre = [0.0, 0.0];
    // FT of (c·x)G is −i (c·p) Ĝ(p) for the unit-width Gaussian.
    let hat = |c: &Covector, p: &[f64]| Complex64::new(0.0, -lin(c, p)) * gaussian_hat(&centre, 1.0, p);
    let opts = QuadratureOptions::default();
    let q = [0.0, 0.0];
    let band = gaussian_band(1.0);
    let fg = oracle::star_product_at(
        &|x| lin(alpha, x) * gaussian_at(&centre, 1.0, x),
        &|p| hat(beta, p),
        sigma,
        theta,
        &q,
        band,
        &opts,
    )?;
    let gf = oracle::star_product_at(
        &|x| lin(beta, x) * gaussian_at(&centre, 1.0, x),
        &|p| hat(alpha, p),
        sigma,
        theta,
        &q,
        band,
        &opts,
    )?;
    Ok((fg - gf) / theta)
}

fn random_plane_form(rng: &mut impl Rng) -> Result<SkewForm> {
    let c = rng.random_range(0.5..1.5) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    SkewForm::new(Matrix::from_rows(&[vec![0.0, c], vec![-c, 0.0]])?)
}

/// Windowed coordinate commutators equal `(θ/πi) Q_αβ w²` in the interior.
pub fn coordinate_commutator(cfg: &RunConfig) -> Result<Vec<Check>> {
    let spec = cfg.grid_spec(2)?.with_theta(WINDOWED_THETA)?;
    let w = default_window(&spec);
    let w2 = w.pointwise(&w)?;
    let mut rng = rng_for(cfg, 4);
    let (mut worst, mut worst_constant) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let alpha = Covector(vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]);
        let beta = Covector(vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]);
        let sigma = random_plane_form(&mut rng)?;
        let f = windowed_coordinate(&w, &alpha);
        let g = windowed_coordinate(&w, &beta);
        let comm = star_commutator(&f, &g, &sigma)?;
        let constant = Complex64::new(0.0, -spec.theta * q_form(&sigma, &alpha, &beta) / PI);
        let expected = w2.scale(constant);
        worst = worst.max(comm.masked_rel_l2(&expected, interior(&spec))?);

        let quad = commutator_constant_by_quadrature(&sigma, &alpha, &beta, 1e-3)?;
        let unit = Complex64::new(0.0, -q_form(&sigma, &alpha, &beta) / PI);
        worst_constant = worst_constant.max((quad - unit).norm() / unit.norm());
    }
    Ok(vec![
        Check::new(4, "coordinate_commutator", worst, Bound::AtMost(cfg.tolerances.commutator)),
        Check::new(4, "commutator_constant_quadrature", worst_constant, Bound::AtMost(cfg.tolerances.commutator)),
    ])
}

/// Representation checks on the commensurate `N = 32` grid.
pub fn cstar(cfg: &RunConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tolerances;
    let spec = GridSpec::commensurate(2, 32, cfg.grid.theta)?;
    let sigma = standard_skew_dim(2)?;
    let f = gaussian(&spec, &[0.3, -0.2], 1.0).scale(Complex64::new(0.8, 0.6));
    let g = gaussian(&spec, &[-0.25, 0.1], 0.8);
    let hom = homomorphism_defect(&f, &g, &sigma)?;
    let adj = adjoint_defect(&f, &sigma)?;
    let centred = gaussian(&spec, &[0.0, 0.0], 1.0);
    let report = cstar_identity_check(&centred, &sigma)?;
    let window = plateau_window(&spec, 0.33 * spec.length, 0.045 * spec.length);
    let window_report = cstar_identity_check(&window, &sigma)?;
    Ok(vec![
        Check::new(7, "homomorphism_defect", hom, Bound::AtMost(tol.homomorphism)),
        Check::new(7, "adjoint_defect", adj, Bound::AtMost(tol.adjoint)),
        Check::new(7, "cstar_defect_gaussian", report.defect, Bound::AtMost(tol.cstar)),
        Check::new(7, "positivity_gaussian", report.positivity(), Bound::AtLeast(-tol.positivity)),
        Check::new(7, "cstar_defect_window", window_report.defect, Bound::AtMost(tol.cstar)),
        Check::new(7, "positivity_window", window_report.positivity(), Bound::AtLeast(-tol.positivity)),
    ])
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Orbit invariants, stabilizer closure and the transport identity for `Q`.
pub fn orbit_geometry(cfg: &RunConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tolerances;
    let st = &cfg.spacetime;
    let sigma0 = cfg.sigma0()?;
    let base = orbit_invariants(st, &sigma0);
    let orbit = sample_orbit(st, &sigma0, 1000, cfg.seed)?;
    let mut rng = rng_for(cfg, 8);
    let (mut inv_err, mut q_err) = (0.0f64, 0.0f64);
    for (t, sigma) in &orbit {
        for (a, b) in orbit_invariants(st, sigma).iter().zip(&base) {
            inv_err = inv_err.max(relative(*a, *b));
        }
        let alpha = dyadic_covector(&mut rng, st.dim());
        let beta = dyadic_covector(&mut rng, st.dim());
        let lhs = q_form(&act_on_form(t, &sigma0)?, &alpha, &beta);
        let rhs = q_form(&sigma0, &t.pullback(&alpha), &t.pullback(&beta));
        q_err = q_err.max(relative(lhs, rhs));
    }
    let stab = sample_stabilizer(st, &sigma0, 50, cfg.seed, 1e-12);
    let mut closure = 0.0f64;
    for s in &stab {
        for r in &stab {
            let p = s.compose(r);
            let moved = act_on_form(&p, &sigma0)?;
            let scale = p.norm_inf().powi(2).max(1.0);
            closure = closure.max(moved.matrix().max_abs_diff(sigma0.matrix()) / scale);
        }
    }
    let all_members = stab.iter().all(|s| in_stabilizer(s, &sigma0, 1e-9 * s.norm_inf().powi(2).max(1.0)));
    Ok(vec![
        Check::new(8, "invariants_constant", inv_err, Bound::AtMost(tol.invariants)),
        Check::new(8, "stabilizer_closure", closure, Bound::AtMost(tol.invariants)),
        Check::new(8, "stabilizer_sample_size", if all_members { stab.len() as f64 } else { 0.0 }, Bound::AtLeast(1.0)),
        Check::new(8, "q_covariance", q_err, Bound::AtMost(tol.q_covariance)),
    ])
}

/// Test pair used by the semiclassical sweep.
pub fn semiclassical_pair(spec: &GridSpec) -> (GridFunction, GridFunction) {
    (gaussian(spec, &[0.3, 0.2], 1.5), gaussian(spec, &[-0.4, -0.1], 1.2))
}

pub fn semiclassical(cfg: &RunConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tolerances;
    let spec = cfg.grid_spec(2)?;
    let (f, g) = semiclassical_pair(&spec);
    let table = semiclassical_sweep(&f, &g, &standard_skew_dim(2)?, &cfg.thetas)?;
    let monotone = table.rows.windows(2).all(|w| w[1].d2 < w[0].d2);
    Ok(vec![
        Check::new(9, "slope_d1", table.slope_d1.unwrap_or(f64::NAN), Bound::Within(tol.slope_d1.0, tol.slope_d1.1)),
        Check::new(9, "slope_d2", table.slope_d2.unwrap_or(f64::NAN), Bound::Within(tol.slope_d2.0, tol.slope_d2.1)),
        Check::new(9, "d2_monotone", if monotone { 1.0 } else { 0.0 }, Bound::AtLeast(1.0)),
    ])
}

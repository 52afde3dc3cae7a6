//! Covariance criteria used by the `equivariance` suite.

use num_complex::Complex64;
use rand::Rng;

use super::{
    fibered_star_product, gamma_act, phi_alpha, rho_act, tau_act, FiberedFunction, GroupSample,
    RealLineFunction,
};
use crate::config::RunConfig;
use crate::error::Result;
use crate::geometry::{
    make_boost, parity, sample_stabilizer, standard_skew_dim, Covector, LorentzTransform, SkewForm,
    Spacetime, Vector,
};
use crate::star_numeric::functions::gaussian;
use crate::star_numeric::{GridFunction, GridSpec};
use crate::suites::{rng_for, Bound, Check};

/// `‖Φ^α(ρ^α_x ψ) − τ_x Φ^α(ψ)‖_max`.
pub fn check_phi_equivariance(
    alpha: &Covector,
    x: &Vector,
    psi: &RealLineFunction,
    sample: &GroupSample,
) -> Result<f64> {
    let lhs = phi_alpha(alpha, &rho_act(alpha, x, psi, sample)?, sample)?;
    let rhs = tau_act(x, &phi_alpha(alpha, psi, sample)?)?;
    lhs.max_abs_diff(&rhs)
}

/// `‖τ_x γ_S F − γ_S τ_{Sx} F‖_max`.
pub fn check_gamma_covariance(s: &LorentzTransform, x: &Vector, f: &FiberedFunction) -> Result<f64> {
    let lhs = tau_act(x, &gamma_act(s, f)?)?;
    let rhs = gamma_act(s, &tau_act(&s.apply(x), f)?)?;
    lhs.max_abs_diff(&rhs)
}

/// Per-fiber relative defect `‖Φ^α ψ₁ ⋆ Φ^β ψ₂ − Φ^α ψ₁ · Φ^β ψ₂‖₂ / ‖Φ^α ψ₁ · Φ^β ψ₂‖₂`.
///
/// For `α = β` this is the pointwise-product theorem and the defect vanishes.
pub fn pointwise_defects(
    alpha: &Covector,
    beta: &Covector,
    psi1: &RealLineFunction,
    psi2: &RealLineFunction,
    sample: &GroupSample,
    sigma0: &SkewForm,
) -> Result<Vec<f64>> {
    let f = phi_alpha(alpha, psi1, sample)?;
    let g = phi_alpha(beta, psi2, sample)?;
    let star = fibered_star_product(&f, &g, sigma0)?;
    f.fibers()
        .iter()
        .zip(g.fibers())
        .zip(star.fibers())
        .map(|((a, b), s)| s.rel_l2(&a.pointwise(b)?))
        .collect()
}

pub fn check_pointwise_theorem(
    alpha: &Covector,
    psi1: &RealLineFunction,
    psi2: &RealLineFunction,
    sample: &GroupSample,
    sigma0: &SkewForm,
) -> Result<Vec<f64>> {
    pointwise_defects(alpha, alpha, psi1, psi2, sample, sigma0)
}

fn line_gaussian(spec: &GridSpec, center: f64, width: f64) -> Result<GridFunction> {
    let line = GridSpec::new(1, spec.n, spec.length, spec.theta)?;
    Ok(gaussian(&line, &[center], width))
}

/// Five fibers of the 1+1 Lorentz group: identity, boosts, parity and a boosted parity.
pub fn five_fiber_sample(st: &Spacetime) -> Result<GroupSample> {
    let p = parity(st);
    let transforms = vec![
        LorentzTransform::identity(st),
        make_boost(st, 1, 0.4)?,
        make_boost(st, 1, -0.7)?,
        p.clone(),
        make_boost(st, 1, 0.9)?.compose(&p),
    ];
    GroupSample::new(st, transforms, Some(2.0 * 0.9f64.cosh() + 1e-12))
}

/// Pointwise-product theorem on five fibers, with a unit check and a negative control.
pub fn pointwise_theorem(cfg: &RunConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tolerances;
    let st = Spacetime::minkowski(2)?;
    let spec = cfg.grid_spec(2)?;
    let sigma0 = standard_skew_dim(2)?;
    let sample = five_fiber_sample(&st)?;
    let k = sample.len();
    let alpha = Covector(vec![1.0, -1.0]);
    let beta = Covector(vec![1.0, 1.0]);
    let psi1 = RealLineFunction::uniform(&line_gaussian(&spec, 0.3, 1.0)?.scale(Complex64::new(0.6, 0.8)), k)?;
    let psi2 = RealLineFunction::uniform(&line_gaussian(&spec, -0.2, 0.8)?, k)?;
    let one = RealLineFunction::uniform(
        &GridFunction::constant(psi1.spec(), Complex64::new(1.0, 0.0)),
        k,
    )?;
    let max = |v: Vec<f64>| v.into_iter().fold(0.0, f64::max);
    let min = |v: Vec<f64>| v.into_iter().fold(f64::INFINITY, f64::min);
    let theorem = max(check_pointwise_theorem(&alpha, &psi1, &psi2, &sample, &sigma0)?);
    let unit = max(check_pointwise_theorem(&alpha, &psi1, &one, &sample, &sigma0)?);
    let control = min(pointwise_defects(&alpha, &beta, &psi1, &psi2, &sample, &sigma0)?);
    Ok(vec![
        Check::new(5, "pointwise_theorem", theorem, Bound::AtMost(tol.pointwise_theorem)),
        Check::new(5, "pointwise_unit", unit, Bound::AtMost(tol.pointwise_theorem)),
        Check::new(5, "negative_control", control, Bound::AtLeast(tol.negative_control)),
    ])
}

fn random_boost_sample(st: &Spacetime, rng: &mut impl Rng, count: usize) -> Result<GroupSample> {
    let transforms = (0..count)
        .map(|_| make_boost(st, 1, rng.random_range(-1.0..1.0)))
        .collect::<Result<_>>()?;
    GroupSample::new(st, transforms, None)
}

fn small_vector(rng: &mut impl Rng) -> Vector {
    Vector(vec![rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5)])
}

/// Φ^α-equivariance and τ–γ covariance over 100 random draws each.
pub fn equivariance(cfg: &RunConfig) -> Result<Vec<Check>> {
    let tol = &cfg.tolerances;
    let st = Spacetime::minkowski(2)?;
    let spec = cfg.grid_spec(2)?;
    let sigma0 = standard_skew_dim(2)?;
    let mut rng = rng_for(cfg, 6);
    let covectors: Vec<Covector> = [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, -1.0], [-1.0, 0.0], [-1.0, 1.0]]
        .iter()
        .map(|a| Covector(a.to_vec()))
        .collect();
    let mut phi_worst = 0.0f64;
    for _ in 0..100 {
        let sample = random_boost_sample(&st, &mut rng, 3)?;
        let alpha = covectors[rng.random_range(0..covectors.len())].clone();
        let fibers = (0..3)
            .map(|_| line_gaussian(&spec, rng.random_range(-0.3..0.3), 1.0))
            .collect::<Result<_>>()?;
        let psi = RealLineFunction::new(fibers)?;
        let x = small_vector(&mut rng);
        phi_worst = phi_worst.max(check_phi_equivariance(&alpha, &x, &psi, &sample)?);
    }
    let stabilizer = sample_stabilizer(&st, &sigma0, 100, cfg.seed, 1e-12);
    let mut gamma_worst = 0.0f64;
    for s in &stabilizer {
        let sample = random_boost_sample(&st, &mut rng, 3)?;
        let centres: Vec<[f64; 2]> = (0..3)
            .map(|_| [rng.random_range(-0.3..0.3), rng.random_range(-0.3..0.3)])
            .collect();
        let f = FiberedFunction::new(
            sample,
            centres.iter().map(|c| gaussian(&spec, c, 1.0)).collect(),
        )?;
        let x = small_vector(&mut rng);
        gamma_worst = gamma_worst.max(check_gamma_covariance(s, &x, &f)?);
    }
    Ok(vec![
        Check::new(6, "phi_equivariance", phi_worst, Bound::AtMost(tol.equivariance)),
        Check::new(6, "gamma_covariance", gamma_worst, Bound::AtMost(tol.equivariance)),
        Check::new(6, "gamma_draws", stabilizer.len() as f64, Bound::AtLeast(100.0)),
    ])
}

use num_complex::Complex64;

use super::*;
use crate::geometry::{make_boost, parity, standard_skew_dim};
use crate::star_numeric::functions::gaussian;

fn st2() -> Spacetime {
    Spacetime::minkowski(2).unwrap()
}

fn spec() -> GridSpec {
    GridSpec::new(2, 64, 8.0, 1.0).unwrap()
}

fn line() -> GridSpec {
    GridSpec::new(1, 64, 8.0, 1.0).unwrap()
}

fn boosts(rapidities: &[f64]) -> GroupSample {
    let st = st2();
    let t = rapidities.iter().map(|&r| make_boost(&st, 1, r).unwrap()).collect();
    GroupSample::new(&st, t, None).unwrap()
}

fn fibered(sample: &GroupSample) -> FiberedFunction {
    let fibers = (0..sample.len())
        .map(|i| gaussian(&spec(), &[0.1 * i as f64, -0.2], 1.0))
        .collect();
    FiberedFunction::new(sample.clone(), fibers).unwrap()
}

#[test]
fn sample_validation() {
    let st = st2();
    assert!(matches!(GroupSample::new(&st, vec![], None), Err(Error::Empty)));
    let big = make_boost(&st, 1, 3.0).unwrap();
    assert!(matches!(GroupSample::new(&st, vec![big], Some(2.0)), Err(Error::Unbounded { .. })));
    let s = boosts(&[0.0, 0.5]);
    assert!(!s.bounded());
    assert_eq!(s.position(&make_boost(&st, 1, 0.5).unwrap()), Some(1));
}

#[test]
fn tau_identity_additivity_and_plain_translation() {
    let sample = boosts(&[0.0, 0.3, -0.6]);
    let f = fibered(&sample);
    let zero = tau_act(&Vector::zero(2), &f).unwrap();
    assert!(zero.max_abs_diff(&f).unwrap() < 1e-14);
    let x = Vector(vec![0.2, -0.1]);
    let y = Vector(vec![-0.35, 0.4]);
    let lhs = tau_act(&x, &tau_act(&y, &f).unwrap()).unwrap();
    let rhs = tau_act(&x.add(&y), &f).unwrap();
    assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-10);
    // The identity fiber is a plain translation by −x.
    let moved = tau_act(&x, &f).unwrap().fibers()[0].clone();
    let exact = gaussian(&spec(), &[0.2, -0.3], 1.0);
    assert!(moved.max_abs_diff(&exact).unwrap() < 1e-12);
}

#[test]
fn gamma_identity_and_permutation() {
    let st = st2();
    let sample = boosts(&[0.0, 0.5]);
    let f = fibered(&sample);
    let same = gamma_act(&LorentzTransform::identity(&st), &f).unwrap();
    assert_eq!(same, f);
    // {T, TS} with S² = 1 is closed under S, and γ_S swaps the two fibers.
    let s = parity(&st);
    let t = make_boost(&st, 1, 0.5).unwrap();
    let pair = GroupSample::new(&st, vec![t.clone(), t.compose(&s)], None).unwrap();
    let g = fibered(&pair);
    let swapped = gamma_act_closed(&s, &g).unwrap();
    assert_eq!(swapped.fibers()[0], g.fibers()[1]);
    assert_eq!(swapped.fibers()[1], g.fibers()[0]);
    assert!(matches!(gamma_act_closed(&make_boost(&st, 1, 0.1).unwrap(), &g), Err(Error::NotClosed)));
}

#[test]
fn rho_identities() {
    let sample = boosts(&[0.2, -0.4]);
    let psi = RealLineFunction::uniform(&gaussian(&line(), &[0.1], 1.0), 2).unwrap();
    let alpha = Covector(vec![1.0, -1.0]);
    let x = Vector(vec![0.3, 0.1]);
    let same = rho_act(&alpha, &Vector::zero(2), &psi, &sample).unwrap();
    assert!(same.fibers()[0].max_abs_diff(&psi.fibers()[0]).unwrap() < 1e-14);
    let same = rho_act(&Covector::zero(2), &x, &psi, &sample).unwrap();
    assert!(same.fibers()[1].max_abs_diff(&psi.fibers()[1]).unwrap() < 1e-14);
    let y = Vector(vec![-0.2, 0.25]);
    let twice = rho_act(&alpha, &x, &rho_act(&alpha, &y, &psi, &sample).unwrap(), &sample).unwrap();
    let once = rho_act(&alpha, &x.add(&y), &psi, &sample).unwrap();
    for (a, b) in twice.fibers().iter().zip(once.fibers()) {
        assert!(a.max_abs_diff(b).unwrap() < 1e-10);
    }
}

#[test]
fn phi_alpha_shapes() {
    let sample = boosts(&[0.0]);
    let c = RealLineFunction::uniform(&GridFunction::constant(&line(), Complex64::new(2.0, 0.0)), 1).unwrap();
    let f = phi_alpha(&Covector(vec![1.0, 1.0]), &c, &sample).unwrap();
    assert!(f.fibers()[0].values().iter().all(|v| *v == Complex64::new(2.0, 0.0)));
    // First coordinate: a cylinder Gaussian, constant along q₂.
    let psi = RealLineFunction::uniform(&gaussian(&line(), &[0.0], 1.0), 1).unwrap();
    let f = phi_alpha(&Covector(vec![1.0, 0.0]), &psi, &sample).unwrap();
    let exact = GridFunction::from_fn(&spec(), |q| Complex64::new((-std::f64::consts::PI * q[0] * q[0]).exp(), 0.0));
    assert!(f.fibers()[0].max_abs_diff(&exact).unwrap() < 1e-15);
    assert!(matches!(
        phi_alpha(&Covector(vec![0.5, 0.0]), &psi, &sample),
        Err(Error::IncommensurateCovector(_))
    ));
}

#[test]
fn phi_alpha_on_diagonal_matches_composition() {
    let sample = boosts(&[0.0]);
    let psi = RealLineFunction::uniform(&gaussian(&line(), &[0.2], 1.0), 1).unwrap();
    let f = phi_alpha(&Covector(vec![1.0, -1.0]), &psi, &sample).unwrap();
    // Periodic in q₁ − q₂ with period L.
    let exact = GridFunction::from_fn(&spec(), |q| {
        let r = (q[0] - q[1] + 4.0).rem_euclid(8.0) - 4.0;
        Complex64::new((-std::f64::consts::PI * (r - 0.2).powi(2)).exp(), 0.0)
    });
    assert!(f.fibers()[0].max_abs_diff(&exact).unwrap() < 1e-12);
}

#[test]
fn restriction() {
    let sample = boosts(&[0.0, 0.3, 0.6]);
    let f = fibered(&sample);
    assert_eq!(restrict_to_e(&f, &[0, 1, 2]).unwrap(), f);
    let one = restrict_to_e(&f, &[1]).unwrap();
    assert_eq!(one.fibers().len(), 1);
    assert!(matches!(restrict_to_e(&f, &[]), Err(Error::Empty)));
    assert!(matches!(restrict_to_e(&f, &[3]), Err(Error::Index { .. })));
    let x = Vector(vec![0.1, 0.2]);
    let a = restrict_to_e(&tau_act(&x, &f).unwrap(), &[2]).unwrap();
    let b = tau_act(&x, &restrict_to_e(&f, &[2]).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn modulus_bounded_versus_unbounded_samples() {
    let phi = |r: f64| (-r * r).exp();
    // Lipschitz constant of exp(−r²) is sqrt(2/e).
    let lip = (2.0 / std::f64::consts::E).sqrt();
    let alpha = Covector(vec![0.0, 1.0]);
    let rs: Vec<f64> = (0..=4000).map(|i| -10.0 + i as f64 * 0.005).collect();
    let bounded = boosts(&[-0.5, 0.0, 0.5]);
    let xs: Vec<Vector> = [0.0, 0.01, 0.02, 0.04].iter().map(|&t| Vector(vec![t, 0.0])).collect();
    let rows = modulus_of_continuity(&alpha, &phi, &bounded, &xs, &rs);
    assert_eq!(rows[0].modulus, 0.0);
    for r in &rows {
        assert!(r.modulus <= lip * r.reach + 1e-12);
    }
    // Boosts of growing rapidity: the modulus at fixed |x| does not shrink and stays away from zero.
    let x = [Vector(vec![0.01, 0.0])];
    let series: Vec<f64> = [0.0, 2.0, 4.0, 6.0, 8.0]
        .iter()
        .map(|&r| modulus_of_continuity(&alpha, &phi, &boosts(&[r]), &x, &rs)[0].modulus)
        .collect();
    assert!(series.windows(2).all(|w| w[1] >= w[0]));
    assert!(series[4] > 0.5);
}

#[test]
fn single_identity_fiber_reduces_to_star_product() {
    let sample = boosts(&[0.0]);
    let f = fibered(&sample);
    let g = FiberedFunction::new(sample.clone(), vec![gaussian(&spec(), &[0.3, 0.0], 0.8)]).unwrap();
    let sigma = standard_skew_dim(2).unwrap();
    let p = fibered_star_product(&f, &g, &sigma).unwrap();
    let direct = star_product(&f.fibers()[0], &g.fibers()[0], &sigma).unwrap();
    assert_eq!(p.fibers()[0], direct);
}

#[test]
fn lift_round_trip_and_stabilizer_invariance() {
    let st = st2();
    let sigma0 = standard_skew_dim(2).unwrap();
    let p = parity(&st);
    let sample = GroupSample::new(
        &st,
        vec![LorentzTransform::identity(&st), make_boost(&st, 1, 0.7).unwrap(), p.clone()],
        None,
    )
    .unwrap();
    // Boosts fix σ₀ in 1+1 dimensions and parity flips it, so the orbit has two points.
    let mut h = OrbitTable::new();
    h.insert(sigma0.clone(), gaussian(&spec(), &[0.0, 0.0], 1.0));
    h.insert(sigma0.scaled(-1.0), gaussian(&spec(), &[0.5, 0.0], 1.0));
    assert_eq!(h.len(), 2);
    let lifted = lift_from_sigma(&h, &sample, &sigma0).unwrap();
    assert_eq!(lifted.fibers()[0], lifted.fibers()[1]);
    let back = lift_from_sigma(&eval_on_orbit(&lifted, &sigma0).unwrap(), &sample, &sigma0).unwrap();
    assert!(back.max_abs_diff(&lifted).unwrap() <= 1e-12);
    let s = make_boost(&st, 1, -1.3).unwrap();
    let moved = gamma_act(&s, &lifted).unwrap();
    let relifted = lift_from_sigma(&h, moved.sample(), &sigma0).unwrap();
    assert!(moved.max_abs_diff(&relifted).unwrap() <= 1e-9);
    let mut partial = OrbitTable::new();
    partial.insert(sigma0.clone(), gaussian(&spec(), &[0.0, 0.0], 1.0));
    assert!(matches!(lift_from_sigma(&partial, &sample, &sigma0), Err(Error::MissingOrbitPoint)));
}

#[test]
fn bundle_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let st = st2();
    let sample = GroupSample::new(&st, vec![make_boost(&st, 1, 0.2).unwrap(), parity(&st)], Some(2.0)).unwrap();
    let f = fibered(&sample);
    bundle::save_bundle(dir.path(), &f).unwrap();
    assert!(dir.path().join("fiber_1.moya").exists());
    let g = bundle::load_bundle(dir.path()).unwrap();
    assert_eq!(g, f);
    assert!(g.sample().bounded());
}

use moyal::geometry::{
    act_on_form, in_stabilizer, orbit_invariants, q_form, sample_orbit, sample_stabilizer, standard_skew, Covector,
    LorentzTransform, SkewForm, Spacetime,
};
use proptest::prelude::*;

fn st() -> Spacetime {
    Spacetime::minkowski(4).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_points_share_invariants(seed in any::<u64>()) {
        let st = st();
        let s0 = standard_skew(&st).unwrap();
        let base = orbit_invariants(&st, &s0);
        for (t, s) in sample_orbit(&st, &s0, 8, seed).unwrap() {
            prop_assert!(t.metric_defect(&st) <= 1e-12 * t.matrix().max_abs().powi(2).max(1.0));
            for (a, b) in orbit_invariants(&st, &s).iter().zip(&base) {
                prop_assert!(rel(*a, *b) <= 1e-9);
            }
        }
    }

    #[test]
    fn action_is_a_left_action(seed in any::<u64>()) {
        let st = st();
        let s0 = standard_skew(&st).unwrap();
        let pts = sample_orbit(&st, &s0, 2, seed).unwrap();
        let (t1, t2) = (&pts[0].0, &pts[1].0);
        let lhs = act_on_form(&t1.compose(t2), &s0).unwrap();
        let rhs = act_on_form(t1, &act_on_form(t2, &s0).unwrap()).unwrap();
        let scale = lhs.matrix().max_abs().max(1.0);
        prop_assert!(lhs.matrix().max_abs_diff(rhs.matrix()) <= 1e-12 * scale);
    }

    #[test]
    fn q_form_transports(seed in any::<u64>(), a in prop::collection::vec(-2.0..2.0f64, 4), b in prop::collection::vec(-2.0..2.0f64, 4)) {
        let st = st();
        let s0 = standard_skew(&st).unwrap();
        let (t, s) = sample_orbit(&st, &s0, 1, seed).unwrap().remove(0);
        let (alpha, beta) = (Covector(a), Covector(b));
        let lhs = q_form(&s, &alpha, &beta);
        let rhs = q_form(&s0, &t.pullback(&alpha), &t.pullback(&beta));
        prop_assert!(rel(lhs, rhs) <= 1e-10);
        prop_assert!((q_form(&s, &alpha, &beta) + q_form(&s, &beta, &alpha)).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn stabilizer_is_closed_under_products(seed in any::<u64>()) {
        let st = st();
        let s0 = standard_skew(&st).unwrap();
        let stab = sample_stabilizer(&st, &s0, 6, seed, 1e-12);
        for a in &stab {
            for b in &stab {
                let p: LorentzTransform = a.compose(b);
                prop_assert!(in_stabilizer(&p, &s0, 1e-9 * p.norm_inf().powi(2).max(1.0)));
            }
        }
    }

    #[test]
    fn inverse_undoes_the_action(seed in any::<u64>()) {
        let st = st();
        let s0 = standard_skew(&st).unwrap();
        let (t, s) = sample_orbit(&st, &s0, 1, seed).unwrap().remove(0);
        let back: SkewForm = act_on_form(&t.inverse(&st), &s).unwrap();
        let scale = t.matrix().max_abs().powi(4).max(1.0);
        prop_assert!(back.matrix().max_abs_diff(s0.matrix()) <= 1e-12 * scale);
    }
}

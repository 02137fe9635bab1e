use proptest::prelude::*;
use radbound::comparison::integrate;
use radbound::{bound_b, comparison_solution, first_zero, ode_compare, ComparisonProfile, Curvature, FirstZero, Forcing, SpaceForm};

const FLAT: Curvature = Curvature::Flat;
const SPH: Curvature = Curvature::Spherical;

/// First zero of `1 − f̃` by bisection on a sign change found by marching.
fn first_zero_oracle(f0: f64, df0: f64) -> f64 {
    let g = |t: f64| 1.0 - comparison_solution(SPH, f0, df0).eval(t);
    let mut lo = 0.0;
    let step = 1e-3;
    while g(lo + step) > 0.0 {
        lo += step;
    }
    let mut hi = lo + step;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn forcing_strategy() -> impl Strategy<Value = Forcing<f64>> {
    prop::collection::vec((0.01f64..0.5, 0.0f64..3.0), 1..8).prop_map(|steps| {
        let mut t = 0.0;
        let mut knots = vec![(0.0, 1.0 + steps[0].1)];
        for (dt, g) in steps {
            t += dt;
            knots.push((t, 1.0 + g));
        }
        Forcing::PiecewiseLinear(knots)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn profiles_with_excess_forcing_pass(
        spherical in any::<bool>(),
        f0 in 0.0f64..0.95,
        df0 in -1.0f64..1.0,
        g in forcing_strategy(),
    ) {
        let c = if spherical { SPH } else { FLAT };
        let horizon = if spherical { std::f64::consts::PI } else { 3.0 };
        let p = ComparisonProfile::new(c, f0, df0, integrate(c, f0, df0, &g, horizon, 3000)).unwrap();
        let out = ode_compare(&p).unwrap();
        prop_assert!(out.pass);
        prop_assert!(out.worst_residual >= -1e-8);
    }

    #[test]
    fn closed_form_solves_the_ode(spherical in any::<bool>(), f0 in -2.0f64..2.0, df0 in -2.0f64..2.0, t in 0.0f64..10.0) {
        let c = if spherical { SPH } else { FLAT };
        prop_assert!(comparison_solution(c, f0, df0).ode_residual(t).abs() < 1e-10);
    }

    #[test]
    fn first_zero_matches_bisection(f0 in 0.0f64..0.99, df0 in -3.0f64..3.0) {
        let FirstZero::At(t) = first_zero(f0, df0).unwrap() else { panic!("regular zero expected") };
        prop_assert!((t - first_zero_oracle(f0, df0)).abs() < 1e-9);
    }

    #[test]
    fn bound_b_below_model_radius(a_frac in 0.0f64..=1.0, big_a in 1e-3f64..1e3, spherical in any::<bool>()) {
        let (c, sf) = if spherical { (SPH, SpaceForm::spherical(2).unwrap()) } else { (FLAT, SpaceForm::flat(2).unwrap()) };
        let r = sf.model_radius(big_a).unwrap();
        let a = (a_frac * r).max(1e-12);
        prop_assert!(r - bound_b(c, a, big_a, 0.0).unwrap() >= -1e-12);
    }
}

#[test]
fn flat_bound_is_monotone_in_a() {
    for big_a in [0.5, 1.0, 2.0, 7.0] {
        let r: f64 = 1.0 / big_a;
        let mut prev = 0.0;
        for i in 1..=10_000 {
            let v = bound_b(FLAT, r * i as f64 / 10_000.0, big_a, 0.0).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }
}

#[test]
fn bound_meets_model_radius_at_the_endpoint() {
    for big_a in [0.1f64, 0.5, 1.0, 2.0, 10.0] {
        for (c, sf) in [(FLAT, SpaceForm::flat(2).unwrap()), (SPH, SpaceForm::spherical(2).unwrap())] {
            let r = sf.model_radius(big_a).unwrap();
            assert!((bound_b(c, r, big_a, 0.0).unwrap() - r).abs() < 1e-10);
        }
    }
    assert_eq!(bound_b(SPH, 0.3f64, 0.0, 0.0).unwrap(), std::f64::consts::FRAC_PI_2);
}

#[test]
fn unit_forcing_reproduces_the_comparison_function() {
    for c in [FLAT, SPH] {
        let s = integrate(c, 0.2f64, 0.4, &Forcing::constant(1.0), 2.0, 2000);
        let p = ComparisonProfile::new(c, 0.2, 0.4, s).unwrap();
        let out = ode_compare(&p).unwrap();
        assert!(out.pass && out.worst_residual.abs() < 1e-12);
    }
}

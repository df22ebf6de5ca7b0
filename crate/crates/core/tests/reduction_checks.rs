use proptest::prelude::*;

use tumour_bvp::field::Field;
use tumour_bvp::model::{linked_s0, PhysConstants, PowerLawParams};
use tumour_bvp::numerics::OdeSpec;
use tumour_bvp::reduction::{
    default_radii, integrate_profile_ode, lift_profiles, reduced_bc_residual, reduced_ode_residual, reduced_profiles_of,
    ProfileOdeProblem, ReducedPlaneFields,
};
use tumour_bvp::solutions::{GaussianDecay, PowerMoving, SolutionFamily, StationaryFront};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lifted_gaussian_profiles_reproduce_the_family(
        c1 in 0.5f64..2.0,
        c3 in -1.0f64..1.0,
        n in prop_oneof![Just(2.0), Just(3.0), Just(-1.0)],
        sigma0 in -3.0f64..3.0,
        t in 0.5f64..3.0,
        r in 0.05f64..1.0,
        th in 0.0f64..6.28,
    ) {
        let sol = SolutionFamily::Gaussian(GaussianDecay::new(c1, c3, 1.0, n, 0.75, 4.0, sigma0, 1.0).unwrap());
        let lifted = lift_profiles(reduced_profiles_of(&sol)).unwrap();
        let (x, y) = (r * th.cos(), r * th.sin());
        let (a, b) = (lifted.value(t, x, y).unwrap(), sol.value(t, x, y).unwrap());
        for (u, v) in [(a.alpha, b.alpha), (a.u1, b.u1), (a.u2, b.u2), (a.p, b.p)] {
            prop_assert!(rel(u, v) <= 1e-10, "{u} vs {v}");
        }
    }

    #[test]
    fn gaussian_profiles_solve_the_radial_system(
        c1 in 0.5f64..2.0,
        c3 in -1.0f64..1.0,
        n in prop_oneof![Just(2.0), Just(3.0)],
        sigma0 in -3.0f64..3.0,
    ) {
        let sol = SolutionFamily::Gaussian(GaussianDecay::new(c1, c3, 1.0, n, 0.75, 4.0, sigma0, 1.0).unwrap());
        let pr = reduced_profiles_of(&sol);
        let rep = reduced_ode_residual(&pr, &default_radii(pr.delta, 24)).unwrap();
        prop_assert!(rep.max_linf() <= 1e-9, "{:?}", rep.equations);
    }

    #[test]
    fn stationary_reduced_conditions_agree_in_both_forms(c3 in 1.0f64..6.0, c4 in -1.0f64..2.0, d0 in 0.5f64..4.0) {
        let sol = SolutionFamily::Stationary(StationaryFront::new(c3, c4, 2.0, 4.0, d0).unwrap());
        let bc = reduced_bc_residual(&reduced_profiles_of(&sol)).unwrap();
        prop_assert!(bc.general_max() <= 1e-10);
        prop_assert!(bc.simplified_max().unwrap() <= 1e-10);
    }

    #[test]
    fn gaussian_ode_matches_closed_form(c1 in 0.5f64..3.0, d0 in 0.5f64..4.0, lambda in 0.5f64..5.0) {
        let phys = PhysConstants { lambda };
        let params = PowerLawParams { d0, s0: linked_s0(2.0, -0.7, &phys).unwrap(), sigma0: -0.7, m: -1.0, n: 2.0 };
        let exact = |r: f64| c1 * (-r * r / (4.0 * d0)).exp();
        let problem = ProfileOdeProblem { params, phys, beta: 0.0, r0: 0.1, r1: 2.0, lambda0: exact(0.1), slope0: None };
        let tr = integrate_profile_ode(&problem, &OdeSpec::default()).unwrap();
        for r in [0.3, 0.9, 1.5, 2.0] {
            prop_assert!((tr.lambda(r).unwrap() / exact(r) - 1.0).abs() <= 1e-6);
        }
    }
}

#[test]
fn reduced_plane_fields_are_the_t1_slice() {
    let sol = SolutionFamily::PowerMoving(PowerMoving::new(1.0, 1.0, 1.0, 3.0, 4.0).unwrap());
    let plane = ReducedPlaneFields { profiles: reduced_profiles_of(&sol) };
    for (x, y) in [(0.3, 0.1), (-0.5, 0.4), (0.02, -0.7)] {
        let [a, u1, u2, p] = plane.eval(x, y).unwrap();
        let v = sol.value(1.0, x, y).unwrap();
        for (u, w) in [(a, v.alpha), (u1, v.u1), (u2, v.u2), (p, v.p)] {
            assert!(rel(u, w) <= 1e-12, "{u} vs {w}");
        }
    }
}

#[test]
fn moving_front_reduced_kinematic_condition_uses_gamma() {
    let sol = SolutionFamily::PowerMoving(PowerMoving::new(1.0, 1.0, 1.0, 3.0, 4.0).unwrap());
    let pr = reduced_profiles_of(&sol);
    assert_eq!(pr.gamma().unwrap(), 0.5);
    let bc = reduced_bc_residual(&pr).unwrap();
    assert!(bc.general_max() <= 1e-10, "{:?}", bc.general);
    // gamma != 0: the (R, P, R') form does not apply
    assert!(bc.simplified.is_none());
}

use proptest::prelude::*;

use tumour_bvp::field::{ConstantState, Field, FieldJet};
use tumour_bvp::model::{ConstitutiveTriplet, FieldValue};
use tumour_bvp::numerics::Dd;
use tumour_bvp::residuals::{boundary_residual, governing_residual, Engine, SampleSet};
use tumour_bvp::solutions::{boundary_of, BoundaryCircle, SolutionFamily, StationaryFront, SteadyState};
use tumour_bvp::symmetry::{orbit_check, GroupElement, TimeFunction};
use tumour_bvp::Result;

fn fig34() -> SolutionFamily {
    SolutionFamily::Stationary(StationaryFront::new(5.0, 2.0, 2.0, 4.0, 2.0).unwrap())
}

fn small_samples() -> SampleSet {
    SampleSet { n_r: 12, n_theta: 8, ..Default::default() }
}

/// Multiplies the pressure gradient of the wrapped field.
struct ScaledPressureGradient<F> {
    inner: F,
    factor: f64,
}

impl<F: Field> Field for ScaledPressureGradient<F> {
    fn value(&self, t: f64, x: f64, y: f64) -> Result<FieldValue> {
        self.inner.value(t, x, y)
    }

    fn jet_dd(&self, t: f64, x: f64, y: f64) -> Result<FieldJet<Dd>> {
        let mut j = self.inner.jet_dd(t, x, y)?;
        j.p.x = j.p.x * self.factor;
        j.p.y = j.p.y * self.factor;
        Ok(j)
    }
}

#[test]
fn shifted_proliferation_scale_shows_in_mass_equation() {
    let sol = fig34();
    let mut p = sol.triplet().power_law().unwrap();
    p.s0 += 1e-3;
    let pts = small_samples().points(&boundary_of(&sol));
    let r = governing_residual(&sol, &ConstitutiveTriplet::PowerLaw(p), &sol.phys(), &pts, Engine::Analytic).unwrap();
    assert!(r.get("mass").unwrap().linf >= 1e-4, "{:?}", r.get("mass"));
}

#[test]
fn misplaced_front_shows_in_pressure_condition() {
    let sol = fig34();
    let b = boundary_of(&sol);
    let wrong = BoundaryCircle::new(1.1 * b.delta, b.kappa).unwrap();
    let r = boundary_residual(&sol, &wrong, &sol.phys(), 1.0, 32, Engine::Analytic).unwrap();
    assert!(r.get("pressure").unwrap().linf > 0.0);
    let right = boundary_residual(&sol, &b, &sol.phys(), 1.0, 32, Engine::Analytic).unwrap();
    assert!(right.get("pressure").unwrap().linf <= 1e-12);
}

#[test]
fn pressure_gradient_corruption_is_detected() {
    let sol = fig34();
    let pts = small_samples().points(&boundary_of(&sol));
    let bad = ScaledPressureGradient { inner: sol, factor: 1.01 };
    let r = governing_residual(&bad, &sol.triplet(), &sol.phys(), &pts, Engine::Analytic).unwrap();
    assert!(r.max_linf() >= 5e-3, "{}", r.max_linf());
    assert!(r.get("momentum_x").unwrap().linf >= 5e-3);
}

#[test]
fn singular_samples_are_rejected_not_fatal() {
    let sol = fig34();
    let mut pts = small_samples().points(&boundary_of(&sol));
    pts.push(tumour_bvp::residuals::SamplePoint { t: 1.0, x: 0.0, y: 0.0 });
    let r = governing_residual(&sol, &sol.triplet(), &sol.phys(), &pts, Engine::Analytic).unwrap();
    assert_eq!(r.rejected, vec![pts.len() - 1]);
    assert_eq!(r.count, pts.len() - 1);
}

#[test]
fn galilei_boost_of_constant_state_stays_a_solution() {
    let state = ConstantState { alpha: 1.5, u1: 0.2, u2: -0.1, p: 3.0 };
    let sol = fig34();
    let b = BoundaryCircle::new(1.0, 0.0).unwrap();
    let pts = small_samples().points(&b);
    for eps in [-1.0, -0.5, 0.5, 1.0] {
        let g = GroupElement::Galilei {
            g: TimeFunction::Polynomial { coeffs: vec![0.0, 1.0, 0.5] },
            axis: tumour_bvp::symmetry::Axis::X,
            eps,
        };
        let c = orbit_check(&g, state, &sol.triplet(), &sol.phys(), &pts, Engine::Analytic).unwrap();
        assert!(c.passed, "{c:?}");
    }
}

#[test]
fn time_translation_of_steady_state() {
    let sol = SolutionFamily::Steady(SteadyState::new(1.5, 1.0, 1.2, 1.0, 2.0, 4.0, 1.0).unwrap());
    let pts = SampleSet { times: vec![1.0], ..small_samples() }.points(&boundary_of(&sol));
    for eps in [-0.5, 0.5, 1.0] {
        let c = orbit_check(&GroupElement::TimeTranslation { eps }, sol, &sol.triplet(), &sol.phys(), &pts, Engine::Analytic)
            .unwrap();
        assert!(c.passed, "{c:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn l2_is_bounded_by_sqrt_count_times_linf(c3 in 1.0f64..6.0, c4 in -1.0f64..2.0, d0 in 0.5f64..4.0) {
        let sol = SolutionFamily::Stationary(StationaryFront::new(c3, c4, 2.0, 4.0, d0).unwrap());
        let pts = SampleSet { n_r: 6, n_theta: 4, ..Default::default() }.points(&boundary_of(&sol));
        let r = governing_residual(&sol, &sol.triplet(), &sol.phys(), &pts, Engine::Analytic).unwrap();
        for e in &r.equations {
            prop_assert!(e.l2 <= (r.count as f64).sqrt() * e.linf * (1.0 + 1e-12), "{e:?}");
        }
    }

    #[test]
    fn stationary_front_solves_the_problem(c3 in 1.0f64..6.0, c4 in -1.0f64..2.0, d0 in 0.5f64..4.0) {
        let sol = SolutionFamily::Stationary(StationaryFront::new(c3, c4, 2.0, 4.0, d0).unwrap());
        let b = boundary_of(&sol);
        prop_assert!((b.delta - (-c4 / c3).exp()).abs() <= 1e-15 * b.delta);
        let bc = boundary_residual(&sol, &b, &sol.phys(), 1.0, 16, Engine::Analytic).unwrap();
        prop_assert!(bc.max_linf() <= 1e-10, "{}", bc.max_linf());
    }

    #[test]
    fn residuals_are_deterministic(eps in -1.0f64..1.0) {
        let sol = fig34();
        let pts = SampleSet { n_r: 6, n_theta: 4, ..Default::default() }.points(&boundary_of(&sol));
        let e = GroupElement::Rotation { f: TimeFunction::sin(), eps };
        let a = orbit_check(&e, sol, &sol.triplet(), &sol.phys(), &pts, Engine::Analytic).unwrap();
        let b = orbit_check(&e, sol, &sol.triplet(), &sol.phys(), &pts, Engine::Analytic).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rotations_and_pressure_shifts_preserve_solutions(eps in -3.0f64..3.0, a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let sol = fig34();
        let pts = SampleSet { n_r: 6, n_theta: 4, ..Default::default() }.points(&boundary_of(&sol));
        for e in [
            GroupElement::Rotation { f: TimeFunction::Polynomial { coeffs: vec![a, b] }, eps },
            GroupElement::PressureShift { f: TimeFunction::Sine { amplitude: a, frequency: b, phase: 0.3 }, eps },
        ] {
            let c = orbit_check(&e, sol, &sol.triplet(), &sol.phys(), &pts, Engine::Analytic).unwrap();
            prop_assert!(c.passed, "{:?}", c);
        }
    }
}

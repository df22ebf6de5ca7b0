//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N ... PASS/FAIL (seconds)` line to stderr, outside the
//! harness's output capture.

use std::io::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use tempfile::TempDir;

use tumour_bvp::cli::{commands, figure, RunConfig};
use tumour_bvp::field::{ConstantState, Field, FieldJet, PolynomialField};
use tumour_bvp::model::{linked_s0, FieldValue, PhysConstants, PowerLawParams};
use tumour_bvp::numerics::{
    exp_over_z_integral, exp_over_z_integral_quad, fd_derivative, richardson_order, Dd, OdeSpec,
};
use tumour_bvp::reduction::{
    default_radii, integrate_profile_ode, lift_profiles, reduced_bc_residual, reduced_ode_residual, reduced_profiles_of,
    steady_residual, ProfileOdeProblem,
};
use tumour_bvp::residuals::{
    boundary_residual, cross_engine_check, governing_residual, Engine, SamplePoint, SampleSet,
};
use tumour_bvp::solutions::{
    boundary_of, regular_c3, stationary_constants, BoundaryCircle, GaussianDecay, LogMoving, PowerMoving,
    SolutionFamily, StationaryFront, SteadyState,
};
use tumour_bvp::symmetry::{orbit_check, Axis, GroupElement, TimeFunction};

fn report(n: u8, title: &str, passed: bool, elapsed: Duration) {
    let status = if passed { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n} {title:<28} {status} ({:.3} s)", elapsed.as_secs_f64());
}

/// Runs `body`, prints the criterion line and fails on any violation or on
/// exceeding `limit`.
fn criterion(n: u8, title: &str, limit: Duration, body: impl FnOnce() -> Vec<String>) {
    let start = Instant::now();
    let failures = body();
    let elapsed = start.elapsed();
    let on_time = elapsed <= limit;
    report(n, title, failures.is_empty() && on_time, elapsed);
    assert!(failures.is_empty(), "criterion {n}: {failures:#?}");
    assert!(on_time, "criterion {n} took {elapsed:?}, limit {limit:?}");
}

fn require(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn fig12() -> SolutionFamily {
    SolutionFamily::Gaussian(GaussianDecay::new(1.0, 0.5, 5.0, 3.0, 0.75, 4.0, -3.0, 1.0).unwrap())
}

fn fig34() -> SolutionFamily {
    SolutionFamily::Stationary(StationaryFront::new(5.0, 2.0, 2.0, 4.0, 2.0).unwrap())
}

fn steady() -> SolutionFamily {
    SolutionFamily::Steady(SteadyState::new(1.5, 1.0, 1.2, 1.0, 2.0, 4.0, 1.0).unwrap())
}

fn power_moving() -> SolutionFamily {
    SolutionFamily::PowerMoving(PowerMoving::new(1.0, 1.0, 1.0, 3.0, 4.0).unwrap())
}

fn log_moving() -> SolutionFamily {
    SolutionFamily::LogMoving(LogMoving::new(2.0, 1.0, -1.0, 1.0).unwrap())
}

fn all_families() -> [SolutionFamily; 5] {
    [fig12(), fig34(), power_moving(), log_moving(), steady()]
}

fn default_samples(sol: &SolutionFamily) -> Vec<SamplePoint> {
    let set = if sol.is_time_dependent() { SampleSet::default() } else { SampleSet::with_times(vec![1.0]) };
    set.points(&boundary_of(sol))
}

#[test]
fn criterion_1_caption_radii() {
    criterion(1, "caption radii", Duration::from_secs(1), || {
        let mut f = vec![];
        let dir = TempDir::new().unwrap();
        for (c3, c4, d0, caption) in [(5.0, 2.0, 2.0, 0.67), (1.0, -2.5, 8.0, 12.18)] {
            let text = format!("[family]\nkind = \"stationary\"\nc3 = {c3:?}\nc4 = {c4:?}\nn = 2.0\nlambda = 4.0\nd0 = {d0:?}\n");
            let out = commands::validate(&RunConfig::parse(&text).unwrap(), dir.path()).unwrap();
            require(&mut f, out.passed, || format!("validate failed for c3={c3}"));
            let delta = stationary_constants(c3, c4, 2.0, 4.0, d0).unwrap().delta;
            require(&mut f, (delta - (-c4 / c3).exp()).abs() <= 1e-15 * delta, || format!("delta {delta}"));
            require(&mut f, (delta - caption).abs() <= 0.005, || format!("delta {delta} vs caption {caption}"));
            let printed = format!("delta       {delta:.6}");
            require(&mut f, out.text.contains(&printed), || format!("missing `{printed}` in\n{}", out.text));
        }
        f
    });
}

#[test]
fn criterion_2_stationary_and_steady_residuals() {
    criterion(2, "stationary/steady residuals", Duration::from_secs(10), || {
        let mut f = vec![];
        for (sol, times) in [(fig34(), vec![0.5, 1.0, 2.0]), (steady(), vec![1.0])] {
            let b = boundary_of(&sol);
            let pts = SampleSet::with_times(times.clone()).points(&b);
            let gov = governing_residual(&sol, &sol.triplet(), &sol.phys(), &pts, Engine::Analytic).unwrap();
            require(&mut f, gov.max_linf() <= 1e-9 && gov.rejected.is_empty(), || {
                format!("{} governing {:e}", sol.id(), gov.max_linf())
            });
            for t in times {
                let bc = boundary_residual(&sol, &b, &sol.phys(), t, 64, Engine::Analytic).unwrap();
                require(&mut f, bc.max_linf() <= 1e-10, || format!("{} boundary at t={t}: {:e}", sol.id(), bc.max_linf()));
            }
        }
        f
    });
}

#[test]
fn criterion_3_family_coverage() {
    criterion(3, "family coverage", Duration::from_secs(20), || {
        let mut f = vec![];
        let gauss = fig12();
        if let SolutionFamily::Gaussian(g) = gauss {
            require(&mut f, g.c3 == g.regular_c3(), || "Fig 1/2 c3 is not the regular value".into());
        }
        for sol in [gauss, power_moving(), log_moving()] {
            let gov = governing_residual(&sol, &sol.triplet(), &sol.phys(), &default_samples(&sol), Engine::Analytic).unwrap();
            require(&mut f, gov.max_linf() <= 1e-8 && gov.rejected.is_empty(), || {
                format!("{} governing {:e}", sol.id(), gov.max_linf())
            });
        }
        // the moving fronts change radius with time
        for sol in [power_moving(), log_moving()] {
            let b = boundary_of(&sol);
            require(&mut f, b.radius(2.0) != b.radius(0.5), || format!("{} front is fixed", sol.id()));
        }
        f
    });
}

#[test]
fn criterion_4_figure_one_regularity() {
    criterion(4, "figure 1 regularity", Duration::from_secs(5), || {
        let mut f = vec![];
        let c3 = regular_c3(1.0, 3.0, -3.0, 4.0).unwrap();
        require(&mut f, (c3 - 0.5).abs() <= 1e-15, || format!("regular c3 = {c3}"));
        let sol = fig12();
        require(&mut f, sol.regularity().velocity_bounded, || "regularity flag".into());
        // with the 1/r part removed, |u| vanishes linearly at the origin
        for t in [0.5, 1.0, 2.0] {
            let speed = |r: f64| {
                let v = sol.value(t, r, 0.0).unwrap();
                v.u1.hypot(v.u2)
            };
            let (a, b) = (speed(1e-3), speed(1e-4));
            require(&mut f, a.is_finite() && a <= 1e-2, || format!("|u|(1e-3) = {a} at t={t}"));
            require(&mut f, (a / b - 10.0).abs() <= 1e-3, || format!("|u| ratio {} at t={t}", a / b));
        }
        f
    });
}

#[test]
fn criterion_5_orbit_suite() {
    criterion(5, "orbit suite", Duration::from_secs(30), || {
        let mut f = vec![];
        let small = SampleSet { n_r: 16, n_theta: 8, ..Default::default() };
        let stationary = fig34();
        let st_pts = small.points(&boundary_of(&stationary));
        let gauss = fig12();
        let g_pts = small.points(&boundary_of(&gauss));
        let sd = steady();
        let sd_pts = SampleSet { times: vec![1.0], ..small.clone() }.points(&boundary_of(&sd));
        let state = ConstantState { alpha: 1.5, u1: 0.2, u2: -0.1, p: 3.0 };
        let unit = SampleSet { n_r: 8, n_theta: 8, ..Default::default() }.points(&BoundaryCircle::new(1.0, 0.0).unwrap());

        for eps in [-1.0, -0.5, 0.5, 1.0] {
            let mut run = |name: &str, e: GroupElement, check: tumour_bvp::Result<tumour_bvp::symmetry::OrbitCheck>| {
                match check {
                    Ok(c) => require(&mut f, c.passed && c.ratio <= 10.0, || format!("{name} eps={eps}: {c:?}")),
                    Err(err) => f.push(format!("{name} {e:?}: {err}")),
                }
            };
            let tri = stationary.triplet();
            let ph = stationary.phys();
            for (name, e) in [
                ("rotation f=1", GroupElement::Rotation { f: TimeFunction::constant(1.0), eps }),
                ("rotation f=sin t", GroupElement::Rotation { f: TimeFunction::sin(), eps }),
                ("pressure shift", GroupElement::PressureShift { f: TimeFunction::sin(), eps }),
                ("scale", GroupElement::Scale { eps, m: -1.0, n: 2.0 }),
            ] {
                run(name, e.clone(), orbit_check(&e, stationary, &tri, &ph, &st_pts, Engine::Analytic));
            }
            let e = GroupElement::Scale { eps, m: -1.0, n: 3.0 };
            run("scale (gaussian)", e.clone(), orbit_check(&e, gauss, &gauss.triplet(), &gauss.phys(), &g_pts, Engine::Analytic));
            let e = GroupElement::Galilei { g: TimeFunction::Polynomial { coeffs: vec![0.0, 1.0, 0.5] }, axis: Axis::Y, eps };
            run("galilei", e.clone(), orbit_check(&e, state, &tri, &ph, &unit, Engine::Analytic));
            let e = GroupElement::TimeTranslation { eps };
            run("time translation", e.clone(), orbit_check(&e, sd, &sd.triplet(), &sd.phys(), &sd_pts, Engine::Analytic));
        }
        f
    });
}

#[test]
fn criterion_6_reduction_cross_checks() {
    criterion(6, "reduction cross-checks", Duration::from_secs(10), || {
        let mut f = vec![];
        // lift identity on every scale family
        for sol in [fig12(), fig34(), power_moving(), log_moving()] {
            let lifted = lift_profiles(reduced_profiles_of(&sol)).unwrap();
            let pts = SampleSet { n_r: 8, n_theta: 6, ..Default::default() }.points(&boundary_of(&sol));
            for pt in pts {
                let (a, b) = (lifted.value(pt.t, pt.x, pt.y).unwrap(), sol.value(pt.t, pt.x, pt.y).unwrap());
                for (u, v) in [(a.alpha, b.alpha), (a.u1, b.u1), (a.u2, b.u2), (a.p, b.p)] {
                    require(&mut f, (u - v).abs() <= 1e-10 * v.abs().max(1.0), || format!("{} lift {u} vs {v}", sol.id()));
                }
            }
        }
        // radial residuals of the Gaussian/stationary and steady profiles
        for sol in [fig12(), fig34()] {
            let pr = reduced_profiles_of(&sol);
            let rep = reduced_ode_residual(&pr, &default_radii(pr.delta, 64)).unwrap();
            require(&mut f, rep.max_linf() <= 1e-9, || format!("{} reduced {:e}", sol.id(), rep.max_linf()));
        }
        let pr = reduced_profiles_of(&steady());
        let rep = steady_residual(&pr, &default_radii(pr.delta, 64)).unwrap();
        require(&mut f, rep.governing.max_linf() <= 1e-9, || format!("steady reduced {:e}", rep.governing.max_linf()));
        require(&mut f, rep.boundary.general_max() <= 1e-10, || format!("steady reduced bc {:?}", rep.boundary));

        // profile ODE against the Gaussian (c2 = 0) and power closed forms
        let phys = PhysConstants { lambda: 4.0 };
        let (c1, d0) = (1.3, 2.0);
        let gauss = |r: f64| c1 * (-r * r / (4.0 * d0)).exp();
        let params = PowerLawParams { d0, s0: linked_s0(2.0, -0.7, &phys).unwrap(), sigma0: -0.7, m: -1.0, n: 2.0 };
        let problem = ProfileOdeProblem { params, phys, beta: 0.0, r0: 0.05, r1: 2.0, lambda0: gauss(0.05), slope0: None };
        let tr = integrate_profile_ode(&problem, &OdeSpec::default()).unwrap();
        for r in default_radii(2.0, 20).into_iter().filter(|&r| r >= 0.05) {
            let rel = (tr.lambda(r).unwrap() / gauss(r) - 1.0).abs();
            require(&mut f, rel <= 1e-6, || format!("gaussian profile at r={r}: rel {rel:e}"));
        }
        let (c1, m, lambda) = (0.8, 1.0, 2.0);
        let phys = PhysConstants { lambda };
        let d0 = (1.0 + m) / (4.0 * (1.0 + lambda) * c1 * c1);
        let params = PowerLawParams { d0, s0: linked_s0(3.0, 0.5, &phys).unwrap(), sigma0: 0.5, m, n: 3.0 };
        let problem = ProfileOdeProblem { params, phys, beta: 0.0, r0: 1.0, r1: 3.0, lambda0: c1, slope0: None };
        let tr = integrate_profile_ode(&problem, &OdeSpec::default()).unwrap();
        for r in [1.2, 1.7, 2.4, 3.0] {
            let rel = (tr.lambda(r).unwrap() / (c1 * r) - 1.0).abs();
            require(&mut f, rel <= 1e-6, || format!("power profile at r={r}: rel {rel:e}"));
        }

        // general and simplified boundary sets agree: both vanish on the
        // stationary profiles and both detect a perturbed c3
        let SolutionFamily::Stationary(st) = fig34() else { unreachable!() };
        let g = st.inner;
        let off = SolutionFamily::Gaussian(
            GaussianDecay::new(g.c1, 1.1 * g.c3, g.c4, g.n, g.d0, g.lambda, g.sigma0, g.delta).unwrap(),
        );
        let ok = reduced_bc_residual(&reduced_profiles_of(&fig34())).unwrap();
        let bad = reduced_bc_residual(&reduced_profiles_of(&off)).unwrap();
        require(&mut f, ok.general_max() <= 1e-10 && ok.simplified_max().unwrap() <= 1e-10, || format!("{ok:?}"));
        require(&mut f, bad.general_max() > 1e-6 && bad.simplified_max().unwrap() > 1e-6, || format!("{bad:?}"));
        f
    });
}

/// Multiplies the pressure gradient of the wrapped field.
struct ScaledPressureGradient<F>(F, f64);

impl<F: Field> Field for ScaledPressureGradient<F> {
    fn value(&self, t: f64, x: f64, y: f64) -> tumour_bvp::Result<FieldValue> {
        self.0.value(t, x, y)
    }

    fn jet_dd(&self, t: f64, x: f64, y: f64) -> tumour_bvp::Result<FieldJet<Dd>> {
        let mut j = self.0.jet_dd(t, x, y)?;
        j.p.x = j.p.x * self.1;
        j.p.y = j.p.y * self.1;
        Ok(j)
    }
}

#[test]
fn criterion_7_numerics_gates() {
    criterion(7, "numerics gates", Duration::from_secs(20), || {
        let mut f = vec![];
        // finite-difference order on the Fig 3/4 concentration and pressure
        let sol = fig34();
        let (t, x, y) = (1.0, 0.3, 0.1);
        let jet = sol.jet(t, x, y).unwrap();
        for (scheme, min_order) in [(2u8, 1.9), (4, 3.8)] {
            for (order, exact, pick) in [
                (1u8, jet.alpha.x, (|v: FieldValue| v.alpha) as fn(FieldValue) -> f64),
                (2, jet.p.xx, |v: FieldValue| v.p),
            ] {
                // four halvings from 0.04: below h = 0.005 the second
                // difference of f64 pressure values reaches round-off
                let errors: Vec<f64> = (0..4)
                    .map(|k| {
                        let h = 0.04 / 2f64.powi(k);
                        let d = fd_derivative(|x| pick(sol.value(t, x, y).unwrap()), x, order, scheme, h).unwrap();
                        (d - exact).abs()
                    })
                    .collect();
                let p = richardson_order(&errors).unwrap();
                require(&mut f, p >= min_order, || format!("scheme {scheme}, derivative {order}: order {p}"));
            }
        }

        // exp_over_z_integral: series against quadrature
        let mut worst: f64 = 0.0;
        for a in [0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0] {
            for r in [0.01, 0.05, 0.2, 1.0, 3.0, 10.0] {
                for d in [0.02, 0.5, 1.5, 5.0, 12.0, 20.0] {
                    if r >= d {
                        continue;
                    }
                    let s = exp_over_z_integral(a, r, d).unwrap();
                    let q = exp_over_z_integral_quad(a, r, d).unwrap();
                    worst = worst.max((s - q).abs() / s.abs().max(1.0));
                }
            }
        }
        require(&mut f, worst <= 1e-12, || format!("exp_over_z dual path {worst:e}"));

        // analytic jets against finite differences, every family
        for sol in all_families() {
            let b = boundary_of(&sol);
            let d = cross_engine_check(&sol, &b, &default_samples(&sol), 1e-4).unwrap();
            require(&mut f, d <= 1e-6, || format!("{} AD vs FD {d:e}", sol.id()));
        }
        let poly = PolynomialField {
            components: [
                vec![(1.0, 0, 0, 0), (0.3, 1, 1, 1)],
                vec![(1.0, 0, 3, 0), (-0.5, 0, 1, 2)],
                vec![(0.2, 0, 2, 1)],
                vec![(1.0, 1, 1, 1), (2.0, 0, 0, 2)],
            ],
        };
        let pts = SampleSet { n_r: 6, n_theta: 6, ..Default::default() }.points(&BoundaryCircle::new(1.0, 0.0).unwrap());
        let d = cross_engine_check(&poly, &BoundaryCircle::new(1.0, 0.0).unwrap(), &pts, 1e-4).unwrap();
        require(&mut f, d <= 1e-12, || format!("polynomial AD vs FD {d:e}"));

        // a 1% error in the pressure gradient is visible
        let sol = fig34();
        let pts = SampleSet { n_r: 16, n_theta: 8, ..Default::default() }.points(&boundary_of(&sol));
        let r = governing_residual(&ScaledPressureGradient(sol, 1.01), &sol.triplet(), &sol.phys(), &pts, Engine::Analytic)
            .unwrap();
        require(&mut f, r.max_linf() >= 5e-3, || format!("corrupted gradient residual {:e}", r.max_linf()));
        f
    });
}

fn read_dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn criterion_8_determinism() {
    criterion(8, "determinism", Duration::from_secs(20), || {
        let mut f = vec![];
        let cfg = RunConfig::parse(
            "[family]\nkind = \"gaussian\"\nc1 = 1.0\nc3 = 0.5\nc4 = 5.0\nn = 3.0\nd0 = 0.75\nlambda = 4.0\nsigma0 = -3.0\ndelta = 1.0\n",
        )
        .unwrap();
        let runs: Vec<TempDir> = (0..2).map(|_| TempDir::new().unwrap()).collect();
        for dir in &runs {
            commands::verify(&cfg, dir.path(), 1.0).unwrap();
            for id in 1..=5 {
                figure::figure(id, 41, 0.01, dir.path()).unwrap();
            }
        }
        let (a, b) = (read_dir_bytes(runs[0].path()), read_dir_bytes(runs[1].path()));
        require(&mut f, a.len() == 1 + 5 * 2 + 5 * 2, || format!("{} files", a.len()));
        for ((na, ba), (nb, bb)) in a.iter().zip(&b) {
            require(&mut f, na == nb && ba == bb, || format!("{na} differs"));
        }
        f
    });
}

//! The chain from the radial system to closed-form profiles: the first
//! integral, the separable profile ODE, the overdetermined systems for
//! `Λ*` and the pressure quadrature.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{constitutive_eval_in, ConstitutiveTriplet, PhysConstants, PowerLawParams, ScalarLaw};
use crate::numerics::dd::{Dd, Scalar};
use crate::numerics::dual::{Dual, HyperDual, Real};
use crate::numerics::ode::{ode_integrate, OdeSpec, Trajectory};
use crate::numerics::quad::{quad_adaptive, QuadratureSpec};
use crate::residuals::{assemble, reduce, EquationNorm, Residual, SamplePoint};
use crate::reduction::ReducedProfiles;

/// `R* = β/r + d0 Λ*^m P*'`.
pub fn first_integral_r<T: Real>(beta: f64, d0: f64, m: f64, lambda: T, p_prime: T, r: T) -> T {
    first_integral_r_with(beta, lambda.powf(m) * d0, p_prime, r)
}

/// `R* = β/r + D P*'` for a mobility value `D = D(Λ*)`.
pub fn first_integral_r_with<T: Real>(beta: f64, mobility: T, p_prime: T, r: T) -> T {
    r.recip() * beta + mobility * p_prime
}

/// A concentration profile `Λ*(r)`.
#[derive(Debug, Clone)]
pub enum LambdaProfile {
    /// `c1 exp(c2 r^{(2+2λ)/(2+λ)} - r²/(4 d0))`.
    Exponential { c1: f64, c2: f64, d0: f64, lambda: f64 },
    /// `c1 r^{2/(1+m)}`.
    Power { c1: f64, m: f64 },
    Constant(f64),
    /// `Λ*` of a set of reduced profiles.
    Reduced(Box<ReducedProfiles>),
}

impl LambdaProfile {
    pub fn eval<T: Real>(&self, r: T) -> Result<T> {
        match self {
            LambdaProfile::Exponential { c1, c2, d0, lambda } => {
                let k = (2.0 + 2.0 * lambda) / (2.0 + lambda);
                let arg = if *c2 == 0.0 {
                    r * r * (-1.0 / (4.0 * d0))
                } else {
                    r.powf(k) * *c2 - r * r / (4.0 * d0)
                };
                Ok(arg.exp() * *c1)
            }
            LambdaProfile::Power { c1, m } => Ok(r.powf(2.0 / (1.0 + m)) * *c1),
            LambdaProfile::Constant(c) => Ok(T::cst(*c)),
            LambdaProfile::Reduced(p) => Ok(p.eval(r)?[0]),
        }
    }

    /// `[Λ*, Λ*', Λ*'']` at `r`.
    pub fn derivs(&self, r: f64) -> Result<[Dd; 3]> {
        let seed: HyperDual<Dd> = Dual::new(Dual::var(Dd::from(r)), Dual::constant(Dd::from(1.0)));
        let v = self.eval(seed)?;
        Ok([v.re.re, v.re.eps, v.eps.eps])
    }
}

/// Initial-value problem for the separable profile ODE
///
/// ```text
/// ((1+m)(1+λ) Λ^m + (n-1)(n σ0 - (n-1)(2+λ) s0) Λ^{m+n-1}) Λ' = (1+m) r/(2 d0) + (n-1) β/(d0 r).
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileOdeProblem {
    pub params: PowerLawParams,
    pub phys: PhysConstants,
    pub beta: f64,
    pub r0: f64,
    pub r1: f64,
    /// `Λ*(r0)`.
    pub lambda0: f64,
    /// `Λ*'(r0)` for the degenerate case, where the separable ODE is
    /// empty and the second-order equation is integrated instead. Defaults
    /// to `-r0 Λ0/(2 d0)`.
    pub slope0: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OdeForm {
    /// State `[Λ*]`.
    Separable,
    /// State `[ln Λ*, (ln Λ*)']`, from
    /// `w'' = λ w'/((2+λ) r) - e^{-(m+1) w}/(d0 (2+λ))`.
    LogSecondOrder,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTrajectory {
    pub form: OdeForm,
    pub trajectory: Trajectory,
}

impl ProfileTrajectory {
    /// `Λ*(r)` from the dense output.
    pub fn lambda(&self, r: f64) -> Option<f64> {
        let y = self.trajectory.eval(r)?;
        Some(match self.form {
            OdeForm::Separable => y[0],
            OdeForm::LogSecondOrder => y[0].exp(),
        })
    }
}

/// Integrates the separable profile ODE from `r0` to `r1`.
///
/// When both coefficients of `Λ*'` and the right side vanish identically
/// (`m = -1`, `β = 0` and the linked `s0`), the equation carries no
/// information and the first equation of the overdetermined system is
/// integrated in `w = ln Λ*` instead.
pub fn integrate_profile_ode(problem: &ProfileOdeProblem, spec: &OdeSpec) -> Result<ProfileTrajectory> {
    let ProfileOdeProblem { params, phys, beta, r0, r1, lambda0, slope0 } = *problem;
    let PowerLawParams { d0, s0, sigma0, m, n } = params;
    let l = phys.lambda;
    if !(d0 > 0.0) {
        return Err(Error::Restriction("d0 > 0 required".into()));
    }
    if !(lambda0 > 0.0) {
        return Err(Error::Domain(format!("initial concentration must be positive, got {lambda0}")));
    }
    if !(r0 > 0.0 && r1 > 0.0) {
        return Err(Error::Domain("the profile ODE is singular at r = 0".into()));
    }
    let a1 = (1.0 + m) * (1.0 + l);
    let link = n * sigma0 - (n - 1.0) * (2.0 + l) * s0;
    let link_scale = (n * sigma0).abs() + ((n - 1.0) * (2.0 + l) * s0).abs();
    let a2 = if link.abs() <= 1e-12 * link_scale { 0.0 } else { (n - 1.0) * link };
    let b1 = (1.0 + m) / (2.0 * d0);
    let b2 = (n - 1.0) * beta / d0;

    if a1 == 0.0 && a2 == 0.0 {
        if b1 != 0.0 || b2 != 0.0 {
            return Err(Error::Restriction(
                "the coefficient of the derivative vanishes identically but the right side does not".into(),
            ));
        }
        let w0 = lambda0.ln();
        let dw0 = slope0.map(|s| s / lambda0).unwrap_or(-r0 / (2.0 * d0));
        let trajectory = ode_integrate(
            |r, y, dy| {
                dy[0] = y[1];
                dy[1] = l * y[1] / ((2.0 + l) * r) - (-(m + 1.0) * y[0]).exp() / (d0 * (2.0 + l));
                Ok(())
            },
            &[w0, dw0],
            r0,
            r1,
            spec,
        )?;
        return Ok(ProfileTrajectory { form: OdeForm::LogSecondOrder, trajectory });
    }

    let coeff = move |lam: f64| a1 * lam.powf(m) + a2 * lam.powf(m + n - 1.0);
    let c0 = coeff(lambda0);
    if c0 == 0.0 || !c0.is_finite() {
        return Err(Error::Integration { at: r0, reason: "coefficient of the derivative vanishes".into() });
    }
    let trajectory = ode_integrate(
        |r, y, dy| {
            let lam = y[0];
            if !(lam > 0.0) {
                return Err(format!("concentration left the positive axis ({lam})"));
            }
            let c = coeff(lam);
            let size = (a1 * lam.powf(m)).abs() + (a2 * lam.powf(m + n - 1.0)).abs();
            if c * c0.signum() <= 1e-12 * size {
                return Err(format!("coefficient of the derivative vanishes near concentration {lam}"));
            }
            dy[0] = (b1 * r + b2 / r) / c;
            Ok(())
        },
        &[lambda0],
        r0,
        r1,
        spec,
    )?;
    Ok(ProfileTrajectory { form: OdeForm::Separable, trajectory })
}

/// Which overdetermined system for `Λ*` to check.
#[derive(Debug, Clone)]
pub enum OverdeterminedSystem {
    /// Power-law laws:
    ///
    /// ```text
    /// Λ^m Λ'' - Λ^{m-1} Λ'² - λ Λ^m Λ'/((2+λ) r) + 1/(d0(2+λ)) = 0
    /// ((1+m) r + 2(n-1)β/r)(Λ'' - Λ'²/Λ) + 2(n-1)(nσ0/(2+λ) - (n-1)s0) Λ^{n-1} Λ'
    ///     + (1+m - 2(n-1)βλ/((2+λ) r²)) Λ' = 0
    /// ```
    PowerLaw { params: PowerLawParams, phys: PhysConstants, beta: f64 },
    /// General steady laws:
    ///
    /// ```text
    /// Λ'' - Λ'²/Λ - λ Λ'/((2+λ) r) + 1/((2+λ) D(Λ)) = 0
    /// D(Λ) (S/Λ - S' + (ΛΣ)'/(2+λ)) Λ' = β/((2+λ) r)
    /// ```
    General { triplet: ConstitutiveTriplet, phys: PhysConstants, beta: f64 },
}

const OVERDETERMINED_NAMES: [&str; 2] = ["first", "second"];

fn overdetermined_pointwise(system: &OverdeterminedSystem, r: f64, v: [Dd; 3]) -> Result<[Residual; 2]> {
    let [a, a1, a2] = v;
    let rd = Dd::from(r);
    match system {
        OverdeterminedSystem::PowerLaw { params, phys, beta } => {
            let PowerLawParams { d0, s0, sigma0, m, n } = *params;
            let (l, b) = (phys.lambda, *beta);
            let am = Scalar::powf(a, m);
            let first = [
                am * a2,
                -(Scalar::powf(a, m - 1.0) * a1 * a1),
                -(am * a1 * l) / (rd * (2.0 + l)),
                Dd::from(1.0) / (d0 * (2.0 + l)),
            ];
            let lead = rd * (1.0 + m) + Dd::from(2.0 * (n - 1.0) * b) / rd;
            let link = 2.0 * (n - 1.0) * (n * sigma0 / (2.0 + l) - (n - 1.0) * s0);
            let second = [
                lead * a2,
                -(lead * a1 * a1 / a),
                Scalar::powf(a, n - 1.0) * a1 * link,
                a1 * (1.0 + m),
                -(a1 * (2.0 * (n - 1.0) * b * l / (2.0 + l)) / (rd * rd)),
            ];
            Ok([assemble(&first), assemble(&second)])
        }
        OverdeterminedSystem::General { triplet, phys, beta } => {
            let l = phys.lambda;
            let c = constitutive_eval_in(triplet, a)?;
            let first = [a2, -(a1 * a1 / a), -(a1 * l) / (rd * (2.0 + l)), Dd::from(1.0) / (c.d * (2.0 + l))];
            let second = [
                c.d * c.s / a * a1,
                -(c.d * c.ds * a1),
                c.d * c.d_alpha_sigma * a1 / (2.0 + l),
                -(Dd::from(*beta) / (rd * (2.0 + l))),
            ];
            Ok([assemble(&first), assemble(&second)])
        }
    }
}

/// Residual norms of both equations of an overdetermined system for `Λ*`.
pub fn overdetermined_residual(
    profile: &LambdaProfile,
    system: &OverdeterminedSystem,
    radii: &[f64],
) -> Result<Vec<EquationNorm>> {
    let mut rows = Vec::with_capacity(radii.len());
    for &r in radii {
        if !(r > 0.0) {
            continue;
        }
        let v = profile.derivs(r)?;
        rows.push((SamplePoint { t: 1.0, x: r, y: 0.0 }, overdetermined_pointwise(system, r, v)?));
    }
    Ok(reduce(&OVERDETERMINED_NAMES, &rows))
}

/// Right side of `(r D P*')' = r Q(Λ*)` after the first integral with
/// `β = 0` on the `Φ* = 0`, `m = -1` branch.
#[derive(Clone, Copy)]
pub enum ReducedSource<'a> {
    /// `Q = S(Λ)`.
    Steady(&'a dyn ScalarLaw),
    /// `Q = S(Λ) + Λ/(n-1)`: the scale ansatz adds the time factor of `α`.
    Scale { law: &'a dyn ScalarLaw, n: f64 },
}

impl ReducedSource<'_> {
    fn eval(&self, lam: f64) -> Result<f64> {
        match self {
            ReducedSource::Steady(s) => Ok(s.eval(lam)?.0),
            ReducedSource::Scale { law, n } => Ok(law.eval(lam)?.0 + lam / (n - 1.0)),
        }
    }
}

/// Constants of the pressure quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureQuadrature {
    pub d0: f64,
    pub c3: f64,
    pub c4: f64,
    pub delta: f64,
    /// Point where the inner antiderivative `∫ z Q dz` vanishes; may be
    /// `f64::INFINITY` for sources that decay.
    pub inner_anchor: f64,
    pub spec: QuadratureSpec,
}

impl PressureQuadrature {
    pub fn new(d0: f64, c3: f64, c4: f64, delta: f64) -> Self {
        PressureQuadrature { d0, c3, c4, delta, inner_anchor: f64::INFINITY, spec: QuadratureSpec::default() }
    }
}

/// Solves `(r P*')' = (r/d0) Q(Λ*)`:
///
/// ```text
/// P*(r) = c4 + c3 ln r + (1/d0) ∫_r^δ (1/ρ) ∫_ρ^a z Q(Λ*(z)) dz dρ
///       = c4 + c3 ln r + (1/d0) (T ln(δ/r) + ∫_r^δ z Q ln(z/r) dz),
/// ```
///
/// with `a` the inner anchor and `T = ∫_δ^a z Q dz`.
pub fn pressure_from_lambda(
    profile: &LambdaProfile,
    source: ReducedSource<'_>,
    q: &PressureQuadrature,
    radii: &[f64],
) -> Result<Vec<f64>> {
    if !(q.d0 > 0.0 && q.delta > 0.0) {
        return Err(Error::Domain("d0 and delta must be positive".into()));
    }
    let zq = |z: f64| -> f64 {
        profile
            .eval(z)
            .and_then(|lam| source.eval(lam))
            .map(|v| z * v)
            .unwrap_or(f64::NAN)
    };
    let tail = if q.inner_anchor.is_infinite() {
        // z = δ + τ/(1-τ) maps [0, 1) onto [δ, ∞)
        quad_adaptive(
            |tau| {
                let w = 1.0 - tau;
                zq(q.delta + tau / w) / (w * w)
            },
            0.0,
            1.0,
            &q.spec,
        )?
        .0
    } else {
        quad_adaptive(zq, q.delta, q.inner_anchor, &q.spec)?.0
    };
    radii
        .iter()
        .map(|&r| {
            if !(r > 0.0) {
                return Err(Error::Singular { t: 1.0, x: r, y: 0.0 });
            }
            let (inner, _) = quad_adaptive(|z| zq(z) * (z / r).ln(), r, q.delta, &q.spec)?;
            Ok(q.c4 + q.c3 * r.ln() + (tail * (q.delta / r).ln() + inner) / q.d0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{linked_s0, PowerSum};
    use crate::reduction::reduced_profiles_of;
    use crate::solutions::{SolutionFamily, StationaryFront, SteadyState};

    fn linked(m: f64, n: f64, d0: f64, lambda: f64, sigma0: f64) -> PowerLawParams {
        let phys = PhysConstants { lambda };
        PowerLawParams { d0, s0: linked_s0(n, sigma0, &phys).unwrap(), sigma0, m, n }
    }

    fn radii(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn first_integral_basic_cases() {
        assert_eq!(first_integral_r(0.0, 2.0, -1.0, 1.5, 0.0, 0.7), 0.0);
        for r in [0.1, 0.5, 2.0] {
            assert_eq!(first_integral_r(1.0, 3.0, 2.0, 1.1, 0.0, r), 1.0 / r);
        }
    }

    #[test]
    fn first_integral_reproduces_stationary_velocity() {
        let sol = SolutionFamily::Stationary(StationaryFront::new(5.0, 2.0, 2.0, 4.0, 2.0).unwrap());
        let pr = reduced_profiles_of(&sol);
        for r in radii(0.01 * pr.delta, pr.delta, 100) {
            let j = pr.radial_jet(r).unwrap();
            let rr = first_integral_r(0.0, 2.0, -1.0, j.lambda[0], j.p[1], Dd::from(r));
            let diff = (rr - j.big_r[0]).to_f64().abs();
            assert!(diff <= 1e-10 * j.big_r[0].to_f64().abs().max(1.0), "r={r}: {diff}");
        }
    }

    #[test]
    fn degenerate_case_integrates_gaussian_profile() {
        let c1 = 1.3;
        let problem = ProfileOdeProblem {
            params: linked(-1.0, 2.0, 2.0, 4.0, -0.7),
            phys: PhysConstants { lambda: 4.0 },
            beta: 0.0,
            r0: 0.1,
            r1: 2.0,
            lambda0: c1 * (-0.01f64 / 8.0).exp(),
            slope0: None,
        };
        let tr = integrate_profile_ode(&problem, &OdeSpec::default()).unwrap();
        assert_eq!(tr.form, OdeForm::LogSecondOrder);
        for r in radii(0.1, 2.0, 40) {
            let exact = c1 * (-r * r / 8.0).exp();
            assert!((tr.lambda(r).unwrap() / exact - 1.0).abs() < 1e-6, "r={r}");
        }
    }

    #[test]
    fn power_regime_integrates_linear_profile() {
        let (c1, m, lambda) = (0.8, 1.0, 2.0);
        let d0 = (1.0 + m) / (4.0 * (1.0 + lambda) * c1 * c1);
        let problem = ProfileOdeProblem {
            params: linked(m, 3.0, d0, lambda, 0.5),
            phys: PhysConstants { lambda },
            beta: 0.0,
            r0: 1.0,
            r1: 3.0,
            lambda0: c1,
            slope0: None,
        };
        let tr = integrate_profile_ode(&problem, &OdeSpec::default()).unwrap();
        assert_eq!(tr.form, OdeForm::Separable);
        for r in radii(1.0, 3.0, 30) {
            assert!((tr.lambda(r).unwrap() / (c1 * r) - 1.0).abs() < 1e-6, "r={r}");
        }
        let back = integrate_profile_ode(&ProfileOdeProblem { r1: 0.2, ..problem }, &OdeSpec::default()).unwrap();
        assert!((back.lambda(0.2).unwrap() / (c1 * 0.2) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn zero_right_side_keeps_profile_constant() {
        let mut params = linked(-1.0, 2.0, 1.0, 1.0, 0.6);
        params.s0 *= 2.0;
        let problem = ProfileOdeProblem {
            params,
            phys: PhysConstants { lambda: 1.0 },
            beta: 0.0,
            r0: 0.5,
            r1: 2.0,
            lambda0: 1.7,
            slope0: None,
        };
        let tr = integrate_profile_ode(&problem, &OdeSpec::default()).unwrap();
        assert_eq!(tr.lambda(2.0), Some(1.7));
    }

    #[test]
    fn coefficient_zero_crossing_is_reported() {
        let params = PowerLawParams { d0: 1.0, s0: 1.0, sigma0: 0.0, m: 1.0, n: 2.0 };
        let problem = ProfileOdeProblem {
            params,
            phys: PhysConstants { lambda: 1.0 },
            beta: 0.0,
            r0: 0.1,
            r1: 10.0,
            lambda0: 1.0,
            slope0: None,
        };
        // bracket = 4Λ - 3Λ²: vanishes at Λ = 4/3, which the growing profile reaches
        match integrate_profile_ode(&problem, &OdeSpec::default()) {
            Err(Error::Integration { at, reason }) => {
                assert!(at > 0.1 && at < 10.0);
                assert!(reason.contains("vanishes"), "{reason}");
            }
            other => panic!("expected an integration error, got {other:?}"),
        }
    }

    #[test]
    fn gaussian_profile_solves_power_law_system_for_any_c2() {
        for (c2, lambda) in [(0.0, 4.0), (0.3, 4.0), (-0.2, 1.0), (0.5, 0.0)] {
            let d0 = 2.0;
            let profile = LambdaProfile::Exponential { c1: 1.4, c2, d0, lambda };
            let system = OverdeterminedSystem::PowerLaw {
                params: linked(-1.0, 3.0, d0, lambda, -0.4),
                phys: PhysConstants { lambda },
                beta: 0.0,
            };
            for e in overdetermined_residual(&profile, &system, &radii(0.05, 2.0, 50)).unwrap() {
                assert!(e.linf <= 1e-9, "c2={c2}: {e:?}");
            }
        }
    }

    #[test]
    fn power_profile_solves_power_law_system() {
        let (c1, m, lambda) = (1.3, 0.5, 3.0);
        let d0 = (1.0 + m) / (4.0 * (1.0 + lambda) * f64::powf(c1, 1.0 + m));
        let system = OverdeterminedSystem::PowerLaw {
            params: linked(m, 2.5, d0, lambda, 0.9),
            phys: PhysConstants { lambda },
            beta: 0.0,
        };
        let profile = LambdaProfile::Power { c1, m };
        for e in overdetermined_residual(&profile, &system, &radii(0.05, 2.0, 50)).unwrap() {
            assert!(e.linf <= 1e-9, "{e:?}");
        }
    }

    #[test]
    fn constant_profile_leaves_the_free_term() {
        let (d0, lambda) = (0.7, 1.5);
        let system = OverdeterminedSystem::PowerLaw {
            params: linked(0.3, 2.0, d0, lambda, 1.0),
            phys: PhysConstants { lambda },
            beta: 0.0,
        };
        let out = overdetermined_residual(&LambdaProfile::Constant(2.0), &system, &[0.5, 1.0]).unwrap();
        assert_eq!(out[0].linf, 1.0 / (d0 * (2.0 + lambda)));
        assert_eq!(out[1].linf, 0.0);
    }

    #[test]
    fn steady_profile_solves_general_system() {
        let SolutionFamily::Steady(s) = SolutionFamily::Steady(SteadyState::new(1.0, 1.0, 1.0, 1.0, 2.0, 4.0, 1.0).unwrap()) else {
            unreachable!()
        };
        let system = OverdeterminedSystem::General { triplet: s.triplet(), phys: PhysConstants { lambda: 4.0 }, beta: 0.0 };
        let profile = LambdaProfile::Exponential { c1: 1.0, c2: 0.0, d0: 1.0, lambda: 4.0 };
        for e in overdetermined_residual(&profile, &system, &radii(0.05, 1.0, 40)).unwrap() {
            assert!(e.linf <= 1e-12, "{e:?}");
        }
        let wrong = OverdeterminedSystem::General { triplet: s.triplet(), phys: PhysConstants { lambda: 4.0 }, beta: 0.5 };
        let out = overdetermined_residual(&profile, &wrong, &[0.5]).unwrap();
        assert!((out[1].linf - 0.5 / (0.5 * 6.0)).abs() < 1e-15);
    }

    #[test]
    fn homogeneous_pressure_is_logarithm() {
        let none = PowerSum::new(vec![]);
        let q = PressureQuadrature { inner_anchor: 1.0, ..PressureQuadrature::new(1.0, 1.0, 0.0, 1.0) };
        let rs = [0.1, 0.5, 1.0, 3.0];
        let p = pressure_from_lambda(&LambdaProfile::Constant(1.0), ReducedSource::Steady(&none), &q, &rs).unwrap();
        for (v, r) in p.iter().zip(rs) {
            assert!((v - r.ln()).abs() < 1e-15);
        }
    }

    #[test]
    fn stationary_pressure_from_quadrature() {
        let SolutionFamily::Stationary(st) = SolutionFamily::Stationary(StationaryFront::new(5.0, 2.0, 2.0, 4.0, 2.0).unwrap()) else {
            unreachable!()
        };
        let g = st.inner;
        let law = PowerSum::monomial(g.s0, g.n);
        let profile = LambdaProfile::Exponential { c1: g.c1, c2: 0.0, d0: g.d0, lambda: g.lambda };
        let q = PressureQuadrature::new(g.d0, g.c3, g.c4, g.delta);
        let rs = radii(0.02 * g.delta, g.delta, 25);
        let p = pressure_from_lambda(&profile, ReducedSource::Scale { law: &law, n: g.n }, &q, &rs).unwrap();
        let sol = SolutionFamily::Stationary(st);
        for (v, r) in p.iter().zip(&rs) {
            let exact = crate::field::Field::value(&sol, 1.0, *r, 0.0).unwrap().p;
            assert!((v - exact).abs() <= 1e-9, "r={r}: {v} vs {exact}");
        }
    }

    #[test]
    fn steady_pressure_from_quadrature() {
        let s = SteadyState::new(1.0, 1.0, 1.0, 1.0, 2.0, 4.0, 1.0).unwrap();
        let law = s.source();
        let profile = LambdaProfile::Exponential { c1: s.c1, c2: 0.0, d0: s.d0, lambda: s.lambda };
        let q = PressureQuadrature::new(s.d0, s.c3, s.derived.c4, s.delta);
        let rs = radii(0.02, 1.0, 25);
        let p = pressure_from_lambda(&profile, ReducedSource::Steady(&law), &q, &rs).unwrap();
        let sol = SolutionFamily::Steady(s);
        for (v, r) in p.iter().zip(&rs) {
            let exact = crate::field::Field::value(&sol, 1.0, *r, 0.0).unwrap().p;
            assert!((v - exact).abs() <= 1e-9, "r={r}: {v} vs {exact}");
        }
    }
}

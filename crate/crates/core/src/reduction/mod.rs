//! Reduction of the governing system to radial profiles and back.
//!
//! The scale ansatz writes the fields through the invariants
//! `ω = (x, y) t^γ`:
//!
//! ```text
//! α = t^{1/(1-n)} Λ(ω),  u = t^{-γ-1} U(ω),  p = t^{n/(1-n)} P(ω),
//! ```
//!
//! and the rotation ansatz writes the plane fields in polar form,
//! `Λ = Λ*(r)`, `P = P*(r)`, `U = R*(r) (cos(Φ*+φ), sin(Φ*+φ))`. The steady
//! ansatz is the same polar form with no time factors.

pub mod chain;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ad_jet, closed_value, ClosedForm, Field, FieldJet};
use crate::model::{constitutive_eval_in, scale_exponents, ConstitutiveTriplet, FieldValue, PhysConstants};
use crate::numerics::dd::{Dd, Scalar};
use crate::numerics::dual::{Dual, HyperDual, Real};
use crate::residuals::{assemble, log_radii, reduce, Engine, Residual, ResidualReport, SamplePoint};
use crate::solutions::{Ansatz, SolutionFamily};

pub use chain::{
    first_integral_r, first_integral_r_with, integrate_profile_ode, overdetermined_residual,
    pressure_from_lambda, LambdaProfile, OdeForm, OverdeterminedSystem, PressureQuadrature,
    ProfileOdeProblem, ProfileTrajectory, ReducedSource,
};

/// Equation names of the radial system, in report order.
pub const REDUCED_NAMES: [&str; 4] = ["mass", "mobility", "angular_momentum", "radial_momentum"];
pub const REDUCED_BC_NAMES: [&str; 4] = ["kinematic", "pressure", "normal_stress", "shear_stress"];
pub const SIMPLIFIED_BC_NAMES: [&str; 3] = ["velocity", "pressure", "velocity_slope"];

/// Where the radial profiles come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileShape {
    /// The `t = 1` slice of a closed-form family.
    Family(SolutionFamily),
    /// `Λ* = lambda`, `P* = pressure`, `R* = 0`.
    Constant { lambda: f64, pressure: f64 },
}

/// The radial profiles `(Λ*, P*, R*, Φ*)` with the law and exponents they
/// are meant to satisfy.
#[derive(Debug, Clone)]
pub struct ReducedProfiles {
    pub shape: ProfileShape,
    pub ansatz: Ansatz,
    pub triplet: ConstitutiveTriplet,
    pub phys: PhysConstants,
    /// Front radius at `t = 1`.
    pub delta: f64,
    /// Constant of the first integral `r R* = β + r D(Λ*) P*'`.
    pub beta: f64,
    /// Constant angle `Φ*`.
    pub phi: f64,
    /// Multiplies `Λ*`; `1` leaves the profiles untouched.
    pub lambda_factor: f64,
}

/// Profiles of a closed-form family. Every family lies on the `Φ* = 0`
/// branch with `β = 0`.
pub fn reduced_profiles_of(sol: &SolutionFamily) -> ReducedProfiles {
    ReducedProfiles {
        shape: ProfileShape::Family(*sol),
        ansatz: sol.ansatz(),
        triplet: sol.triplet(),
        phys: sol.phys(),
        delta: sol.delta(),
        beta: 0.0,
        phi: 0.0,
        lambda_factor: 1.0,
    }
}

impl ReducedProfiles {
    pub fn constant(
        lambda: f64,
        pressure: f64,
        ansatz: Ansatz,
        triplet: ConstitutiveTriplet,
        phys: PhysConstants,
        delta: f64,
    ) -> Self {
        ReducedProfiles {
            shape: ProfileShape::Constant { lambda, pressure },
            ansatz,
            triplet,
            phys,
            delta,
            beta: 0.0,
            phi: 0.0,
            lambda_factor: 1.0,
        }
    }

    /// The same profiles with `Λ*` multiplied by `factor`.
    pub fn with_lambda_factor(&self, factor: f64) -> Self {
        ReducedProfiles { lambda_factor: self.lambda_factor * factor, ..self.clone() }
    }

    pub fn with_phi(&self, phi: f64) -> Self {
        ReducedProfiles { phi, ..self.clone() }
    }

    /// `γ` of the scale ansatz, `0` for the steady one.
    pub fn gamma(&self) -> Result<f64> {
        match self.ansatz {
            Ansatz::Scale { m, n } => Ok(scale_exponents(m, n)?.gamma),
            Ansatz::Steady => Ok(0.0),
        }
    }

    /// `[Λ*, P*, R*, Φ*]` at `r`.
    pub fn eval<T: Real>(&self, r: T) -> Result<[T; 4]> {
        let phi = T::cst(self.phi);
        match self.shape {
            ProfileShape::Family(sol) => {
                let [alpha, q, p] = sol.radial(T::cst(1.0), r * r)?;
                let lam = if self.lambda_factor == 1.0 { alpha } else { alpha * self.lambda_factor };
                Ok([lam, p, r * q, phi])
            }
            ProfileShape::Constant { lambda, pressure } => Ok([
                T::cst(lambda * self.lambda_factor),
                T::cst(pressure),
                T::cst(0.0),
                phi,
            ]),
        }
    }

    /// Value, first and second derivative of each profile and of the polar
    /// velocity components `U_r = R* cos Φ*`, `U_φ = R* sin Φ*`.
    pub fn radial_jet(&self, r: f64) -> Result<RadialJet> {
        let seed: HyperDual<Dd> = Dual::new(Dual::var(Dd::from(r)), Dual::constant(Dd::from(1.0)));
        let [lam, p, rr, phi] = self.eval(seed)?;
        let split = |v: HyperDual<Dd>| [v.re.re, v.re.eps, v.eps.eps];
        Ok(RadialJet {
            r: Dd::from(r),
            lambda: split(lam),
            p: split(p),
            big_r: split(rr),
            phi: split(phi),
            ur: split(rr * phi.cos()),
            uphi: split(rr * phi.sin()),
        })
    }
}

/// Profiles and polar velocity components at one radius, each as
/// `[value, d/dr, d²/dr²]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialJet {
    pub r: Dd,
    pub lambda: [Dd; 3],
    pub p: [Dd; 3],
    pub big_r: [Dd; 3],
    pub phi: [Dd; 3],
    pub ur: [Dd; 3],
    pub uphi: [Dd; 3],
}

/// The plane fields `(Λ, U¹, U², P)` of the scale-reduced system: the lift
/// at `t = 1`, where `ω = (x, y)`.
#[derive(Debug, Clone)]
pub struct ReducedPlaneFields {
    pub profiles: ReducedProfiles,
}

impl ReducedPlaneFields {
    /// `[Λ, U¹, U², P]` at `(ω₁, ω₂)`.
    pub fn eval(&self, w1: f64, w2: f64) -> Result<[f64; 4]> {
        let [a, u1, u2, p] = plane_fields(&self.profiles, w1, w2)?;
        Ok([a, u1, u2, p])
    }
}

fn plane_fields<T: Real>(profiles: &ReducedProfiles, w1: T, w2: T) -> Result<[T; 4]> {
    let r2 = w1 * w1 + w2 * w2;
    if !(r2.value() > 0.0) {
        return Err(Error::Singular { t: 1.0, x: w1.value(), y: w2.value() });
    }
    let r = r2.sqrt();
    let [lam, p, rr, phi] = profiles.eval(r)?;
    let (c, s) = (w1 / r, w2 / r);
    let (cp, sp) = (phi.cos(), phi.sin());
    Ok([lam, rr * (cp * c - sp * s), rr * (sp * c + cp * s), p])
}

/// Radial profiles lifted back to a space-time field.
#[derive(Debug, Clone)]
pub struct LiftedField {
    pub profiles: ReducedProfiles,
}

/// Lifts profiles through the polar and scale (or steady) ansatz.
pub fn lift_profiles(profiles: ReducedProfiles) -> Result<LiftedField> {
    profiles.gamma()?;
    Ok(LiftedField { profiles })
}

impl ClosedForm for LiftedField {
    fn eval<T: Real>(&self, t: T, x: T, y: T) -> Result<[T; 4]> {
        let one = T::cst(1.0);
        let [tw, ta, tu, tp] = match self.profiles.ansatz {
            Ansatz::Scale { m, n } => {
                if !(t.value() > 0.0) {
                    return Err(Error::Domain(format!("t must be positive, got {}", t.value())));
                }
                let g = scale_exponents(m, n)?.gamma;
                [t.powf(g), t.powf(1.0 / (1.0 - n)), t.powf(-g - 1.0), t.powf(n / (1.0 - n))]
            }
            Ansatz::Steady => [one; 4],
        };
        let [lam, u1, u2, p] = plane_fields(&self.profiles, x * tw, y * tw).map_err(|e| match e {
            Error::Singular { .. } => Error::Singular { t: t.value(), x: x.value(), y: y.value() },
            e => e,
        })?;
        Ok([lam * ta, u1 * tu, u2 * tu, p * tp])
    }
}

impl Field for LiftedField {
    fn value(&self, t: f64, x: f64, y: f64) -> Result<FieldValue> {
        closed_value(self, t, x, y)
    }
    fn jet_dd(&self, t: f64, x: f64, y: f64) -> Result<FieldJet<Dd>> {
        ad_jet(self, t, x, y)
    }
    fn jet(&self, t: f64, x: f64, y: f64) -> Result<FieldJet> {
        ad_jet(self, t, x, y)
    }
    fn value_dd(&self, t: Dd, x: Dd, y: Dd) -> Result<[Dd; 4]> {
        self.eval(t, x, y)
    }
}

/// `n` log-spaced radii on `[10⁻² δ, δ]`.
pub fn default_radii(delta: f64, n: usize) -> Vec<f64> {
    log_radii(1e-2 * delta, delta, n)
}

/// The four radial equations at one radius, with the `Φ*` terms kept.
///
/// ```text
/// mass      γ r² Λ' + (r Λ U_r)' - r S(Λ) - r Λ/(n-1)
/// mobility  (r U_r)' - (r D(Λ) P')'
/// angular   (r² Λ (U_φ' - U_φ/r))'
/// radial    r² [Λ((2+λ)U_r' + λU_r/r)]' + 2rΛ(U_r' - U_r/r) - r²(P' + (ΛΣ)' Λ')
/// ```
///
/// The steady ansatz drops the `γ` and `Λ/(n-1)` terms.
pub fn radial_pointwise(j: &RadialJet, profiles: &ReducedProfiles) -> Result<[Residual; 4]> {
    let c = constitutive_eval_in(&profiles.triplet, j.lambda[0])?;
    let l = profiles.phys.lambda;
    let l2 = 2.0 + l;
    let r = j.r;
    let r2 = r * r;
    let [a, a1, _] = j.lambda;
    let [_, p1, p2] = j.p;
    let [ur, ur1, ur2] = j.ur;
    let [uf, uf1, uf2] = j.uphi;
    let mut mass = vec![a * ur, r * a1 * ur, r * a * ur1, -(r * c.s)];
    if let Ansatz::Scale { m, n } = profiles.ansatz {
        let g = scale_exponents(m, n)?.gamma;
        mass.push(r2 * a1 * g);
        mass.push(-(r * a) / (n - 1.0));
    }
    let mobility = [ur, r * ur1, -(c.d * p1), -(r * c.dd * a1 * p1), -(r * c.d * p2)];
    let angular = [
        r * a * uf1 * 2.0,
        -(a * uf) * 2.0,
        r2 * a1 * uf1,
        -(r * a1 * uf),
        r2 * a * uf2,
        -(r * a * uf1),
        a * uf,
    ];
    let radial = [
        r2 * a1 * ur1 * l2,
        r * a1 * ur * l,
        r2 * a * ur2 * l2,
        r * a * ur1 * l,
        -(a * ur) * l,
        r * a * ur1 * 2.0,
        -(a * ur) * 2.0,
        -(r2 * p1),
        -(r2 * c.d_alpha_sigma * a1),
    ];
    Ok([assemble(&mass), assemble(&mobility), assemble(&angular), assemble(&radial)])
}

fn radial_report(profiles: &ReducedProfiles, radii: &[f64]) -> Result<ResidualReport> {
    let evaluated: Vec<Result<Option<(f64, [Residual; 4])>>> = radii
        .par_iter()
        .map(|&r| {
            if !(r > 0.0) {
                return Ok(None);
            }
            let j = profiles.radial_jet(r)?;
            Ok(Some((j.lambda[0].to_f64(), radial_pointwise(&j, profiles)?)))
        })
        .collect();
    let mut rows = Vec::with_capacity(radii.len());
    let mut rejected = Vec::new();
    let mut negative_alpha = 0;
    for (i, (&r, res)) in radii.iter().zip(evaluated).enumerate() {
        match res? {
            Some((lam, v)) => {
                if lam < 0.0 {
                    negative_alpha += 1;
                }
                rows.push((SamplePoint { t: 1.0, x: r, y: 0.0 }, v));
            }
            None => rejected.push(i),
        }
    }
    Ok(ResidualReport {
        equations: reduce(&REDUCED_NAMES, &rows),
        count: rows.len(),
        engine: Engine::Analytic,
        rejected,
        negative_alpha,
    })
}

/// Residuals of the radial system over `radii`. Non-positive radii are
/// rejected, not evaluated.
pub fn reduced_ode_residual(profiles: &ReducedProfiles, radii: &[f64]) -> Result<ResidualReport> {
    if profiles.ansatz == Ansatz::Steady {
        return Err(Error::Domain("steady profiles: use steady_residual".into()));
    }
    radial_report(profiles, radii)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

fn named(names: &[&str], values: &[f64]) -> Vec<NamedValue> {
    names
        .iter()
        .zip(values)
        .map(|(n, v)| NamedValue { name: n.to_string(), value: *v })
        .collect()
}

fn max_abs(v: &[NamedValue]) -> f64 {
    v.iter().map(|e| e.value.abs()).fold(0.0, f64::max)
}

/// Boundary conditions of the radial problem at `r = δ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReducedBoundary {
    /// `U_r + γδ`, `P*`, `(2+λ)U_r' + λU_r/δ`, `U_φ' - U_φ/δ`.
    pub general: Vec<NamedValue>,
    /// `R*`, `P*`, `R*'`: the same conditions when `γ = 0` and `Φ*` is a
    /// multiple of `π`; `None` off that branch.
    pub simplified: Option<Vec<NamedValue>>,
}

impl ReducedBoundary {
    pub fn general_max(&self) -> f64 {
        max_abs(&self.general)
    }

    pub fn simplified_max(&self) -> Option<f64> {
        self.simplified.as_deref().map(max_abs)
    }
}

pub fn reduced_bc_residual(profiles: &ReducedProfiles) -> Result<ReducedBoundary> {
    let d = profiles.delta;
    let j = profiles.radial_jet(d)?;
    let g = profiles.gamma()?;
    let l = profiles.phys.lambda;
    let f = |v: Dd| v.to_f64();
    let general = [
        f(j.ur[0] + Dd::from(g * d)),
        f(j.p[0]),
        f(j.ur[1] * (2.0 + l) + j.ur[0] * l / d),
        f(j.uphi[1] - j.uphi[0] / d),
    ];
    let on_branch = g == 0.0 && profiles.phi.sin().abs() <= 1e-15;
    let simplified = on_branch.then(|| named(&SIMPLIFIED_BC_NAMES, &[f(j.big_r[0]), f(j.p[0]), f(j.big_r[1])]));
    Ok(ReducedBoundary { general: named(&REDUCED_BC_NAMES, &general), simplified })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteadyReport {
    pub governing: ResidualReport,
    pub boundary: ReducedBoundary,
}

/// Residuals of the steady radial system and its boundary conditions.
pub fn steady_residual(profiles: &ReducedProfiles, radii: &[f64]) -> Result<SteadyReport> {
    if profiles.ansatz != Ansatz::Steady {
        return Err(Error::Domain("steady_residual needs steady profiles".into()));
    }
    Ok(SteadyReport {
        governing: radial_report(profiles, radii)?,
        boundary: reduced_bc_residual(profiles)?,
    })
}

//! Lie group actions on fields: generalised rotations and Galilei boosts,
//! pressure shifts, time translation and the power-law scaling.
//!
//! Every element acts by pullback. [`Transformed`] evaluates the source
//! field at the inverse image of a point and transforms the components and
//! their derivatives by the chain rule, all in double-double.
//!
//! The rotation by `θ(t) = ε f(t)` with `Q = Q(θ)` is
//! `α̃(t, X) = α(t, QX)`, `p̃(t, X) = p(t, QX)`,
//! `ũ(t, X) = Qᵀ(u(t, QX) - θ̇ J QX)` with `J(y₁, y₂) = (-y₂, y₁)`.
//! The scaling is the flow of
//! `2(1-n)t∂_t + (1+m)(x∂_x + y∂_y) + 2α∂_α + (m+2n-1)u·∂_u + 2np∂_p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldJet, ScalarJet};
use crate::model::{ConstitutiveTriplet, FieldValue, PhysConstants};
use crate::numerics::dd::{Dd, Scalar};
use crate::residuals::{governing_residual, Engine, ResidualReport, SamplePoint};
use crate::solutions::BoundaryCircle;

/// A smooth function of time with its derivative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TimeFunction {
    Constant { value: f64 },
    /// `coeff · t^exponent`.
    Power { coeff: f64, exponent: f64 },
    /// `Σ cₖ tᵏ`.
    Polynomial { coeffs: Vec<f64> },
    /// `amplitude · sin(frequency · t + phase)`.
    Sine { amplitude: f64, frequency: f64, phase: f64 },
}

impl TimeFunction {
    pub fn constant(value: f64) -> Self {
        TimeFunction::Constant { value }
    }

    pub fn sin() -> Self {
        TimeFunction::Sine { amplitude: 1.0, frequency: 1.0, phase: 0.0 }
    }

    /// Value and first derivative.
    pub fn eval(&self, t: Dd) -> (Dd, Dd) {
        let zero = Dd::default();
        match self {
            TimeFunction::Constant { value } => (Dd::from(*value), zero),
            TimeFunction::Power { coeff, exponent } => {
                let v = t.powf(*exponent) * *coeff;
                let d = if *exponent == 0.0 { zero } else { t.powf(exponent - 1.0) * (coeff * exponent) };
                (v, d)
            }
            TimeFunction::Polynomial { coeffs } => {
                let (mut v, mut d) = (zero, zero);
                for &c in coeffs.iter().rev() {
                    d = d * t + v;
                    v = v * t + c;
                }
                (v, d)
            }
            TimeFunction::Sine { amplitude, frequency, phase } => {
                let arg = t * *frequency + *phase;
                (arg.sin() * *amplitude, arg.cos() * (amplitude * frequency))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

/// One element of the symmetry group, with group parameter `eps`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupElement {
    /// Rotation by the angle `eps · f(t)`.
    Rotation { f: TimeFunction, eps: f64 },
    /// Boost `x ↦ x + eps·g(t)`, `u ↦ u + eps·ġ(t)` along `axis`.
    Galilei { g: TimeFunction, axis: Axis, eps: f64 },
    /// `p ↦ p + eps·F(t)`.
    PressureShift { f: TimeFunction, eps: f64 },
    /// `t ↦ t + eps`.
    TimeTranslation { eps: f64 },
    Scale { eps: f64, m: f64, n: f64 },
}

impl GroupElement {
    /// The translations `∂_{ω_i} - γ∂_{U^i}` of the scale-reduced plane,
    /// `γ = (m+1)/(2(n-1))`. In the original variables they are the boosts
    /// with `g = t^{-γ}`.
    pub fn reduced_translation(axis: Axis, eps: f64, m: f64, n: f64) -> Result<Self> {
        if n == 1.0 {
            return Err(Error::DegenerateScale);
        }
        let gamma = (m + 1.0) / (2.0 * (n - 1.0));
        Ok(GroupElement::Galilei { g: TimeFunction::Power { coeff: 1.0, exponent: -gamma }, axis, eps })
    }

    pub fn name(&self) -> &'static str {
        match self {
            GroupElement::Rotation { .. } => "rotation",
            GroupElement::Galilei { .. } => "galilei",
            GroupElement::PressureShift { .. } => "pressure_shift",
            GroupElement::TimeTranslation { .. } => "time_translation",
            GroupElement::Scale { .. } => "scale",
        }
    }

    pub fn eps(&self) -> f64 {
        match self {
            GroupElement::Rotation { eps, .. }
            | GroupElement::Galilei { eps, .. }
            | GroupElement::PressureShift { eps, .. }
            | GroupElement::TimeTranslation { eps }
            | GroupElement::Scale { eps, .. } => *eps,
        }
    }

    /// The same element with group parameter `eps`.
    pub fn with_eps(&self, e: f64) -> Self {
        let mut out = self.clone();
        match &mut out {
            GroupElement::Rotation { eps, .. }
            | GroupElement::Galilei { eps, .. }
            | GroupElement::PressureShift { eps, .. }
            | GroupElement::TimeTranslation { eps }
            | GroupElement::Scale { eps, .. } => *eps = e,
        }
        out
    }

    /// Whether the element is a symmetry of the equations with `triplet`.
    /// Only the scaling depends on the constitutive laws.
    pub fn check_applicable(&self, triplet: &ConstitutiveTriplet) -> Result<()> {
        if let GroupElement::Scale { m, n, .. } = self {
            let Some(p) = triplet.power_law() else {
                return Err(Error::Inapplicable(
                    "scaling needs power-law constitutive functions".into(),
                ));
            };
            if !close(p.m, *m) || !close(p.n, *n) {
                return Err(Error::Inapplicable(format!(
                    "scaling with (m, n) = ({m}, {n}) does not match the power laws ({}, {})",
                    p.m, p.n
                )));
            }
        }
        Ok(())
    }

    /// Image of a point under the group action, i.e. where the transformed
    /// field takes the value the source field has at `pt`.
    pub fn forward_point(&self, pt: SamplePoint) -> SamplePoint {
        let (t, x, y) = self.forward_dd(Dd::from(pt.t), Dd::from(pt.x), Dd::from(pt.y));
        SamplePoint { t: t.to_f64(), x: x.to_f64(), y: y.to_f64() }
    }

    fn forward_dd(&self, t: Dd, x: Dd, y: Dd) -> (Dd, Dd, Dd) {
        match self {
            GroupElement::Rotation { f, eps } => {
                let (c, s) = rotation(f, *eps, t).cos_sin;
                // X = Qᵀ Y
                (t, c * x + s * y, c * y - s * x)
            }
            GroupElement::Galilei { g, axis, eps } => {
                let shift = g.eval(t).0 * *eps;
                match axis {
                    Axis::X => (t, x + shift, y),
                    Axis::Y => (t, x, y + shift),
                }
            }
            GroupElement::PressureShift { .. } => (t, x, y),
            GroupElement::TimeTranslation { eps } => (t + *eps, x, y),
            GroupElement::Scale { eps, m, n } => {
                let k = ScaleFactors::new(*eps, *m, *n);
                (t / k.time, x / k.space, y / k.space)
            }
        }
    }

    /// Source point whose data the transformed field carries at `(t, x, y)`.
    fn inverse_dd(&self, t: Dd, x: Dd, y: Dd) -> (Dd, Dd, Dd) {
        match self {
            GroupElement::Rotation { f, eps } => {
                let (c, s) = rotation(f, *eps, t).cos_sin;
                (t, c * x - s * y, s * x + c * y)
            }
            GroupElement::Galilei { g, axis, eps } => {
                let shift = g.eval(t).0 * *eps;
                match axis {
                    Axis::X => (t, x - shift, y),
                    Axis::Y => (t, x, y - shift),
                }
            }
            GroupElement::PressureShift { .. } => (t, x, y),
            GroupElement::TimeTranslation { eps } => (t - *eps, x, y),
            GroupElement::Scale { eps, m, n } => {
                let k = ScaleFactors::new(*eps, *m, *n);
                (t * k.time, x * k.space, y * k.space)
            }
        }
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

struct Rotation {
    cos_sin: (Dd, Dd),
    rate: Dd,
}

fn rotation(f: &TimeFunction, eps: f64, t: Dd) -> Rotation {
    let (v, d) = f.eval(t);
    let theta = v * eps;
    Rotation { cos_sin: (theta.cos(), theta.sin()), rate: d * eps }
}

/// Pullback factors of the scaling: the source is read at
/// `(time·t, space·x, space·y)` and the components are multiplied by
/// `alpha`, `u`, `p`.
struct ScaleFactors {
    time: Dd,
    space: Dd,
    alpha: Dd,
    u: Dd,
    p: Dd,
}

impl ScaleFactors {
    fn new(eps: f64, m: f64, n: f64) -> Self {
        let e = |k: f64| (Dd::from(eps) * k).exp();
        ScaleFactors {
            time: e(-2.0 * (1.0 - n)),
            space: e(-(1.0 + m)),
            alpha: e(2.0),
            u: e(m + 2.0 * n - 1.0),
            p: e(2.0 * n),
        }
    }
}

/// `a(QX)` as a jet in `X`, given the jet of `a` at `QX`.
fn rotate_jet(j: &ScalarJet<Dd>, c: Dd, s: Dd) -> ScalarJet<Dd> {
    // Q = [[c, -s], [s, c]]; ∇_X = Qᵀ∇, H_X = Qᵀ H Q
    let (hxx, hxy, hyy) = (j.xx, j.xy, j.yy);
    ScalarJet {
        v: j.v,
        x: c * j.x + s * j.y,
        y: c * j.y - s * j.x,
        xx: c * c * hxx + c * s * hxy * 2.0 + s * s * hyy,
        xy: (c * c - s * s) * hxy + c * s * (hyy - hxx),
        yy: s * s * hxx - c * s * hxy * 2.0 + c * c * hyy,
    }
}

fn combine(a: &ScalarJet<Dd>, ka: Dd, b: &ScalarJet<Dd>, kb: Dd) -> ScalarJet<Dd> {
    ScalarJet {
        v: a.v * ka + b.v * kb,
        x: a.x * ka + b.x * kb,
        y: a.y * ka + b.y * kb,
        xx: a.xx * ka + b.xx * kb,
        xy: a.xy * ka + b.xy * kb,
        yy: a.yy * ka + b.yy * kb,
    }
}

/// `factor · a(space · X)` as a jet in `X`.
fn scale_jet(j: &ScalarJet<Dd>, factor: Dd, space: Dd) -> ScalarJet<Dd> {
    let (d1, d2) = (factor * space, factor * space * space);
    ScalarJet {
        v: j.v * factor,
        x: j.x * d1,
        y: j.y * d1,
        xx: j.xx * d2,
        xy: j.xy * d2,
        yy: j.yy * d2,
    }
}

/// The pullback of a field by a group element.
#[derive(Debug, Clone)]
pub struct Transformed<F> {
    pub elem: GroupElement,
    pub inner: F,
}

/// Applies `elem` to `field`.
pub fn transform_field<F: Field>(elem: GroupElement, field: F) -> Transformed<F> {
    Transformed { elem, inner: field }
}

impl<F: Field> Transformed<F> {
    fn transform_values(&self, t: Dd, ys: (Dd, Dd), v: [Dd; 4]) -> [Dd; 4] {
        let [a, u1, u2, p] = v;
        match &self.elem {
            GroupElement::Rotation { f, eps } => {
                let rot = rotation(f, *eps, t);
                let (c, s) = rot.cos_sin;
                let v1 = u1 + rot.rate * ys.1;
                let v2 = u2 - rot.rate * ys.0;
                [a, c * v1 + s * v2, c * v2 - s * v1, p]
            }
            GroupElement::Galilei { g, axis, eps } => {
                let du = g.eval(t).1 * *eps;
                match axis {
                    Axis::X => [a, u1 + du, u2, p],
                    Axis::Y => [a, u1, u2 + du, p],
                }
            }
            GroupElement::PressureShift { f, eps } => [a, u1, u2, p + f.eval(t).0 * *eps],
            GroupElement::TimeTranslation { .. } => v,
            GroupElement::Scale { eps, m, n } => {
                let k = ScaleFactors::new(*eps, *m, *n);
                [a * k.alpha, u1 * k.u, u2 * k.u, p * k.p]
            }
        }
    }
}

impl<F: Field> Field for Transformed<F> {
    fn value(&self, t: f64, x: f64, y: f64) -> Result<FieldValue> {
        let [alpha, u1, u2, p] = self.value_dd(t.into(), x.into(), y.into())?.map(f64::from);
        Ok(FieldValue { alpha, u1, u2, p })
    }

    fn value_dd(&self, t: Dd, x: Dd, y: Dd) -> Result<[Dd; 4]> {
        let (ts, xs, ys) = self.elem.inverse_dd(t, x, y);
        let v = self.inner.value_dd(ts, xs, ys)?;
        Ok(self.transform_values(t, (xs, ys), v))
    }

    fn jet_dd(&self, t: f64, x: f64, y: f64) -> Result<FieldJet<Dd>> {
        let td = Dd::from(t);
        let (ts, xs, ys) = self.elem.inverse_dd(td, x.into(), y.into());
        // source points are evaluated at f64 coordinates; every map here
        // is smooth, so the rounding only moves the sample
        let j = self.inner.jet_dd(ts.to_f64(), xs.to_f64(), ys.to_f64())?;
        let (xs, ys) = (Dd::from(xs.to_f64()), Dd::from(ys.to_f64()));
        Ok(match &self.elem {
            GroupElement::Rotation { f, eps } => {
                let rot = rotation(f, *eps, td);
                let (c, s) = rot.cos_sin;
                let w = rot.rate;
                let mut v1 = j.u1;
                v1.v = v1.v + w * ys;
                v1.y = v1.y + w;
                let mut v2 = j.u2;
                v2.v = v2.v - w * xs;
                v2.x = v2.x - w;
                let (r1, r2) = (rotate_jet(&v1, c, s), rotate_jet(&v2, c, s));
                FieldJet {
                    alpha: rotate_jet(&j.alpha, c, s),
                    alpha_t: j.alpha_t + w * (j.alpha.y * xs - j.alpha.x * ys),
                    u1: combine(&r1, c, &r2, s),
                    u2: combine(&r2, c, &r1, -s),
                    p: rotate_jet(&j.p, c, s),
                }
            }
            GroupElement::Galilei { g, axis, eps } => {
                let (_, gd) = g.eval(td);
                let du = gd * *eps;
                let mut out = j;
                match axis {
                    Axis::X => {
                        out.alpha_t = j.alpha_t - du * j.alpha.x;
                        out.u1.v = j.u1.v + du;
                    }
                    Axis::Y => {
                        out.alpha_t = j.alpha_t - du * j.alpha.y;
                        out.u2.v = j.u2.v + du;
                    }
                }
                out
            }
            GroupElement::PressureShift { f, eps } => {
                let mut out = j;
                out.p.v = j.p.v + f.eval(td).0 * *eps;
                out
            }
            GroupElement::TimeTranslation { .. } => j,
            GroupElement::Scale { eps, m, n } => {
                let k = ScaleFactors::new(*eps, *m, *n);
                FieldJet {
                    alpha: scale_jet(&j.alpha, k.alpha, k.space),
                    alpha_t: j.alpha_t * k.alpha * k.time,
                    u1: scale_jet(&j.u1, k.u, k.space),
                    u2: scale_jet(&j.u2, k.u, k.space),
                    p: scale_jet(&j.p, k.p, k.space),
                }
            }
        })
    }
}

/// Governing residual of the transformed field at the images of `samples`.
///
/// Pushing the samples forward keeps them inside the transformed domain, so
/// the report is directly comparable with the residual of the source at
/// `samples`.
pub fn orbit_residual<F: Field>(
    elem: &GroupElement,
    field: F,
    triplet: &ConstitutiveTriplet,
    phys: &PhysConstants,
    samples: &[SamplePoint],
    engine: Engine,
) -> Result<ResidualReport> {
    elem.check_applicable(triplet)?;
    let moved: Vec<SamplePoint> = samples.iter().map(|p| elem.forward_point(*p)).collect();
    let tf = transform_field(elem.clone(), field);
    governing_residual(&tf, triplet, phys, &moved, engine)
}

/// Factors by which the transformed field's governing residuals
/// `[mass, mobility, momentum_x, momentum_y]` exceed the source residuals
/// at the corresponding points.
///
/// Only the scaling is non-trivial: it multiplies the mass equation by
/// `e^{2nε}`, the mobility equation by `e^{2(n-1)ε}` and the momentum
/// equations by `e^{(2n-1-m)ε}`.
pub fn equation_weights(elem: &GroupElement) -> [f64; 4] {
    match elem {
        GroupElement::Scale { eps, m, n } => {
            let mom = ((2.0 * n - 1.0 - m) * eps).exp();
            [(2.0 * n * eps).exp(), (2.0 * (n - 1.0) * eps).exp(), mom, mom]
        }
        _ => [1.0; 4],
    }
}

/// Orbit residual compared with the residual of the source field.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitCheck {
    pub element: String,
    pub eps: f64,
    pub base_linf: f64,
    /// Raw L∞ of the transformed field.
    pub orbit_linf: f64,
    /// L∞ after dividing each equation by its [`equation_weights`] entry.
    pub weighted_linf: f64,
    pub ratio: f64,
    pub passed: bool,
}

/// Maximum growth of the weighted orbit residual over the base residual
/// accepted by [`orbit_check`].
pub const ORBIT_GROWTH_LIMIT: f64 = 10.0;

/// Runs [`orbit_residual`] and compares it with the untransformed residual.
pub fn orbit_check<F: Field + Copy>(
    elem: &GroupElement,
    field: F,
    triplet: &ConstitutiveTriplet,
    phys: &PhysConstants,
    samples: &[SamplePoint],
    engine: Engine,
) -> Result<OrbitCheck> {
    let base = governing_residual(&field, triplet, phys, samples, engine)?;
    let orbit = orbit_residual(elem, field, triplet, phys, samples, engine)?;
    let w = equation_weights(elem);
    let weighted_linf = orbit
        .equations
        .iter()
        .zip(w)
        .map(|(e, w)| e.linf / w)
        .fold(0.0, f64::max);
    let base_linf = base.max_linf();
    let ratio = if weighted_linf == 0.0 { 0.0 } else { weighted_linf / base_linf };
    Ok(OrbitCheck {
        element: elem.name().into(),
        eps: elem.eps(),
        base_linf,
        orbit_linf: orbit.max_linf(),
        weighted_linf,
        ratio,
        passed: ratio <= ORBIT_GROWTH_LIMIT && orbit.rejected.is_empty(),
    })
}

/// The infinitesimal invariance criterion `X(Γ)|_{Γ=0}` for the generator of
/// `elem` and the front `Γ = x² + y² - δ²t^κ`, maximised over the circle at
/// time `t`.
pub fn boundary_invariance(elem: &GroupElement, boundary: &BoundaryCircle, t: f64) -> f64 {
    let (d2, k) = (boundary.delta * boundary.delta, boundary.kappa);
    match elem {
        GroupElement::Rotation { .. } | GroupElement::PressureShift { .. } => 0.0,
        GroupElement::TimeTranslation { .. } => (k * d2 * t.powf(k - 1.0)).abs(),
        GroupElement::Galilei { g, .. } => 2.0 * boundary.radius(t) * g.eval(t.into()).0.to_f64().abs(),
        GroupElement::Scale { m, n, .. } => (2.0 * d2 * t.powf(k) * ((1.0 + m) - (1.0 - n) * k)).abs(),
    }
}

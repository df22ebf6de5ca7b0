//! Pointwise residuals of the governing equations and boundary conditions,
//! reduced to norms over deterministic sample sets.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldJet, ScalarJet};
use crate::model::{constitutive_eval_in, ConstitutiveTriplet, FieldValue, PhysConstants};
use crate::numerics::dd::{Dd, Scalar};
use crate::numerics::fd::{first_stencil, second_stencil};
use crate::numerics::sum::NeumaierSum;
use crate::solutions::{BoundaryCircle, R_MIN_FRACTION};

pub const GOVERNING_NAMES: [&str; 4] = ["mass", "mobility", "momentum_x", "momentum_y"];
pub const BOUNDARY_NAMES: [&str; 4] = ["kinematic", "pressure", "traction_x", "traction_y"];

/// Concentric-ring sampling of the annulus `r_min ≤ r ≤ radius(t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSet {
    pub times: Vec<f64>,
    pub r_min_fraction: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

impl Default for SampleSet {
    fn default() -> Self {
        SampleSet {
            times: vec![0.5, 1.0, 2.0],
            r_min_fraction: R_MIN_FRACTION,
            n_r: 64,
            n_theta: 32,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplePoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

/// `n` log-spaced radii from `lo` to `hi` inclusive.
pub fn log_radii(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![hi],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        hi
                    } else {
                        (a + (b - a) * i as f64 / (n - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}

impl SampleSet {
    pub fn with_times(times: Vec<f64>) -> Self {
        SampleSet { times, ..Default::default() }
    }

    /// Points in time-major, then radius, then angle order.
    pub fn points(&self, boundary: &BoundaryCircle) -> Vec<SamplePoint> {
        let mut out = Vec::with_capacity(self.times.len() * self.n_r * self.n_theta);
        for &t in &self.times {
            let rad = boundary.radius(t);
            for r in log_radii(self.r_min_fraction * rad, rad, self.n_r) {
                for j in 0..self.n_theta {
                    let th = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / self.n_theta as f64;
                    out.push(SamplePoint { t, x: r * th.cos(), y: r * th.sin() });
                }
            }
        }
        out
    }
}

/// How derivatives were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Engine {
    Analytic,
    Fd { scheme: u8, h: f64 },
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Engine::Analytic => write!(f, "analytic"),
            Engine::Fd { scheme, h } => write!(f, "fd(order {scheme}, h {h:e})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquationNorm {
    pub name: String,
    pub linf: f64,
    pub l2: f64,
    /// Location `(t, x, y)` of the L∞ value.
    pub at: Option<(f64, f64, f64)>,
    /// Largest `|residual| / Σ|terms|`: the residual measured against the
    /// size of the terms that cancel in it.
    pub rel_linf: f64,
    pub rel_at: Option<(f64, f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub equations: Vec<EquationNorm>,
    pub count: usize,
    pub engine: Engine,
    /// Sample indices skipped because the field is singular there.
    pub rejected: Vec<usize>,
    /// Samples where `α < 0` (flagged, not fatal).
    pub negative_alpha: usize,
}

impl ResidualReport {
    pub fn max_linf(&self) -> f64 {
        self.equations.iter().map(|e| e.linf).fold(0.0, f64::max)
    }

    pub fn max_rel_linf(&self) -> f64 {
        self.equations.iter().map(|e| e.rel_linf).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<&EquationNorm> {
        self.equations.iter().find(|e| e.name == name)
    }
}

/// A signed sum together with the sum of magnitudes of its terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub value: f64,
    pub scale: f64,
}

pub(crate) fn assemble<S: Scalar>(terms: &[S]) -> Residual {
    let mut v = S::default();
    let mut a = NeumaierSum::new();
    for &t in terms {
        v = v + t;
        a.add(t.to_f64().abs());
    }
    Residual { value: v.to_f64(), scale: a.total() }
}

/// The four governing residuals at one jet.
///
/// Everything, including the constitutive laws where they allow it, is
/// evaluated in the jet's own precision.
pub fn governing_pointwise<S: Scalar>(
    j: &FieldJet<S>,
    triplet: &ConstitutiveTriplet,
    phys: &PhysConstants,
) -> Result<[Residual; 4]> {
    let c = constitutive_eval_in(triplet, j.alpha.v)?;
    let (s, d, dd, das) = (c.s, c.d, c.dd, c.d_alpha_sigma);
    let (a, u1, u2, p) = (&j.alpha, &j.u1, &j.u2, &j.p);
    let l = phys.lambda;
    let l2 = 2.0 + l;
    let mass = assemble(&[j.alpha_t, a.x * u1.v, a.v * u1.x, a.y * u2.v, a.v * u2.y, -s]);
    let mobility = assemble(&[
        u1.x,
        u2.y,
        -dd * a.x * p.x,
        -dd * a.y * p.y,
        -d * p.xx,
        -d * p.yy,
    ]);
    let mom_x = assemble(&[
        a.x * u1.x * l2,
        a.v * u1.xx * l2,
        a.x * u2.y * l,
        a.v * u2.xy * l,
        a.y * u1.y,
        a.y * u2.x,
        a.v * u1.yy,
        a.v * u2.xy,
        -p.x,
        -das * a.x,
    ]);
    let mom_y = assemble(&[
        a.x * u1.y,
        a.x * u2.x,
        a.v * u1.xy,
        a.v * u2.xx,
        a.y * u2.y * l2,
        a.v * u2.yy * l2,
        a.y * u1.x * l,
        a.v * u1.xy * l,
        -p.y,
        -das * a.y,
    ]);
    Ok([mass, mobility, mom_x, mom_y])
}

/// The four boundary residuals at a point of the front.
pub fn boundary_pointwise<S: Scalar>(j: &FieldJet<S>, grad: (f64, f64, f64), phys: &PhysConstants) -> [Residual; 4] {
    let (gt, gx, gy) = grad;
    let (u1, u2) = (&j.u1, &j.u2);
    let l = phys.lambda;
    let shear = u1.y + u2.x;
    [
        assemble(&[u1.v * gx, u2.v * gy, S::from_f64(gt)]),
        assemble(&[j.p.v]),
        assemble(&[u1.x * ((2.0 + l) * gx), u2.y * (l * gx), shear * gy]),
        assemble(&[shear * gx, u1.x * (l * gy), u2.y * ((2.0 + l) * gy)]),
    ]
}

/// Derivatives of a field's values by central differences.
pub struct FdField<F> {
    pub inner: F,
    pub scheme: u8,
    pub h: f64,
}

impl<F: Field> FdField<F> {
    pub fn new(inner: F, scheme: u8, h: f64) -> Result<Self> {
        if !(scheme == 2 || scheme == 4) || !(h > 0.0) {
            return Err(Error::Domain(format!("invalid fd engine (scheme {scheme}, h {h})")));
        }
        Ok(FdField { inner, scheme, h })
    }
}

impl<F: Field> Field for FdField<F> {
    fn value(&self, t: f64, x: f64, y: f64) -> Result<FieldValue> {
        self.inner.value(t, x, y)
    }

    fn value_dd(&self, t: Dd, x: Dd, y: Dd) -> Result<[Dd; 4]> {
        self.inner.value_dd(t, x, y)
    }

    /// Stencils are applied to double-double values, so the result carries
    /// truncation error only.
    fn jet_dd(&self, t: f64, x: f64, y: f64) -> Result<FieldJet<Dd>> {
        // Stencil points are formed in double-double so they are equispaced.
        let h = self.h;
        let (t0, x0, y0) = (Dd::from(t), Dd::from(x), Dd::from(y));
        let f = |dt: f64, dx: f64, dy: f64| {
            self.inner.value_dd(t0 + Dd::from(dt), x0 + Dd::from(dx), y0 + Dd::from(dy))
        };
        let c = f(0.0, 0.0, 0.0)?;
        let (d1, den1) = first_stencil(self.scheme);
        let (d2, den2) = second_stencil(self.scheme);
        let hd = Dd::from(h);
        let s1 = hd * den1;
        let s2 = hd * hd * den2;
        let s11 = hd * hd * (den1 * den1);
        let mut out = [ScalarJet::<Dd>::default(); 4];
        for (o, v) in out.iter_mut().zip(c) {
            o.v = v;
        }
        let mut at = Dd::default();
        for &(k, w) in d1 {
            let ft = f(k * h, 0.0, 0.0)?;
            at = at + ft[0] * w;
            let fx = f(0.0, k * h, 0.0)?;
            let fy = f(0.0, 0.0, k * h)?;
            for i in 0..4 {
                out[i].x = out[i].x + fx[i] * w;
                out[i].y = out[i].y + fy[i] * w;
            }
        }
        for &(k, w) in d2 {
            let fx = if k == 0.0 { c } else { f(0.0, k * h, 0.0)? };
            let fy = if k == 0.0 { c } else { f(0.0, 0.0, k * h)? };
            for i in 0..4 {
                out[i].xx = out[i].xx + fx[i] * w;
                out[i].yy = out[i].yy + fy[i] * w;
            }
        }
        for &(kx, wx) in d1 {
            for &(ky, wy) in d1 {
                let fxy = f(0.0, kx * h, ky * h)?;
                for i in 0..4 {
                    out[i].xy = out[i].xy + fxy[i] * (wx * wy);
                }
            }
        }
        at = at / s1;
        for o in out.iter_mut() {
            o.x = o.x / s1;
            o.y = o.y / s1;
            o.xx = o.xx / s2;
            o.yy = o.yy / s2;
            o.xy = o.xy / s11;
        }
        Ok(FieldJet { alpha: out[0], alpha_t: at, u1: out[1], u2: out[2], p: out[3] })
    }
}

pub(crate) fn reduce<const N: usize>(names: &[&str], rows: &[(SamplePoint, [Residual; N])]) -> Vec<EquationNorm> {
    names
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let mut linf = 0.0;
            let mut at = None;
            let mut rel_linf = 0.0;
            let mut rel_at = None;
            let mut sq = NeumaierSum::new();
            for (pt, res) in rows {
                let r = res[k];
                let a = r.value.abs();
                sq.add(a * a);
                if a > linf || at.is_none() {
                    linf = a;
                    at = Some((pt.t, pt.x, pt.y));
                }
                let rel = if r.scale > 0.0 { a / r.scale } else { 0.0 };
                if rel > rel_linf || rel_at.is_none() {
                    rel_linf = rel;
                    rel_at = Some((pt.t, pt.x, pt.y));
                }
            }
            EquationNorm {
                name: name.to_string(),
                linf,
                l2: sq.total().sqrt(),
                at,
                rel_linf,
                rel_at,
            }
        })
        .collect()
}

fn engine_field<'a>(field: &'a dyn Field, engine: Engine) -> Result<Box<dyn Field + 'a>> {
    Ok(match engine {
        Engine::Analytic => Box::new(field),
        Engine::Fd { scheme, h } => Box::new(FdField::new(field, scheme, h)?),
    })
}

/// Residuals of the governing equations at the given samples.
pub fn governing_residual(
    field: &dyn Field,
    triplet: &ConstitutiveTriplet,
    phys: &PhysConstants,
    samples: &[SamplePoint],
    engine: Engine,
) -> Result<ResidualReport> {
    let f = engine_field(field, engine)?;
    let evaluated: Vec<Result<Option<(f64, [Residual; 4])>>> = samples
        .par_iter()
        .map(|pt| match f.jet_dd(pt.t, pt.x, pt.y) {
            Ok(j) => Ok(Some((j.alpha.v.to_f64(), governing_pointwise(&j, triplet, phys)?))),
            Err(Error::Singular { .. }) => Ok(None),
            Err(e) => Err(e),
        })
        .collect();
    let mut rows = Vec::with_capacity(samples.len());
    let mut rejected = Vec::new();
    let mut negative_alpha = 0;
    for (i, (pt, r)) in samples.iter().zip(evaluated).enumerate() {
        match r? {
            Some((alpha, res)) => {
                if alpha < 0.0 {
                    negative_alpha += 1;
                }
                rows.push((*pt, res));
            }
            None => rejected.push(i),
        }
    }
    Ok(ResidualReport {
        equations: reduce(&GOVERNING_NAMES, &rows),
        count: rows.len(),
        engine,
        rejected,
        negative_alpha,
    })
}

/// Residuals of the boundary conditions at `n_theta` points of the front.
pub fn boundary_residual(
    field: &dyn Field,
    boundary: &BoundaryCircle,
    phys: &PhysConstants,
    t: f64,
    n_theta: usize,
    engine: Engine,
) -> Result<ResidualReport> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    let f = engine_field(field, engine)?;
    let rad = boundary.radius(t);
    let pts: Vec<SamplePoint> = (0..n_theta)
        .map(|j| {
            let th = 2.0 * std::f64::consts::PI * j as f64 / n_theta as f64;
            SamplePoint { t, x: rad * th.cos(), y: rad * th.sin() }
        })
        .collect();
    let evaluated: Vec<Result<[Residual; 4]>> = pts
        .par_iter()
        .map(|pt| {
            let j = f.jet_dd(pt.t, pt.x, pt.y)?;
            Ok(boundary_pointwise(&j, boundary.gradient(pt.t, pt.x, pt.y), phys))
        })
        .collect();
    let mut rows = Vec::with_capacity(pts.len());
    let mut negative_alpha = 0;
    for (pt, r) in pts.iter().zip(evaluated) {
        rows.push((*pt, r?));
    }
    for pt in &pts {
        if f.value(pt.t, pt.x, pt.y)?.alpha < 0.0 {
            negative_alpha += 1;
        }
    }
    Ok(ResidualReport {
        equations: reduce(&BOUNDARY_NAMES, &rows),
        count: rows.len(),
        engine,
        rejected: vec![],
        negative_alpha,
    })
}

/// Largest relative disagreement between a field's own jet and a
/// fourth-order finite-difference jet of its values.
///
/// Entries are grouped by component and derivative order (`α_t` joins the
/// first derivatives of `α`). An entry's error is divided by the largest of
/// the analytic group at that point, `1e-2` of the largest entry of the
/// component at that point, and `1e-3` of the group's largest value over
/// all samples. The floors keep exact zeros, such as a pressure vanishing
/// to second order on the front, from turning round-off into huge ratios.
///
/// The step at each sample is `h_rel` times the boundary radius at that
/// sample's time.
pub fn cross_engine_check(
    field: &dyn Field,
    boundary: &BoundaryCircle,
    samples: &[SamplePoint],
    h_rel: f64,
) -> Result<f64> {
    let jets: Vec<Result<(FieldJet, FieldJet)>> = samples
        .par_iter()
        .map(|pt| {
            let fd = FdField::new(field, 4, h_rel * boundary.radius(pt.t))?;
            Ok((field.jet(pt.t, pt.x, pt.y)?, fd.jet(pt.t, pt.x, pt.y)?))
        })
        .collect();
    let jets = jets.into_iter().collect::<Result<Vec<_>>>()?;
    let mut global = [0.0f64; 12];
    for (a, _) in &jets {
        for (g, grp) in global.iter_mut().zip(groups(a)) {
            *g = g.max(amax(&grp));
        }
    }
    Ok(jets
        .iter()
        .map(|(a, b)| disagreement(a, b, &global))
        .fold(0.0, f64::max))
}

/// Relative disagreement between two jets at one point, without the
/// sample-set floor of [`cross_engine_check`].
pub fn jet_disagreement(a: &FieldJet, b: &FieldJet) -> f64 {
    disagreement(a, b, &[0.0; 12])
}

fn amax(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn groups(j: &FieldJet) -> Vec<Vec<f64>> {
    let mut g = Vec::with_capacity(12);
    for (s, extra) in [(&j.alpha, Some(j.alpha_t)), (&j.u1, None), (&j.u2, None), (&j.p, None)] {
        g.push(vec![s.v]);
        let mut first = vec![s.x, s.y];
        first.extend(extra);
        g.push(first);
        g.push(vec![s.xx, s.xy, s.yy]);
    }
    g
}

fn disagreement(a: &FieldJet, b: &FieldJet, global: &[f64; 12]) -> f64 {
    let (ga, gb) = (groups(a), groups(b));
    let mut worst: f64 = 0.0;
    for (k, (xa, xb)) in ga.iter().zip(gb.iter()).enumerate() {
        let comp = k / 3 * 3;
        let c = ga[comp..comp + 3].iter().map(|g| amax(g)).fold(0.0, f64::max);
        let den = amax(xa).max(1e-2 * c).max(1e-3 * global[k]);
        for (va, vb) in xa.iter().zip(xb.iter()) {
            let d = (va - vb).abs();
            if d == 0.0 {
                continue;
            }
            worst = worst.max(if den > 0.0 { d / den } else { f64::INFINITY });
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ConstantState, PolynomialField};
    use crate::model::PowerLawParams;

    #[test]
    fn constant_state_has_zero_residuals() {
        let f = ConstantState { alpha: 2.0, u1: 0.0, u2: 0.0, p: 3.0 };
        let triplet = ConstitutiveTriplet::PowerLaw(PowerLawParams { d0: 1.0, s0: 0.0, sigma0: 1.0, m: -1.0, n: 2.0 });
        let phys = PhysConstants::new(4.0).unwrap();
        let b = BoundaryCircle::new(1.0, 0.0).unwrap();
        let pts = SampleSet::default().points(&b);
        let r = governing_residual(&f, &triplet, &phys, &pts, Engine::Analytic).unwrap();
        assert_eq!(r.max_linf(), 0.0);
        assert_eq!(r.count, pts.len());
        let f0 = ConstantState { p: 0.0, ..f };
        let r = boundary_residual(&f0, &b, &phys, 1.0, 16, Engine::Analytic).unwrap();
        assert_eq!(r.max_linf(), 0.0);
    }

    #[test]
    fn sample_points_lie_in_annulus() {
        let b = BoundaryCircle::new(2.0, -1.0).unwrap();
        let s = SampleSet::default();
        for p in s.points(&b) {
            let r = (p.x * p.x + p.y * p.y).sqrt();
            let rad = b.radius(p.t);
            assert!(r <= rad * (1.0 + 1e-14) && r >= 0.01 * rad * (1.0 - 1e-14));
        }
    }

    #[test]
    fn polynomial_cross_check_is_tight() {
        let f = PolynomialField {
            components: [
                vec![(1.0, 0, 0, 0), (0.3, 1, 1, 1)],
                vec![(1.0, 0, 3, 0), (-0.5, 0, 1, 2)],
                vec![(0.2, 0, 2, 1)],
                vec![(1.0, 1, 1, 1), (2.0, 0, 0, 2)],
            ],
        };
        let pts: Vec<SamplePoint> = (0..10)
            .map(|i| SamplePoint { t: 1.0 + 0.1 * i as f64, x: 0.3 - 0.05 * i as f64, y: 0.2 + 0.03 * i as f64 })
            .collect();
        let b = BoundaryCircle::new(1.0, 0.0).unwrap();
        let d = cross_engine_check(&f, &b, &pts, 1e-4).unwrap();
        assert!(d <= 1e-12, "{d}");
    }

    #[test]
    fn log_radii_endpoints() {
        let r = log_radii(0.01, 1.0, 5);
        assert_eq!(r.len(), 5);
        assert!((r[0] - 0.01).abs() < 1e-17);
        assert_eq!(r[4], 1.0);
        assert!((r[2] - 0.1).abs() < 1e-15);
    }
}

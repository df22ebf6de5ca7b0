//! Physical constants, constitutive laws and the exponent formulas that tie
//! them to the scale symmetry.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::dd::{Dd, Scalar};

/// Relative tolerance for closed-form constraint checks.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// Bulk viscosity `λ`; the shear viscosity is normalised to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysConstants {
    pub lambda: f64,
}

impl PhysConstants {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
        }
        Ok(PhysConstants { lambda })
    }
}

/// `D = d0 α^m`, `S = s0 α^n`, `Σ = σ0 α^(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawParams<S = f64> {
    pub d0: S,
    pub s0: S,
    pub sigma0: S,
    pub m: f64,
    pub n: f64,
}

impl PowerLawParams<Dd> {
    pub fn to_f64(&self) -> PowerLawParams {
        PowerLawParams {
            d0: self.d0.to_f64(),
            s0: self.s0.to_f64(),
            sigma0: self.sigma0.to_f64(),
            m: self.m,
            n: self.n,
        }
    }
}

/// Exponents of the scale-invariant ansatz and of the moving front.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaleExponents {
    pub gamma: f64,
    pub kappa: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct FieldValue {
    pub alpha: f64,
    pub u1: f64,
    pub u2: f64,
    pub p: f64,
}

/// `γ = (m+1)/(2(n-1))`, `κ = (1+m)/(1-n) = -2γ`.
pub fn scale_exponents(m: f64, n: f64) -> Result<ScaleExponents> {
    if n == 1.0 {
        return Err(Error::DegenerateScale);
    }
    let gamma = (m + 1.0) / (2.0 * (n - 1.0));
    Ok(ScaleExponents {
        gamma,
        kappa: -2.0 * gamma,
    })
}

/// `α^e` with the domain rules used throughout: negative or zero bases are
/// only accepted where the power is real and finite.
pub fn checked_pow(alpha: f64, e: f64) -> Result<f64> {
    checked_pow_in(alpha, e)
}

/// [`checked_pow`] in any working precision.
pub fn checked_pow_in<S: Scalar>(alpha: S, e: f64) -> Result<S> {
    let a = alpha.to_f64();
    if e == 0.0 {
        return Ok(S::from_f64(1.0));
    }
    if a > 0.0 {
        return Ok(alpha.powf(e));
    }
    if a == 0.0 && e > 0.0 {
        return Ok(S::from_f64(0.0));
    }
    if a < 0.0 && e.fract() == 0.0 && e.abs() < i32::MAX as f64 {
        return Ok(alpha.powi(e as i32));
    }
    Err(Error::Domain(format!(
        "alpha = {a} outside the domain of alpha^{e}"
    )))
}

/// A scalar function of the concentration with its first derivative.
pub trait ScalarLaw: Send + Sync + fmt::Debug {
    /// `(f(α), f'(α))`.
    fn eval(&self, alpha: f64) -> Result<(f64, f64)>;
}

/// `Σ_i c_i α^{e_i}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerSum {
    pub terms: Vec<(f64, f64)>,
}

impl PowerSum {
    pub fn new(terms: Vec<(f64, f64)>) -> Self {
        PowerSum { terms }
    }

    pub fn monomial(c: f64, e: f64) -> Self {
        PowerSum::new(vec![(c, e)])
    }
}

impl ScalarLaw for PowerSum {
    fn eval(&self, alpha: f64) -> Result<(f64, f64)> {
        let (mut v, mut d) = (0.0, 0.0);
        for &(c, e) in &self.terms {
            if c == 0.0 {
                continue;
            }
            v += c * checked_pow(alpha, e)?;
            if e != 0.0 {
                d += c * e * checked_pow(alpha, e - 1.0)?;
            }
        }
        Ok((v, d))
    }
}

#[derive(Debug, Clone)]
pub enum ConstitutiveTriplet {
    PowerLaw(PowerLawParams),
    /// Power laws whose coefficients are known beyond `f64`; closed forms
    /// use this so their constants and the laws agree exactly.
    ExactPowerLaw(PowerLawParams<Dd>),
    General {
        s: Arc<dyn ScalarLaw>,
        d: Arc<dyn ScalarLaw>,
        sigma: Arc<dyn ScalarLaw>,
    },
}

/// Constitutive values at one concentration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constitutive<S = f64> {
    pub s: S,
    pub d: S,
    pub sigma: S,
    pub ds: S,
    /// `d(αΣ)/dα`
    pub d_alpha_sigma: S,
    /// `dD/dα`, needed by the mobility equation.
    pub dd: S,
}

impl ConstitutiveTriplet {
    pub fn power_law(&self) -> Option<PowerLawParams> {
        match self {
            ConstitutiveTriplet::PowerLaw(p) => Some(*p),
            ConstitutiveTriplet::ExactPowerLaw(p) => Some(p.to_f64()),
            ConstitutiveTriplet::General { .. } => None,
        }
    }

    pub fn general(
        s: impl ScalarLaw + 'static,
        d: impl ScalarLaw + 'static,
        sigma: impl ScalarLaw + 'static,
    ) -> Self {
        ConstitutiveTriplet::General {
            s: Arc::new(s),
            d: Arc::new(d),
            sigma: Arc::new(sigma),
        }
    }
}

pub fn constitutive_eval(triplet: &ConstitutiveTriplet, alpha: f64) -> Result<Constitutive> {
    constitutive_eval_in(triplet, alpha)
}

fn power_law_eval<S: Scalar>(p: &PowerLawParams<S>, alpha: S) -> Result<Constitutive<S>> {
    let an1 = checked_pow_in(alpha, p.n - 1.0)?;
    let dd = if p.m == 0.0 {
        S::from_f64(0.0)
    } else {
        p.d0 * checked_pow_in(alpha, p.m - 1.0)? * p.m
    };
    Ok(Constitutive {
        s: p.s0 * checked_pow_in(alpha, p.n)?,
        d: p.d0 * checked_pow_in(alpha, p.m)?,
        sigma: p.sigma0 * an1,
        ds: p.s0 * an1 * p.n,
        d_alpha_sigma: p.sigma0 * an1 * p.n,
        dd,
    })
}

/// [`constitutive_eval`] in any working precision. General laws are
/// evaluated in `f64` and widened.
pub fn constitutive_eval_in<S: Scalar>(triplet: &ConstitutiveTriplet, alpha: S) -> Result<Constitutive<S>> {
    let k = S::from_f64;
    match triplet {
        ConstitutiveTriplet::PowerLaw(p) => power_law_eval(
            &PowerLawParams { d0: k(p.d0), s0: k(p.s0), sigma0: k(p.sigma0), m: p.m, n: p.n },
            alpha,
        ),
        ConstitutiveTriplet::ExactPowerLaw(p) => power_law_eval(
            &PowerLawParams {
                d0: S::from_dd(p.d0),
                s0: S::from_dd(p.s0),
                sigma0: S::from_dd(p.sigma0),
                m: p.m,
                n: p.n,
            },
            alpha,
        ),
        ConstitutiveTriplet::General { s, d, sigma } => {
            let a = alpha.to_f64();
            let (sv, ds) = s.eval(a)?;
            let (dv, dd) = d.eval(a)?;
            let (sg, dsg) = sigma.eval(a)?;
            Ok(Constitutive {
                s: k(sv),
                d: k(dv),
                sigma: k(sg),
                ds: k(ds),
                d_alpha_sigma: k(sg + a * dsg),
                dd: k(dd),
            })
        }
    }
}

/// Outcome of [`validate_power_law`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawDiagnostics {
    /// `n σ0 / ((n-1)(2+λ))`, when `n ≠ 1`.
    pub required_s0: Option<f64>,
    pub s0_link_holds: bool,
    pub d0_positive: bool,
    /// `n(n-1) ≠ 0`
    pub n_nondegenerate: bool,
    pub flags: Vec<String>,
}

/// The proliferation scale compatible with the pressure-difference scale.
pub fn linked_s0(n: f64, sigma0: f64, phys: &PhysConstants) -> Result<f64> {
    if n == 1.0 {
        return Err(Error::DegenerateScale);
    }
    Ok(n * sigma0 / ((n - 1.0) * (2.0 + phys.lambda)))
}

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= CONSTRAINT_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Reports which optional constraints hold; never rejects.
pub fn validate_power_law(params: &PowerLawParams, phys: &PhysConstants) -> PowerLawDiagnostics {
    let required_s0 = linked_s0(params.n, params.sigma0, phys).ok();
    let s0_link_holds = required_s0.is_some_and(|r| close(params.s0, r));
    let d0_positive = params.d0 > 0.0;
    let n_nondegenerate = params.n * (params.n - 1.0) != 0.0;
    let mut flags = Vec::new();
    if !d0_positive {
        flags.push("degenerate mobility".to_string());
    }
    if !n_nondegenerate {
        flags.push("n(n-1) = 0".to_string());
    }
    if !s0_link_holds {
        flags.push("s0 not linked to sigma0".to_string());
    }
    PowerLawDiagnostics {
        required_s0,
        s0_link_holds,
        d0_positive,
        n_nondegenerate,
        flags,
    }
}

/// Proliferation law `k1 α^m - k2 α^n`.
pub fn logistic_proliferation(k1: f64, k2: f64, m_exp: f64, n_exp: f64) -> PowerSum {
    PowerSum::new(vec![(k1, m_exp), (-k2, n_exp)])
}

/// The pressure difference that makes `k1 α^m - k2 α^n` compatible:
/// `Σ = (2+λ)[k1(1-1/m) α^(m-1) + k2(1/n-1) α^(n-1)]`.
pub fn sigma_from_proliferation(
    k1: f64,
    k2: f64,
    m_exp: f64,
    n_exp: f64,
    phys: &PhysConstants,
) -> Result<PowerSum> {
    if m_exp == 0.0 || n_exp == 0.0 {
        return Err(Error::Domain("exponents must be nonzero".into()));
    }
    let l = 2.0 + phys.lambda;
    Ok(PowerSum::new(vec![
        (l * k1 * (1.0 - 1.0 / m_exp), m_exp - 1.0),
        (l * k2 * (1.0 / n_exp - 1.0), n_exp - 1.0),
    ]))
}

/// `max |S/α - dS/dα + d(αΣ)/dα / (2+λ)|` over the samples.
pub fn compatibility_residual(
    triplet: &ConstitutiveTriplet,
    phys: &PhysConstants,
    alpha_samples: &[f64],
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &a in alpha_samples {
        if a == 0.0 {
            return Err(Error::Domain("compatibility needs alpha != 0".into()));
        }
        let c = constitutive_eval(triplet, a)?;
        let r = c.s / a - c.ds + c.d_alpha_sigma / (2.0 + phys.lambda);
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

//! The five closed-form families. Each is radially symmetric: with
//! `s = x² + y²`, the fields are `α(t,s)`, `u = (x, y)·q(t,s)`, `p(t,s)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    logistic_proliferation, sigma_from_proliferation, ConstitutiveTriplet, PhysConstants,
    PowerLawParams, PowerSum,
};
use crate::numerics::dd::{Dd, Scalar};
use crate::numerics::dual::Real;
use crate::numerics::expint::{exp_over_z_integral, exp_over_z_integral_dd};
use crate::solutions::constants::{
    log_moving_constants_dd, power_moving_constants_dd, regular_c3, stationary_constants,
    steady_constants, MovingConstants, StationaryConstants, SteadyConstants,
};

/// `∫_{√s}^δ e^{-a z²}/z dz` as a function of `s`, with derivatives in `s`
/// from the Leibniz rule rather than through the quadrature.
pub fn exp_integral_term<T: Real>(a: f64, s: T, delta: f64) -> Result<T> {
    let s0 = s.value();
    let j0 = exp_over_z_integral(a, s0.sqrt(), delta)?;
    Ok(s.map_derivs(&move |s: T::Base, k| {
        if k == 0 {
            return match exp_over_z_integral_dd(a, s.to_dd(), delta) {
                Some(v) => T::Base::from_dd(v),
                None => T::Base::from_f64(j0),
            };
        }
        // J^(k)(s) = -½ d^{k-1}/ds^{k-1} [e^{-as} s^{-1}]
        let e = (s * -a).exp();
        let mut acc = T::Base::from_f64(0.0);
        let mut binom = 1.0;
        let mut fact = 1.0;
        for j in 0..k {
            if j > 0 {
                binom *= (k - j) as f64 / j as f64;
                fact *= j as f64;
            }
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc = acc + s.powi(-(1 + j as i32)) * (binom * (-a).powi((k - 1 - j) as i32) * sign * fact);
        }
        e * acc * -0.5
    }))
}

fn positive_time<T: Real>(t: T) -> Result<()> {
    if !(t.value() > 0.0) {
        return Err(Error::Domain(format!("t must be positive, got {}", t.value())));
    }
    Ok(())
}

/// Gaussian concentration decaying in time on a fixed circle; solves the
/// governing equations for any `c3, c4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianDecay {
    pub c1: f64,
    pub c3: f64,
    pub c4: f64,
    pub n: f64,
    pub d0: f64,
    pub lambda: f64,
    pub sigma0: f64,
    pub delta: f64,
    /// Linked proliferation scale `n σ0 / ((n-1)(2+λ))`.
    pub s0: f64,
}

impl GaussianDecay {
    #[allow(clippy::too_many_arguments)]
    pub fn new(c1: f64, c3: f64, c4: f64, n: f64, d0: f64, lambda: f64, sigma0: f64, delta: f64) -> Result<Self> {
        if n == 1.0 {
            return Err(Error::Restriction("n != 1 required".into()));
        }
        if !(d0 > 0.0) {
            return Err(Error::Restriction("d0 > 0 required".into()));
        }
        if !(c1 > 0.0) {
            return Err(Error::Restriction("c1 > 0 required".into()));
        }
        if !(delta > 0.0) {
            return Err(Error::Restriction("delta > 0 required".into()));
        }
        PhysConstants::new(lambda).map_err(|e| Error::Restriction(e.to_string()))?;
        let s0 = n * sigma0 / ((n - 1.0) * (2.0 + lambda));
        Ok(GaussianDecay { c1, c3, c4, n, d0, lambda, sigma0, delta, s0 })
    }

    /// Coefficients `(A, B)` of the two pressure integrals.
    fn pressure_coeffs(&self) -> (f64, f64) {
        let k = (self.n - 1.0) * (2.0 + self.lambda);
        (2.0 * self.sigma0 * self.c1.powf(self.n) / k, 2.0 * self.c1 / (self.n - 1.0))
    }

    pub fn regular_c3(&self) -> f64 {
        regular_c3(self.c1, self.n, self.sigma0, self.lambda).unwrap_or(f64::NAN)
    }

    pub fn radial<T: Real>(&self, t: T, s: T) -> Result<[T; 3]> {
        positive_time(t)?;
        let (n, d0) = (self.n, self.d0);
        let k = (n - 1.0) * (2.0 + self.lambda);
        let bracket = (s / (4.0 * d0)).exp() * (self.c3 / self.c1)
            - (s * ((1.0 - n) / (4.0 * d0))).exp() * (2.0 * self.sigma0 * self.c1.powf(n - 1.0) / k)
            - 2.0 / (n - 1.0);
        let q = bracket * d0 / (t * s);
        let (a, b) = self.pressure_coeffs();
        let inner = exp_integral_term(n / (4.0 * d0), s, self.delta)? * a
            + exp_integral_term(1.0 / (4.0 * d0), s, self.delta)? * b
            + s.ln() * (self.c3 / 2.0)
            + self.c4;
        let p = t.powf(n / (1.0 - n)) * inner;
        let alpha = t.powf(1.0 / (1.0 - n)) * (s * (-1.0 / (4.0 * d0))).exp() * self.c1;
        Ok([alpha, q, p])
    }

    /// The linked `s0` is carried beyond `f64` so the source and the
    /// pressure law agree exactly.
    pub fn triplet(&self) -> ConstitutiveTriplet {
        let n = self.n;
        ConstitutiveTriplet::ExactPowerLaw(PowerLawParams {
            d0: Dd::from(self.d0),
            s0: Dd::from(self.sigma0) * n / ((n - 1.0) * (2.0 + self.lambda)),
            sigma0: Dd::from(self.sigma0),
            m: -1.0,
            n,
        })
    }
}

/// The Gaussian family with constants chosen so that all boundary
/// conditions hold on the fixed circle `r = δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryFront {
    pub c3: f64,
    pub c4: f64,
    pub n: f64,
    pub lambda: f64,
    pub d0: f64,
    pub derived: StationaryConstants,
    pub inner: GaussianDecay,
}

impl StationaryFront {
    pub fn new(c3: f64, c4: f64, n: f64, lambda: f64, d0: f64) -> Result<Self> {
        let k = stationary_constants(c3, c4, n, lambda, d0)?;
        let inner = GaussianDecay::new(k.c1, c3, c4, n, d0, lambda, k.sigma0, k.delta)?;
        Ok(StationaryFront { c3, c4, n, lambda, d0, derived: k, inner })
    }

    /// The `c3` that origin regularity would need, `c3 (nE - E^n)/(n-1)`.
    pub fn regular_c3(&self) -> f64 {
        let (n, e) = (self.n, self.derived.e);
        self.c3 * (n * e - e.powf(n)) / (n - 1.0)
    }
}

/// Concentration `c1 r^{2/(1+m)}`, front radius `δ t^{(1+m)/(2(1-n))}`.
///
/// The closed form reads its constants from `exact`, so the relations
/// between them hold beyond `f64` rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerMoving {
    pub c1: f64,
    pub delta: f64,
    pub m: f64,
    pub n: f64,
    pub lambda: f64,
    pub derived: MovingConstants,
    #[serde(skip)]
    pub exact: MovingConstants<Dd>,
}

impl PowerMoving {
    pub fn new(c1: f64, delta: f64, m: f64, n: f64, lambda: f64) -> Result<Self> {
        let exact = power_moving_constants_dd(c1, delta, m, n, lambda)?;
        Ok(PowerMoving { c1, delta, m, n, lambda, derived: exact.to_f64(), exact })
    }

    pub fn radial<T: Real>(&self, t: T, s: T) -> Result<[T; 3]> {
        positive_time(t)?;
        let (m, n) = (self.m, self.n);
        let c1 = Dd::from(self.c1);
        let MovingConstants { d0, s0, c2, c3, .. } = self.exact;
        let k = |v: Dd| T::cst_dd(v);
        let tau = t.powf((1.0 + m + n) / (1.0 - n));
        let bracket = tau * k(d0 * c2 * Scalar::powf(c1, m))
            + s.powf((1.0 + m + n) / (1.0 + m)) * k(s0 * Scalar::powf(c1, n - 1.0) * ((1.0 + m) / (2.0 * (1.0 + m + n))));
        let q = s.powf(-(2.0 + m) / (1.0 + m)) * bracket;
        let p = s.powf(n / (1.0 + m))
            * k(s0 * Scalar::powf(c1, n - 1.0 - m) * ((1.0 + m) * (1.0 + m)) / (d0 * (4.0 * n * (1.0 + m + n))))
            - tau / s * k(c2 / 2.0)
            + t.powf(n / (1.0 - n)) * k(c3);
        let alpha = s.powf(1.0 / (1.0 + m)) * self.c1;
        Ok([alpha, q, p])
    }

    pub fn triplet(&self) -> ConstitutiveTriplet {
        ConstitutiveTriplet::ExactPowerLaw(PowerLawParams {
            d0: self.exact.d0,
            s0: self.exact.s0,
            sigma0: self.exact.sigma0,
            m: self.m,
            n: self.n,
        })
    }
}

/// Concentration `c1 r^{-2/n}` with `m = -n-1` and a logarithmic velocity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogMoving {
    pub c1: f64,
    pub delta: f64,
    pub n: f64,
    pub lambda: f64,
    pub derived: MovingConstants,
    #[serde(skip)]
    pub exact: MovingConstants<Dd>,
}

impl LogMoving {
    pub fn new(c1: f64, delta: f64, n: f64, lambda: f64) -> Result<Self> {
        let exact = log_moving_constants_dd(c1, delta, n, lambda)?;
        Ok(LogMoving { c1, delta, n, lambda, derived: exact.to_f64(), exact })
    }

    pub fn m(&self) -> f64 {
        -self.n - 1.0
    }

    pub fn radial<T: Real>(&self, t: T, s: T) -> Result<[T; 3]> {
        positive_time(t)?;
        let n = self.n;
        let c1 = Dd::from(self.c1);
        let MovingConstants { d0, s0, c2, c3, .. } = self.exact;
        let k = |v: Dd| T::cst_dd(v);
        let log = t.ln() * (n / (1.0 - n)) + s.ln();
        let c1_2n = Scalar::powf(c1, 2.0 * n);
        let bracket = (log * k(s0 * c1_2n) + k(d0 * c2 * 2.0)) / k(Scalar::powf(c1, 1.0 + n) * 2.0);
        let q = s.powf((1.0 - n) / n) * bracket;
        let p = -((log + 1.0) * k(s0 * c1_2n) + k(d0 * c2 * 2.0)) / (s * k(d0 * 4.0))
            + t.powf(n / (1.0 - n)) * k(c3);
        let alpha = s.powf(-1.0 / n) * self.c1;
        Ok([alpha, q, p])
    }

    pub fn triplet(&self) -> ConstitutiveTriplet {
        ConstitutiveTriplet::ExactPowerLaw(PowerLawParams {
            d0: self.exact.d0,
            s0: self.exact.s0,
            sigma0: self.exact.sigma0,
            m: self.m(),
            n: self.n,
        })
    }
}

/// Time-independent solution with logistic-type proliferation
/// `k1 α^m - k2 α^n` and mobility `d0/α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteadyState {
    pub c1: f64,
    pub c3: f64,
    pub delta: f64,
    pub m_exp: f64,
    pub n_exp: f64,
    pub lambda: f64,
    pub d0: f64,
    pub derived: SteadyConstants,
}

impl SteadyState {
    pub fn new(c1: f64, c3: f64, delta: f64, m_exp: f64, n_exp: f64, lambda: f64, d0: f64) -> Result<Self> {
        PhysConstants::new(lambda).map_err(|e| Error::Restriction(e.to_string()))?;
        let derived = steady_constants(c3, delta, m_exp, n_exp, c1, d0)?;
        Ok(SteadyState { c1, c3, delta, m_exp, n_exp, lambda, d0, derived })
    }

    pub fn with_constants(self, derived: SteadyConstants) -> Self {
        SteadyState { derived, ..self }
    }

    pub fn radial<T: Real>(&self, _t: T, s: T) -> Result<[T; 3]> {
        let (m, n, c1, d0) = (self.m_exp, self.n_exp, self.c1, self.d0);
        let SteadyConstants { c4, k1, k2 } = self.derived;
        let a1 = 2.0 * k1 * c1.powf(m) / m;
        let a2 = 2.0 * k2 * c1.powf(n) / n;
        let bracket = (s / (4.0 * d0)).exp() * self.c3 - (s * ((1.0 - m) / (4.0 * d0))).exp() * a1
            + (s * ((1.0 - n) / (4.0 * d0))).exp() * a2;
        let q = bracket * (d0 / c1) / s;
        let p = s.ln() * (self.c3 / 2.0)
            + c4
            + exp_integral_term(m / (4.0 * d0), s, self.delta)? * a1
            - exp_integral_term(n / (4.0 * d0), s, self.delta)? * a2;
        let alpha = (s * (-1.0 / (4.0 * d0))).exp() * c1;
        Ok([alpha, q, p])
    }

    pub fn source(&self) -> PowerSum {
        logistic_proliferation(self.derived.k1, self.derived.k2, self.m_exp, self.n_exp)
    }

    pub fn triplet(&self) -> ConstitutiveTriplet {
        let phys = PhysConstants { lambda: self.lambda };
        let sigma = sigma_from_proliferation(self.derived.k1, self.derived.k2, self.m_exp, self.n_exp, &phys)
            .expect("nonzero exponents are enforced at construction");
        ConstitutiveTriplet::general(self.source(), PowerSum::monomial(self.d0, -1.0), sigma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::dual::{derivs2, Dual};

    #[test]
    fn integral_term_derivatives_match_finite_differences() {
        let (a, delta) = (0.7, 1.8);
        let s = 0.9;
        let (v, d1, d2) = derivs2(|s| exp_integral_term(a, s, delta).unwrap(), s);
        let f = |s: f64| exp_over_z_integral(a, s.sqrt(), delta).unwrap();
        let h = 1e-4;
        assert!((v - f(s)).abs() < 1e-15);
        let fd1 = (f(s + h) - f(s - h)) / (2.0 * h);
        let fd2 = (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h);
        assert!((d1 - fd1).abs() < 1e-8);
        assert!((d2 - fd2).abs() < 1e-5);
        assert!((d1 + (-a * s).exp() / (2.0 * s)).abs() < 1e-15);
    }

    #[test]
    fn third_derivative_of_integral_term() {
        // nested three levels deep
        let (a, delta, s) = (0.3, 2.0, 1.1);
        let x: Dual<Dual<Dual<f64>>> = Dual::new(
            Dual::new(Dual::new(s, 1.0), Dual::new(1.0, 0.0)),
            Dual::new(Dual::new(1.0, 0.0), Dual::new(0.0, 0.0)),
        );
        let out = exp_integral_term(a, x, delta).unwrap();
        // d³/ds³ of -½ e^{-as}/s integrated once: J''' = -½ (e^{-as}/s)''
        let g = |s: f64| (-a * s).exp() / s;
        let h = 1e-3;
        let g2 = (g(s + h) - 2.0 * g(s) + g(s - h)) / (h * h);
        assert!((out.eps.eps.eps - (-0.5 * g2)).abs() < 1e-5);
    }
}

//! Parameter restrictions under which the closed forms solve the full
//! boundary-value problem.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::dd::{Dd, Scalar};

/// The `c3` that removes the `1/r` part of the velocity at the origin.
pub fn regular_c3(c1: f64, n: f64, sigma0: f64, lambda: f64) -> Result<f64> {
    if n == 1.0 {
        return Err(Error::DegenerateScale);
    }
    Ok(2.0 * sigma0 * c1.powf(n) / ((n - 1.0) * (2.0 + lambda)) + 2.0 * c1 / (n - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryConstants {
    pub delta: f64,
    pub e: f64,
    pub c1: f64,
    pub sigma0: f64,
    pub s0: f64,
}

/// Constants that make the Gaussian profile satisfy all boundary conditions
/// on a fixed circle.
pub fn stationary_constants(c3: f64, c4: f64, n: f64, lambda: f64, d0: f64) -> Result<StationaryConstants> {
    if c3 == 0.0 {
        return Err(Error::Restriction("c3 != 0 required".into()));
    }
    if n * (n - 1.0) == 0.0 {
        return Err(Error::Restriction("n(n-1) != 0 required".into()));
    }
    if !(d0 > 0.0) {
        return Err(Error::Restriction("d0 > 0 required".into()));
    }
    if !(lambda > 0.0) {
        return Err(Error::Restriction("lambda > 0 required".into()));
    }
    let delta = (-c4 / c3).exp();
    let e = ((-2.0 * c4 / c3).exp() / (4.0 * d0)).exp();
    let c1 = n * c3 * e / 2.0;
    let sigma0 = -(2.0 + lambda) * c3 / 2.0 * (2.0 / (n * c3)).powf(n);
    let s0 = n * sigma0 / ((n - 1.0) * (2.0 + lambda));
    if !(c1 > 0.0) {
        return Err(Error::Restriction("n*c3 > 0 required for a positive concentration".into()));
    }
    if !sigma0.is_finite() {
        return Err(Error::Restriction(format!("sigma0 is not real for n={n}, c3={c3}")));
    }
    Ok(StationaryConstants { delta, e, c1, sigma0, s0 })
}

/// Derived constants of the two moving-front families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MovingConstants<S = f64> {
    pub d0: S,
    pub s0: S,
    pub sigma0: S,
    pub c2: S,
    pub c3: S,
}

impl MovingConstants<Dd> {
    pub fn to_f64(&self) -> MovingConstants {
        MovingConstants {
            d0: self.d0.to_f64(),
            s0: self.s0.to_f64(),
            sigma0: self.sigma0.to_f64(),
            c2: self.c2.to_f64(),
            c3: self.c3.to_f64(),
        }
    }
}

fn common_moving_checks(c1: f64, delta: f64, n: f64, lambda: f64) -> Result<()> {
    if n * (n - 1.0) == 0.0 {
        return Err(Error::Restriction("n(n-1) != 0 required".into()));
    }
    if !(c1 > 0.0) {
        return Err(Error::Restriction("c1 > 0 required".into()));
    }
    if !(delta > 0.0) {
        return Err(Error::Restriction("delta > 0 required".into()));
    }
    if !(lambda > 0.0) {
        return Err(Error::Restriction("lambda > 0 required".into()));
    }
    Ok(())
}

/// Power-law front `α = c1 r^{2/(1+m)}` with `m ∉ {-1, -n-1}`.
pub fn power_moving_constants(c1: f64, delta: f64, m: f64, n: f64, lambda: f64) -> Result<MovingConstants> {
    Ok(power_moving_constants_dd(c1, delta, m, n, lambda)?.to_f64())
}

/// [`power_moving_constants`] in double-double precision.
pub fn power_moving_constants_dd(c1: f64, delta: f64, m: f64, n: f64, lambda: f64) -> Result<MovingConstants<Dd>> {
    if m == -1.0 {
        return Err(Error::Restriction("m != -1 required".into()));
    }
    if 1.0 + m + n == 0.0 {
        return Err(Error::Restriction(
            "m = -n-1: use the logarithmic moving family".into(),
        ));
    }
    common_moving_checks(c1, delta, n, lambda)?;
    let l = lambda;
    let (c1, delta) = (Dd::from(c1), Dd::from(delta));
    let d0 = c1.powf(-1.0 - m) * (1.0 + m) / (4.0 * (1.0 + l));
    if !(d0.to_f64() > 0.0) {
        return Err(Error::Restriction(format!("unphysical mobility d0 = {} (needs m > -1)", d0.to_f64())));
    }
    let sigma0 = -c1.powf(1.0 - n) * delta.powf((2.0 - 2.0 * n) / (1.0 + m)) * (3.0 + m + l) / n;
    let s0 = sigma0 * n / ((n - 1.0) * (2.0 + l));
    let c2 = c1 * delta.powf(2.0 + 2.0 / (1.0 + m)) * (2.0 * (1.0 + l) * (-1.0 + m + 2.0 * n + l * (m + n)))
        / ((1.0 - n) * (1.0 + m + n) * (2.0 + l));
    let c3 = c1 * delta.powf(2.0 / (1.0 + m)) * ((1.0 + l) * (3.0 + m + l - n * (2.0 + l)))
        / (n * (n - 1.0) * (2.0 + l));
    Ok(MovingConstants { d0, s0, sigma0, c2, c3 })
}

/// Logarithmic front, the `m = -n-1` branch.
pub fn log_moving_constants(c1: f64, delta: f64, n: f64, lambda: f64) -> Result<MovingConstants> {
    Ok(log_moving_constants_dd(c1, delta, n, lambda)?.to_f64())
}

/// [`log_moving_constants`] in double-double precision.
pub fn log_moving_constants_dd(c1: f64, delta: f64, n: f64, lambda: f64) -> Result<MovingConstants<Dd>> {
    common_moving_checks(c1, delta, n, lambda)?;
    let l = lambda;
    let (c1, delta) = (Dd::from(c1), Dd::from(delta));
    let d0 = -c1.powf(n) * n / (4.0 * (1.0 + l));
    if !(d0.to_f64() > 0.0) {
        return Err(Error::Restriction(format!(
            "unphysical mobility d0 = {} (needs n*c1^n < 0)",
            d0.to_f64()
        )));
    }
    let sigma0 = c1.powf(1.0 - n) * delta.powf(2.0 - 2.0 / n) * ((n - 2.0 - l) / n);
    let s0 = sigma0 * n / ((n - 1.0) * (2.0 + l));
    let c2 = c1 * 2.0 * (1.0 + l) * (delta.ln() * (2.0 * (2.0 - n + l)) + n * (2.0 + l)) * delta.powf(2.0 - 2.0 / n)
        / (n * (1.0 - n) * (2.0 + l));
    let c3 = c1 * delta.powf(-2.0 / n) * ((1.0 + l) * (2.0 + l - n * (3.0 + l))) / (n * (n - 1.0) * (2.0 + l));
    Ok(MovingConstants { d0, s0, sigma0, c2, c3 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteadyConstants {
    pub c4: f64,
    pub k1: f64,
    pub k2: f64,
}

/// Constants that make the steady profile satisfy the boundary conditions.
pub fn steady_constants(c3: f64, delta: f64, m_exp: f64, n_exp: f64, c1: f64, d0: f64) -> Result<SteadyConstants> {
    if m_exp == n_exp {
        return Err(Error::Restriction("m != n required".into()));
    }
    if !(0.0 < m_exp && m_exp < n_exp) {
        return Err(Error::Restriction("0 < m < n required".into()));
    }
    if !(c1 > 0.0) || !(d0 > 0.0) || !(delta > 0.0) {
        return Err(Error::Restriction("c1, d0, delta > 0 required".into()));
    }
    let (m, n) = (m_exp, n_exp);
    let c4 = -c3 * delta.ln();
    let k1 = c3 * m * n / (2.0 * c1.powf(m) * (n - m)) * (m * delta * delta / (4.0 * d0)).exp();
    let k2 = c3 * m * n / (2.0 * c1.powf(n) * (n - m)) * (n * delta * delta / (4.0 * d0)).exp();
    Ok(SteadyConstants { c4, k1, k2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_c3_examples() {
        assert_eq!(regular_c3(1.0, 3.0, -3.0, 4.0).unwrap(), 0.5);
        assert_eq!(regular_c3(1.0, 2.0, 0.0, 7.0).unwrap(), 2.0);
        assert_eq!(regular_c3(2.0, 2.0, -6.0, 4.0).unwrap(), -4.0);
        assert_eq!(regular_c3(1.0, 1.0, 0.0, 1.0), Err(Error::DegenerateScale));
    }

    #[test]
    fn stationary_examples() {
        let k = stationary_constants(5.0, 2.0, 2.0, 4.0, 2.0).unwrap();
        assert!((k.delta - (-0.4f64).exp()).abs() < 1e-15);
        assert!((k.delta - 0.67).abs() < 0.005);
        // independent arithmetic
        let e = ((-0.8f64).exp() / 8.0).exp();
        assert!((k.e - e).abs() < 1e-15 && (k.e - 1.0578).abs() < 1e-4);
        assert!((k.c1 - 5.0 * e).abs() < 1e-14 && (k.c1 - 5.289).abs() < 1e-3);
        assert!((k.sigma0 + 0.6).abs() < 1e-15);
        assert!((k.s0 + 0.2).abs() < 1e-15);

        let k = stationary_constants(1.0, -2.5, 2.0, 4.0, 8.0).unwrap();
        assert!((k.delta - 12.18).abs() < 0.005);
        assert!(stationary_constants(0.0, 1.0, 2.0, 4.0, 2.0).is_err());
    }

    #[test]
    fn power_moving_examples() {
        let (c1, lambda) = (1.3, 4.0);
        let k = power_moving_constants(c1, 1.0, 1.0, 3.0, lambda).unwrap();
        assert!((k.d0 * 4.0 * (1.0 + lambda) * c1.powf(2.0) - 2.0).abs() < 1e-14);
        assert!(power_moving_constants(1.0, 1.0, -1.0, 3.0, 4.0)
            .unwrap_err()
            .to_string()
            .contains("m != -1"));
        assert!(power_moving_constants(1.0, 1.0, -4.0, 3.0, 4.0)
            .unwrap_err()
            .to_string()
            .contains("logarithmic"));
    }

    #[test]
    fn log_moving_examples() {
        let k = log_moving_constants(2.0, 1.0, -1.0, 1.0).unwrap();
        assert!((k.d0 - 1.0 / 16.0).abs() < 1e-15);
        assert!(log_moving_constants(1.0, 1.0, 2.0, 4.0).is_err());
        assert!(log_moving_constants(1.0, 1.0, 0.0, 4.0).is_err());
    }

    #[test]
    fn steady_examples() {
        let k = steady_constants(1.0, 1.0, 1.0, 2.0, 1.0, 1.0).unwrap();
        assert_eq!(k.c4, 0.0);
        assert!((k.k1 - 0.25f64.exp()).abs() < 1e-15);
        assert!((k.k2 - 0.5f64.exp()).abs() < 1e-15);
        assert!(steady_constants(1.0, 1.0, 2.0, 2.0, 1.0, 1.0).is_err());
    }
}

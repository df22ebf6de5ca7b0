//! The integral `∫_r^δ e^{-a z²}/z dz`.
//!
//! With `u = z²` it becomes `½∫ e^{-au}/u du`, which is expressed through the
//! entire exponential integral `Ein(x) = ∫_0^x (1 - e^{-s})/s ds`:
//!
//! `I = ln(δ/r) + ½ [Ein(a r²) - Ein(a δ²)]`.

use crate::error::{Error, Result};
use crate::numerics::dd::{Dd, Scalar};
use crate::numerics::quad::{quad_adaptive, QuadratureSpec};
use crate::numerics::sum::NeumaierSum;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `E1(x)` for `x ≥ 1` by the modified Lentz continued fraction.
fn e1_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-17 {
            break;
        }
    }
    h * (-x).exp()
}

fn ein_series(x: f64) -> Option<f64> {
    let mut term = 1.0; // x^k / k!
    let mut acc = NeumaierSum::new();
    for k in 1..2000 {
        term *= x / k as f64;
        let contrib = term / k as f64;
        let signed = if k % 2 == 1 { contrib } else { -contrib };
        acc.add(signed);
        if contrib.abs() <= 1e-18 * acc.total().abs().max(1e-300) && k as f64 > x.abs() {
            return Some(acc.total());
        }
        if !contrib.is_finite() {
            return None;
        }
    }
    None
}

/// Entire exponential integral `Ein(x) = Σ_{k≥1} (-1)^{k+1} x^k/(k·k!)`.
///
/// Returns `None` when the power series cannot be summed (very negative x).
pub fn ein(x: f64) -> Option<f64> {
    if x == 0.0 {
        Some(0.0)
    } else if x >= 1.0 {
        Some(e1_cf(x) + EULER_GAMMA + x.ln())
    } else {
        ein_series(x)
    }
}

/// Largest `|x|` for which the double-double series keeps about 18 digits.
const EIN_DD_MAX: f64 = 30.0;

/// `Ein(x)` summed in double-double; `None` for `|x| > 30`.
pub fn ein_dd(x: Dd) -> Option<Dd> {
    let xf = x.to_f64();
    if !(xf.abs() <= EIN_DD_MAX) {
        return None;
    }
    let mut term = Dd::from(1.0);
    let mut acc = Dd::default();
    for k in 1..400 {
        let kf = k as f64;
        term = term * x / kf;
        let contrib = term / kf;
        acc = if k % 2 == 1 { acc + contrib } else { acc - contrib };
        if kf > xf.abs() && contrib.to_f64().abs() <= 1e-34 * acc.to_f64().abs().max(1e-300) {
            return Some(acc);
        }
    }
    None
}

/// Double-double value of `∫_{√s}^δ e^{-a z²}/z dz`, when both series
/// arguments are in range.
pub fn exp_over_z_integral_dd(a: f64, s: Dd, delta: f64) -> Option<Dd> {
    let d = Dd::from(delta);
    if !(s.to_f64() > 0.0) || !(delta > 0.0) {
        return None;
    }
    let log = d.ln() - s.ln() * 0.5;
    if a == 0.0 {
        return Some(log);
    }
    let lo = ein_dd(s * a)?;
    let hi = ein_dd(d * d * a)?;
    Some(log + (lo - hi) * 0.5)
}

fn check_limits(r: f64, delta: f64) -> Result<()> {
    if !(r > 0.0) || !(delta > 0.0) || !r.is_finite() || !delta.is_finite() {
        return Err(Error::SingularEndpoint { r, delta });
    }
    Ok(())
}

/// `∫_r^δ e^{-a z²}/z dz` for `r, δ > 0` (either order).
pub fn exp_over_z_integral(a: f64, r: f64, delta: f64) -> Result<f64> {
    check_limits(r, delta)?;
    if a == 0.0 {
        return Ok((delta / r).ln());
    }
    if r == delta {
        return Ok(0.0);
    }
    match (ein(a * r * r), ein(a * delta * delta)) {
        (Some(lo), Some(hi)) => Ok((delta / r).ln() + 0.5 * (lo - hi)),
        _ => exp_over_z_integral_quad(a, r, delta),
    }
}

/// Same integral by adaptive quadrature after the substitution `z = e^s`.
pub fn exp_over_z_integral_quad(a: f64, r: f64, delta: f64) -> Result<f64> {
    check_limits(r, delta)?;
    let spec = QuadratureSpec {
        rel_tol: 1e-14,
        abs_tol: 1e-15,
        max_depth: 50,
    };
    let (v, _) = quad_adaptive(|s| (-a * (2.0 * s).exp()).exp(), r.ln(), delta.ln(), &spec)?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficient_is_logarithm() {
        let v = exp_over_z_integral(0.0, 1.0, std::f64::consts::E).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn matches_trapezoid_oracle() {
        // 10^6-panel trapezoid on [1, 2]
        let n = 1_000_000;
        let h = 1.0 / n as f64;
        let f = |z: f64| (-z * z).exp() / z;
        let mut s = 0.5 * (f(1.0) + f(2.0));
        for i in 1..n {
            s += f(1.0 + i as f64 * h);
        }
        let trap = s * h;
        let v = exp_over_z_integral(1.0, 1.0, 2.0).unwrap();
        assert!((v - trap).abs() < 1e-10, "{v} vs {trap}");
        assert!((v - 0.107_802_290_992_835_7).abs() < 1e-14);
    }

    #[test]
    fn orientation_antisymmetry() {
        let a = exp_over_z_integral(0.5, 2.0, 1.0).unwrap();
        let b = exp_over_z_integral(0.5, 1.0, 2.0).unwrap();
        assert!((a + b).abs() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive_limits() {
        assert!(exp_over_z_integral(1.0, 0.0, 1.0).is_err());
        assert!(exp_over_z_integral(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn ein_branches_agree_near_switch() {
        let below = ein_series(1.0).unwrap();
        let above = e1_cf(1.0) + EULER_GAMMA;
        assert!((below - above).abs() < 1e-14);
    }

    #[test]
    fn double_double_path_agrees() {
        for &(a, r, d) in &[(1.0, 1.0, 2.0), (-0.7, 0.3, 2.5), (0.0625, 0.1, 12.18), (0.0, 0.5, 1.0)] {
            let f = exp_over_z_integral(a, r, d).unwrap();
            let g = exp_over_z_integral_dd(a, Dd::from(r * r), d).unwrap().to_f64();
            assert!((f - g).abs() <= 1e-14 * f.abs().max(1.0), "{a} {r} {d}: {f} vs {g}");
        }
        let v = exp_over_z_integral_dd(1.0, Dd::from(1.0), 2.0).unwrap();
        assert!((v.to_f64() - 0.107_802_290_992_835_7).abs() < 1e-16);
        assert!(exp_over_z_integral_dd(1.0, Dd::from(1.0), 8.0).is_none());
    }

    #[test]
    fn negative_coefficient() {
        let a = exp_over_z_integral(-0.7, 0.3, 2.5).unwrap();
        let b = exp_over_z_integral_quad(-0.7, 0.3, 2.5).unwrap();
        assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
    }
}

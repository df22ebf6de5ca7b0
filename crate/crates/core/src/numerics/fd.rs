//! Central finite differences and observed-order estimation.

use crate::error::{Error, Result};

/// Central-difference approximation of the first or second derivative.
///
/// `order` is 1 or 2; `scheme` (the truncation order) is 2 or 4.
pub fn fd_derivative(f: impl Fn(f64) -> f64, x: f64, order: u8, scheme: u8, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let v = match (order, scheme) {
        (1, 2) => (f(x + h) - f(x - h)) / (2.0 * h),
        (1, 4) => (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h),
        (2, 2) => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
        (2, 4) => {
            (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
                / (12.0 * h * h)
        }
        _ => {
            return Err(Error::Domain(format!(
                "unsupported derivative order {order} / scheme {scheme}"
            )))
        }
    };
    Ok(v)
}

/// Central first-derivative stencil as integer weights over a common
/// denominator: `f' ≈ Σ w f(x + k h) / (den h)`.
pub(crate) fn first_stencil(scheme: u8) -> (&'static [(f64, f64)], f64) {
    const S2: [(f64, f64); 2] = [(1.0, 1.0), (-1.0, -1.0)];
    const S4: [(f64, f64); 4] = [(2.0, -1.0), (1.0, 8.0), (-1.0, -8.0), (-2.0, 1.0)];
    if scheme == 4 {
        (&S4, 12.0)
    } else {
        (&S2, 2.0)
    }
}

/// Central second-derivative stencil: `f'' ≈ Σ w f(x + k h) / (den h²)`.
pub(crate) fn second_stencil(scheme: u8) -> (&'static [(f64, f64)], f64) {
    const S2: [(f64, f64); 3] = [(1.0, 1.0), (0.0, -2.0), (-1.0, 1.0)];
    const S4: [(f64, f64); 5] = [(2.0, -1.0), (1.0, 16.0), (0.0, -30.0), (-1.0, 16.0), (-2.0, -1.0)];
    if scheme == 4 {
        (&S4, 12.0)
    } else {
        (&S2, 1.0)
    }
}

/// Observed convergence order from errors at successively halved steps.
///
/// Least-squares slope of `log2(error)` against the halving index.
pub fn richardson_order(errors: &[f64]) -> Result<f64> {
    if errors.len() < 3 {
        return Err(Error::Estimation(format!(
            "need at least 3 error samples, got {}",
            errors.len()
        )));
    }
    if errors.iter().any(|e| !e.is_finite() || *e == 0.0) {
        return Err(Error::Estimation("zero or non-finite error sample".into()));
    }
    let n = errors.len() as f64;
    let ys: Vec<f64> = errors.iter().map(|e| e.abs().log2()).collect();
    let xm = (n - 1.0) / 2.0;
    let ym = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (i, y) in ys.iter().enumerate() {
        let dx = i as f64 - xm;
        sxy += dx * (y - ym);
        sxx += dx * dx;
    }
    Ok(-sxy / sxx)
}

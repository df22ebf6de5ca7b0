//! Adaptive Gauss–Kronrod (7/15) quadrature with deterministic bisection.

use crate::error::{Error, Result};
use crate::numerics::sum::NeumaierSum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_depth: 40,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol >= 0.0) || self.max_depth < 1 {
            return Err(Error::Domain(format!("invalid quadrature spec {self:?}")));
        }
        Ok(())
    }
}

const XK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the nodes XK[1], XK[3], XK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = NeumaierSum::new();
    let mut g = NeumaierSum::new();
    k.add(WK[7] * fc);
    g.add(WG[3] * fc);
    for i in 0..7 {
        let dx = h * XK[i];
        let s = f(c - dx) + f(c + dx);
        k.add(WK[i] * s);
        if i % 2 == 1 {
            g.add(WG[i / 2] * s);
        }
    }
    let kv = k.total() * h;
    let gv = g.total() * h;
    (kv, (kv - gv).abs())
}

struct Acc {
    value: NeumaierSum,
    error: f64,
    converged: bool,
}

fn recurse(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    whole: f64,
    spec: &QuadratureSpec,
    depth: u32,
    acc: &mut Acc,
) {
    let (k, e) = gk15(f, a, b);
    let share = ((b - a) / whole).abs();
    let tol = (spec.abs_tol * share).max(spec.rel_tol * k.abs());
    if e <= tol || !e.is_finite() {
        acc.value.add(k);
        acc.error += e;
        if !e.is_finite() {
            acc.converged = false;
        }
        return;
    }
    if depth >= spec.max_depth {
        acc.value.add(k);
        acc.error += e;
        acc.converged = false;
        return;
    }
    let m = 0.5 * (a + b);
    recurse(f, a, m, whole, spec, depth + 1, acc);
    recurse(f, m, b, whole, spec, depth + 1, acc);
}

/// Integrates `f` over `[a, b]` (either orientation). Returns the value and
/// an error estimate.
pub fn quad_adaptive(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    spec.validate()?;
    if a == b {
        return Ok((0.0, 0.0));
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut acc = Acc {
        value: NeumaierSum::new(),
        error: 0.0,
        converged: true,
    };
    recurse(&f, lo, hi, hi - lo, spec, 0, &mut acc);
    let value = sign * acc.value.total();
    if !acc.converged || !value.is_finite() {
        return Err(Error::Quadrature {
            estimate: value,
            error: acc.error,
        });
    }
    Ok((value, acc.error))
}

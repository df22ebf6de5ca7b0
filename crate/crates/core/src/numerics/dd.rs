//! Scalar base types for the differentiation engine: `f64` and a
//! double-double [`Dd`] (about 31 significant digits).
//!
//! Residuals of singular closed forms cancel terms of size `1e8` near the
//! inner sampling radius; in `f64` that leaves `1e-8` of pure round-off.
//! Carrying the jets in [`Dd`] pushes that floor below `1e-20`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use qd::Quad;

/// Arithmetic and elementary functions shared by `f64` and [`Dd`].
pub trait Scalar:
    Copy
    + Debug
    + Default
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
    /// Rounds a double-double to this precision.
    fn from_dd(v: Dd) -> Self;
    fn to_dd(self) -> Dd;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn abs(self) -> Self;

    fn powi(self, k: i32) -> Self {
        let mut out = Self::from_f64(1.0);
        let mut b = if k < 0 { Self::from_f64(1.0) / self } else { self };
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                out = out * b;
            }
            b = b * b;
            e >>= 1;
        }
        out
    }

    /// `x^e`; integer exponents also accept negative bases.
    fn powf(self, e: f64) -> Self {
        if e.fract() == 0.0 && e.abs() < 64.0 {
            return self.powi(e as i32);
        }
        if self.to_f64() == 0.0 {
            return Self::from_f64(if e > 0.0 { 0.0 } else { f64::INFINITY });
        }
        (self.ln() * e).exp()
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn from_dd(v: Dd) -> Self {
        f64::from(v)
    }
    fn to_dd(self) -> Dd {
        Dd::from(self)
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn powi(self, k: i32) -> Self {
        f64::powi(self, k)
    }
    fn powf(self, e: f64) -> Self {
        f64::powf(self, e)
    }
}

/// Double-double number `hi + lo`.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct Dd(pub Quad);

impl Default for Dd {
    fn default() -> Self {
        Dd(Quad::ZERO)
    }
}

impl Debug for Dd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.0 .0, self.0 .1)
    }
}

impl From<f64> for Dd {
    fn from(v: f64) -> Self {
        Dd(Quad::from_f64(v))
    }
}

impl From<Dd> for f64 {
    fn from(v: Dd) -> Self {
        v.0 .0 + v.0 .1
    }
}

macro_rules! dd_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Dd {
            type Output = Dd;
            fn $f(self, o: Dd) -> Dd {
                Dd($tr::$f(self.0, o.0))
            }
        }
        impl $tr<f64> for Dd {
            type Output = Dd;
            fn $f(self, o: f64) -> Dd {
                Dd($tr::$f(self.0, Quad::from_f64(o)))
            }
        }
    )*};
}
dd_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd(-self.0)
    }
}

impl Dd {
    /// Reduction by `π/2` followed by Taylor series; `|x|` up to a few
    /// hundred keeps full precision.
    fn sincos(self) -> (Dd, Dd) {
        let half_pi = Dd(Quad::PI) / 2.0;
        let k = (f64::from(self) / f64::from(half_pi)).round();
        let r = self - half_pi * k;
        let r2 = r * r;
        let (mut s, mut c) = (r, Dd::from(1.0));
        let (mut ts, mut tc) = (r, Dd::from(1.0));
        for i in 1..30 {
            let i = i as f64;
            ts = -ts * r2 / ((2.0 * i) * (2.0 * i + 1.0));
            tc = -tc * r2 / ((2.0 * i - 1.0) * (2.0 * i));
            s = s + ts;
            c = c + tc;
            if f64::from(ts).abs() < 1e-34 && f64::from(tc).abs() < 1e-34 {
                break;
            }
        }
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

impl Scalar for Dd {
    fn from_f64(v: f64) -> Self {
        Dd::from(v)
    }
    fn from_dd(v: Dd) -> Self {
        v
    }
    fn to_dd(self) -> Dd {
        self
    }
    fn to_f64(self) -> f64 {
        f64::from(self)
    }
    fn exp(self) -> Self {
        Dd(self.0.exp())
    }
    fn ln(self) -> Self {
        Dd(self.0.ln())
    }
    fn sqrt(self) -> Self {
        Dd(self.0.sqrt())
    }
    fn sin(self) -> Self {
        self.sincos().0
    }
    fn cos(self) -> Self {
        self.sincos().1
    }
    fn abs(self) -> Self {
        Dd(self.0.abs())
    }
}

//! Forward-mode automatic differentiation.
//!
//! [`Dual<T>`] carries a value and one directional derivative. Nesting it
//! (`Dual<Dual<f64>>`) yields exact second derivatives, including mixed
//! partials when the inner and outer seeds point in different directions.
//!
//! Every elementary function is routed through [`Real::map_derivs`], which
//! takes a callback returning the k-th derivative of a scalar function. This
//! is also how special functions with known closed-form derivatives (the
//! pressure integrals) are lifted into the AD world without differentiating
//! through a quadrature.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::dd::{Dd, Scalar};

/// Scalar type usable in closed-form field formulas: a [`Scalar`] base or
/// nested duals over one.
pub trait Real:
    Copy
    + Debug
    + Send
    + Sync
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
    type Base: Scalar;

    fn cst(v: f64) -> Self;

    /// A constant given in the base precision.
    fn lift(b: Self::Base) -> Self;

    /// A constant given in double-double precision.
    fn cst_dd(v: Dd) -> Self {
        Self::lift(Self::Base::from_dd(v))
    }

    /// Primal value, rounded to `f64`.
    fn value(self) -> f64;

    /// Apply a scalar function `g`, where `g(x, k)` is the k-th derivative of
    /// `g` at `x`.
    fn map_derivs(self, g: &dyn Fn(Self::Base, usize) -> Self::Base) -> Self;

    fn exp(self) -> Self {
        self.map_derivs(&|x, _| x.exp())
    }

    fn ln(self) -> Self {
        self.map_derivs(&|x, k| {
            if k == 0 {
                x.ln()
            } else {
                // (-1)^(k-1) (k-1)! / x^k
                let mut fact = 1.0;
                for i in 1..k {
                    fact *= i as f64;
                }
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                x.powi(-(k as i32)) * (sign * fact)
            }
        })
    }

    fn powf(self, e: f64) -> Self {
        self.map_derivs(&move |x, k| {
            let mut c = 1.0;
            for i in 0..k {
                c *= e - i as f64;
            }
            if c == 0.0 {
                Self::Base::from_f64(0.0)
            } else {
                x.powf(e - k as f64) * c
            }
        })
    }

    fn sqrt(self) -> Self {
        self.powf(0.5)
    }

    fn recip(self) -> Self {
        self.powf(-1.0)
    }

    fn sin(self) -> Self {
        self.map_derivs(&|x, k| match k % 4 {
            0 => x.sin(),
            1 => x.cos(),
            2 => -x.sin(),
            _ => -x.cos(),
        })
    }

    fn cos(self) -> Self {
        self.map_derivs(&|x, k| match k % 4 {
            0 => x.cos(),
            1 => -x.sin(),
            2 => -x.cos(),
            _ => x.sin(),
        })
    }
}

impl Real for f64 {
    type Base = f64;
    fn cst(v: f64) -> Self {
        v
    }
    fn lift(b: f64) -> Self {
        b
    }
    fn value(self) -> f64 {
        self
    }
    fn map_derivs(self, g: &dyn Fn(f64, usize) -> f64) -> Self {
        g(self, 0)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn powf(self, e: f64) -> Self {
        f64::powf(self, e)
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
}

impl Real for Dd {
    type Base = Dd;
    fn cst(v: f64) -> Self {
        Dd::from(v)
    }
    fn lift(b: Dd) -> Self {
        b
    }
    fn value(self) -> f64 {
        f64::from(self)
    }
    fn map_derivs(self, g: &dyn Fn(Dd, usize) -> Dd) -> Self {
        g(self, 0)
    }
    fn exp(self) -> Self {
        Scalar::exp(self)
    }
    fn ln(self) -> Self {
        Scalar::ln(self)
    }
    fn powf(self, e: f64) -> Self {
        Scalar::powf(self, e)
    }
    fn sqrt(self) -> Self {
        Scalar::sqrt(self)
    }
    fn sin(self) -> Self {
        Scalar::sin(self)
    }
    fn cos(self) -> Self {
        Scalar::cos(self)
    }
}

/// Dual number `re + eps·ε` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Real> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }

    /// A seeded variable: derivative part 1.
    pub fn var(re: T) -> Self {
        Dual {
            re,
            eps: T::cst(1.0),
        }
    }

    pub fn constant(re: T) -> Self {
        Dual {
            re,
            eps: T::cst(0.0),
        }
    }
}

/// Second-order nested dual.
pub type HyperDual<B = f64> = Dual<Dual<B>>;

impl<T: Real> Real for Dual<T> {
    type Base = T::Base;
    fn cst(v: f64) -> Self {
        Dual::constant(T::cst(v))
    }
    fn lift(b: T::Base) -> Self {
        Dual::constant(T::lift(b))
    }
    fn value(self) -> f64 {
        self.re.value()
    }
    fn map_derivs(self, g: &dyn Fn(T::Base, usize) -> T::Base) -> Self {
        let shifted = |x: T::Base, k: usize| g(x, k + 1);
        Dual {
            re: self.re.map_derivs(g),
            eps: self.eps * self.re.map_derivs(&shifted),
        }
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual::new(self.re * o.re, self.re * o.eps + self.eps * o.re)
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q = self.re / o.re;
        Dual::new(q, (self.eps - q * o.eps) / o.re)
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<T: Real> Add<f64> for Dual<T> {
    type Output = Self;
    fn add(self, o: f64) -> Self {
        Dual::new(self.re + o, self.eps)
    }
}

impl<T: Real> Sub<f64> for Dual<T> {
    type Output = Self;
    fn sub(self, o: f64) -> Self {
        Dual::new(self.re - o, self.eps)
    }
}

impl<T: Real> Mul<f64> for Dual<T> {
    type Output = Self;
    fn mul(self, o: f64) -> Self {
        Dual::new(self.re * o, self.eps * o)
    }
}

impl<T: Real> Div<f64> for Dual<T> {
    type Output = Self;
    fn div(self, o: f64) -> Self {
        Dual::new(self.re / o, self.eps / o)
    }
}

/// Value, first and second derivative of a scalar function of one variable.
pub fn derivs2(f: impl Fn(HyperDual) -> HyperDual, x: f64) -> (f64, f64, f64) {
    let seed = Dual::new(Dual::var(x), Dual::constant(1.0));
    let out = f(seed);
    (out.re.re, out.re.eps, out.eps.eps)
}

/// Value and first derivative.
pub fn derivs1(f: impl Fn(Dual<f64>) -> Dual<f64>, x: f64) -> (f64, f64) {
    let out = f(Dual::var(x));
    (out.re, out.eps)
}

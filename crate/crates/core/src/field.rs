//! Field jets: values of `(α, u¹, u², p)` with the derivatives needed by the
//! residual operators, and the providers that produce them.

use serde::Serialize;

use crate::error::Result;
use crate::model::FieldValue;
use crate::numerics::dd::{Dd, Scalar};
use crate::numerics::dual::{Dual, HyperDual, Real};

/// Value, gradient and Hessian of a scalar field at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ScalarJet<S = f64> {
    pub v: S,
    pub x: S,
    pub y: S,
    pub xx: S,
    pub xy: S,
    pub yy: S,
}

impl<S: Scalar> ScalarJet<S> {
    pub fn constant(v: S) -> Self {
        ScalarJet { v, ..Default::default() }
    }

    pub fn laplacian(&self) -> S {
        self.xx + self.yy
    }

    pub fn scaled(&self, c: S) -> Self {
        self.map(|e| e * c)
    }

    pub fn map<U>(&self, f: impl Fn(S) -> U) -> ScalarJet<U> {
        ScalarJet {
            v: f(self.v),
            x: f(self.x),
            y: f(self.y),
            xx: f(self.xx),
            xy: f(self.xy),
            yy: f(self.yy),
        }
    }

    /// Entries in a fixed order, for comparisons.
    pub fn entries(&self) -> [f64; 6] {
        [self.v, self.x, self.y, self.xx, self.xy, self.yy].map(S::to_f64)
    }
}

/// Everything the governing and boundary residuals read from a field.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct FieldJet<S = f64> {
    pub alpha: ScalarJet<S>,
    pub alpha_t: S,
    pub u1: ScalarJet<S>,
    pub u2: ScalarJet<S>,
    pub p: ScalarJet<S>,
}

impl<S: Scalar> FieldJet<S> {
    pub fn value(&self) -> FieldValue {
        FieldValue {
            alpha: self.alpha.v.to_f64(),
            u1: self.u1.v.to_f64(),
            u2: self.u2.v.to_f64(),
            p: self.p.v.to_f64(),
        }
    }

    pub fn map<U>(&self, f: impl Fn(S) -> U + Copy) -> FieldJet<U> {
        FieldJet {
            alpha: self.alpha.map(f),
            alpha_t: f(self.alpha_t),
            u1: self.u1.map(f),
            u2: self.u2.map(f),
            p: self.p.map(f),
        }
    }

    pub fn to_f64(&self) -> FieldJet {
        self.map(S::to_f64)
    }

    pub fn lift(j: &FieldJet) -> Self {
        j.map(S::from_f64)
    }

    /// All entries in a fixed order.
    pub fn entries(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(25);
        out.extend(self.alpha.entries());
        out.push(self.alpha_t.to_f64());
        out.extend(self.u1.entries());
        out.extend(self.u2.entries());
        out.extend(self.p.entries());
        out
    }
}

impl FieldJet {
    /// Names matching [`FieldJet::entries`].
    pub fn entry_names() -> Vec<String> {
        let d = ["", "_x", "_y", "_xx", "_xy", "_yy"];
        let mut out: Vec<String> = d.iter().map(|s| format!("alpha{s}")).collect();
        out.push("alpha_t".into());
        for c in ["u1", "u2", "p"] {
            out.extend(d.iter().map(|s| format!("{c}{s}")));
        }
        out
    }
}

/// Anything that can be sampled as a space-time field.
///
/// `jet_dd` is the jet the residual operators consume; `jet` is its
/// `f64` counterpart for inspection and cross-checks.
pub trait Field: Send + Sync {
    fn value(&self, t: f64, x: f64, y: f64) -> Result<FieldValue>;
    fn jet_dd(&self, t: f64, x: f64, y: f64) -> Result<FieldJet<Dd>>;
    /// `[α, u¹, u², p]` at double-double coordinates. The default rounds the
    /// point to `f64`.
    fn value_dd(&self, t: Dd, x: Dd, y: Dd) -> Result<[Dd; 4]> {
        let v = self.value(t.to_f64(), x.to_f64(), y.to_f64())?;
        Ok([v.alpha, v.u1, v.u2, v.p].map(Dd::from))
    }
    fn jet(&self, t: f64, x: f64, y: f64) -> Result<FieldJet> {
        Ok(self.jet_dd(t, x, y)?.to_f64())
    }
}

macro_rules! forward_field {
    ($($ty:ty),*) => {$(
        impl<F: Field + ?Sized> Field for $ty {
            fn value(&self, t: f64, x: f64, y: f64) -> Result<FieldValue> {
                (**self).value(t, x, y)
            }
            fn jet_dd(&self, t: f64, x: f64, y: f64) -> Result<FieldJet<Dd>> {
                (**self).jet_dd(t, x, y)
            }
            fn value_dd(&self, t: Dd, x: Dd, y: Dd) -> Result<[Dd; 4]> {
                (**self).value_dd(t, x, y)
            }
            fn jet(&self, t: f64, x: f64, y: f64) -> Result<FieldJet> {
                (**self).jet(t, x, y)
            }
        }
    )*};
}
forward_field!(&F, Box<F>, std::sync::Arc<F>);

/// A field given by a formula that can be evaluated on any [`Real`].
///
/// Output order is `[α, u¹, u², p]`.
pub trait ClosedForm: Send + Sync {
    fn eval<T: Real>(&self, t: T, x: T, y: T) -> Result<[T; 4]>;
}

fn hyper<B: Scalar>(re: f64, inner: f64, outer: f64) -> HyperDual<B>
where
    B: Real<Base = B>,
{
    Dual::new(Dual::new(B::cst(re), B::cst(inner)), Dual::new(B::cst(outer), B::cst(0.0)))
}

/// Builds a [`FieldJet`] by forward-mode differentiation of a closed form,
/// with `B` as the working precision.
pub fn ad_jet<B, C>(c: &C, t: f64, x: f64, y: f64) -> Result<FieldJet<B>>
where
    B: Scalar + Real<Base = B>,
    C: ClosedForm + ?Sized,
{
    let tt = c.eval(Dual::<B>::var(B::cst(t)), Dual::cst(x), Dual::cst(y))?;
    let xx = c.eval(hyper::<B>(t, 0.0, 0.0), hyper(x, 1.0, 1.0), hyper(y, 0.0, 0.0))?;
    let yy = c.eval(hyper::<B>(t, 0.0, 0.0), hyper(x, 0.0, 0.0), hyper(y, 1.0, 1.0))?;
    let xy = c.eval(hyper::<B>(t, 0.0, 0.0), hyper(x, 0.0, 1.0), hyper(y, 1.0, 0.0))?;
    let comp = |i: usize| ScalarJet {
        v: xx[i].re.re,
        x: xx[i].re.eps,
        y: yy[i].re.eps,
        xx: xx[i].eps.eps,
        xy: xy[i].eps.eps,
        yy: yy[i].eps.eps,
    };
    Ok(FieldJet {
        alpha: comp(0),
        alpha_t: tt[0].eps,
        u1: comp(1),
        u2: comp(2),
        p: comp(3),
    })
}

/// Plain evaluation of a closed form.
pub fn closed_value<C: ClosedForm + ?Sized>(c: &C, t: f64, x: f64, y: f64) -> Result<FieldValue> {
    let [alpha, u1, u2, p] = c.eval(t, x, y)?;
    Ok(FieldValue { alpha, u1, u2, p })
}

/// Spatially and temporally constant state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantState {
    pub alpha: f64,
    pub u1: f64,
    pub u2: f64,
    pub p: f64,
}

impl Field for ConstantState {
    fn value(&self, _t: f64, _x: f64, _y: f64) -> Result<FieldValue> {
        Ok(FieldValue {
            alpha: self.alpha,
            u1: self.u1,
            u2: self.u2,
            p: self.p,
        })
    }

    fn jet_dd(&self, _t: f64, _x: f64, _y: f64) -> Result<FieldJet<Dd>> {
        Ok(FieldJet {
            alpha: ScalarJet::constant(self.alpha.into()),
            alpha_t: Dd::default(),
            u1: ScalarJet::constant(self.u1.into()),
            u2: ScalarJet::constant(self.u2.into()),
            p: ScalarJet::constant(self.p.into()),
        })
    }
}

/// Manufactured polynomial field: each component is
/// `Σ c · t^i x^j y^k` over `(c, i, j, k)` terms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolynomialField {
    pub components: [Vec<(f64, u32, u32, u32)>; 4],
}

fn ipow<T: Real>(v: T, k: u32) -> T {
    let mut out = T::cst(1.0);
    for _ in 0..k {
        out = out * v;
    }
    out
}

impl ClosedForm for PolynomialField {
    fn eval<T: Real>(&self, t: T, x: T, y: T) -> Result<[T; 4]> {
        let mut out = [T::cst(0.0); 4];
        for (o, terms) in out.iter_mut().zip(self.components.iter()) {
            for &(c, i, j, k) in terms {
                *o = *o + ipow(t, i) * ipow(x, j) * ipow(y, k) * c;
            }
        }
        Ok(out)
    }
}

impl Field for PolynomialField {
    fn value(&self, t: f64, x: f64, y: f64) -> Result<FieldValue> {
        closed_value(self, t, x, y)
    }
    fn jet_dd(&self, t: f64, x: f64, y: f64) -> Result<FieldJet<Dd>> {
        ad_jet(self, t, x, y)
    }
    fn jet(&self, t: f64, x: f64, y: f64) -> Result<FieldJet> {
        ad_jet(self, t, x, y)
    }
    fn value_dd(&self, t: Dd, x: Dd, y: Dd) -> Result<[Dd; 4]> {
        self.eval(t, x, y)
    }
}

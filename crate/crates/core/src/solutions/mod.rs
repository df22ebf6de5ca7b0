//! Closed-form solution families, their parameter restrictions and the
//! circular fronts they live on.

pub mod constants;
pub mod families;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ad_jet, closed_value, ClosedForm, Field, FieldJet};
use crate::model::{scale_exponents, ConstitutiveTriplet, FieldValue, PhysConstants};
use crate::numerics::dd::Dd;
use crate::numerics::dual::Real;

pub use constants::{
    log_moving_constants, log_moving_constants_dd, power_moving_constants,
    power_moving_constants_dd, regular_c3, stationary_constants,
    steady_constants, MovingConstants, StationaryConstants, SteadyConstants,
};
pub use families::{exp_integral_term, GaussianDecay, LogMoving, PowerMoving, StationaryFront, SteadyState};

/// Default inner cut-off of the sampling annulus, as a fraction of the radius.
pub const R_MIN_FRACTION: f64 = 1e-2;

/// The front `Γ = x² + y² - δ² t^κ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryCircle {
    pub delta: f64,
    pub kappa: f64,
}

impl BoundaryCircle {
    pub fn new(delta: f64, kappa: f64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(Error::Domain(format!("delta must be positive, got {delta}")));
        }
        Ok(BoundaryCircle { delta, kappa })
    }

    pub fn level(&self, t: f64, x: f64, y: f64) -> f64 {
        x * x + y * y - self.delta * self.delta * t.powf(self.kappa)
    }

    pub fn radius(&self, t: f64) -> f64 {
        self.delta * t.powf(self.kappa / 2.0)
    }

    /// `(Γ_t, Γ_x, Γ_y)`.
    pub fn gradient(&self, t: f64, x: f64, y: f64) -> (f64, f64, f64) {
        let gt = if self.kappa == 0.0 {
            0.0
        } else {
            -self.kappa * self.delta * self.delta * t.powf(self.kappa - 1.0)
        };
        (gt, 2.0 * x, 2.0 * y)
    }
}

/// How a family's reduced profiles are lifted back to the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Ansatz {
    /// Scale-invariant ansatz with exponents `m, n`.
    Scale { m: f64, n: f64 },
    /// Time-independent fields.
    Steady,
}

/// What the closed form does at the origin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Regularity {
    pub velocity_bounded: bool,
    pub pressure_bounded: bool,
    /// `c3` that would remove the origin singularity, where one exists.
    pub regular_c3: Option<f64>,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family")]
pub enum SolutionFamily {
    Gaussian(GaussianDecay),
    Stationary(StationaryFront),
    PowerMoving(PowerMoving),
    LogMoving(LogMoving),
    Steady(SteadyState),
}

impl SolutionFamily {
    pub fn id(&self) -> &'static str {
        match self {
            SolutionFamily::Gaussian(_) => "gaussian",
            SolutionFamily::Stationary(_) => "stationary",
            SolutionFamily::PowerMoving(_) => "moving-power",
            SolutionFamily::LogMoving(_) => "moving-log",
            SolutionFamily::Steady(_) => "steady",
        }
    }

    /// `[α, q, p]` with `u = (x, y) q`, as functions of `t` and `s = x² + y²`.
    pub fn radial<T: Real>(&self, t: T, s: T) -> Result<[T; 3]> {
        match self {
            SolutionFamily::Gaussian(f) => f.radial(t, s),
            SolutionFamily::Stationary(f) => f.inner.radial(t, s),
            SolutionFamily::PowerMoving(f) => f.radial(t, s),
            SolutionFamily::LogMoving(f) => f.radial(t, s),
            SolutionFamily::Steady(f) => f.radial(t, s),
        }
    }

    pub fn triplet(&self) -> ConstitutiveTriplet {
        match self {
            SolutionFamily::Gaussian(f) => f.triplet(),
            SolutionFamily::Stationary(f) => f.inner.triplet(),
            SolutionFamily::PowerMoving(f) => f.triplet(),
            SolutionFamily::LogMoving(f) => f.triplet(),
            SolutionFamily::Steady(f) => f.triplet(),
        }
    }

    pub fn phys(&self) -> PhysConstants {
        let lambda = match self {
            SolutionFamily::Gaussian(f) => f.lambda,
            SolutionFamily::Stationary(f) => f.lambda,
            SolutionFamily::PowerMoving(f) => f.lambda,
            SolutionFamily::LogMoving(f) => f.lambda,
            SolutionFamily::Steady(f) => f.lambda,
        };
        PhysConstants { lambda }
    }

    pub fn ansatz(&self) -> Ansatz {
        match self {
            SolutionFamily::Gaussian(f) => Ansatz::Scale { m: -1.0, n: f.n },
            SolutionFamily::Stationary(f) => Ansatz::Scale { m: -1.0, n: f.n },
            SolutionFamily::PowerMoving(f) => Ansatz::Scale { m: f.m, n: f.n },
            SolutionFamily::LogMoving(f) => Ansatz::Scale { m: f.m(), n: f.n },
            SolutionFamily::Steady(_) => Ansatz::Steady,
        }
    }

    pub fn is_time_dependent(&self) -> bool {
        !matches!(self, SolutionFamily::Steady(_))
    }

    pub fn delta(&self) -> f64 {
        match self {
            SolutionFamily::Gaussian(f) => f.delta,
            SolutionFamily::Stationary(f) => f.derived.delta,
            SolutionFamily::PowerMoving(f) => f.delta,
            SolutionFamily::LogMoving(f) => f.delta,
            SolutionFamily::Steady(f) => f.delta,
        }
    }

    /// Whether the closed form is claimed to satisfy the boundary conditions.
    pub fn solves_boundary_problem(&self) -> bool {
        !matches!(self, SolutionFamily::Gaussian(_))
    }

    pub fn regularity(&self) -> Regularity {
        match self {
            SolutionFamily::Gaussian(f) => {
                let reg = f.regular_c3();
                let ok = (f.c3 - reg).abs() <= 1e-12 * reg.abs().max(1.0);
                Regularity {
                    velocity_bounded: ok,
                    pressure_bounded: ok,
                    regular_c3: Some(reg),
                    note: if ok {
                        "c3 takes its regular value: velocity and pressure are bounded at the origin".into()
                    } else {
                        format!("c3 = {} differs from the regular value {reg}: 1/r velocity and ln r pressure at the origin", f.c3)
                    },
                }
            }
            SolutionFamily::Stationary(f) => {
                let reg = f.regular_c3();
                Regularity {
                    velocity_bounded: false,
                    pressure_bounded: false,
                    regular_c3: Some(reg),
                    note: format!(
                        "origin regularity sacrificed: the boundary conditions fix c3 = {}, the regular value would be {reg} (E = {} > 1, so the two never agree)",
                        f.c3, f.derived.e
                    ),
                }
            }
            SolutionFamily::PowerMoving(_) | SolutionFamily::LogMoving(_) => Regularity {
                velocity_bounded: false,
                pressure_bounded: false,
                regular_c3: None,
                note: "singular at the origin".into(),
            },
            SolutionFamily::Steady(_) => Regularity {
                velocity_bounded: false,
                pressure_bounded: false,
                regular_c3: None,
                note: "singular at the origin".into(),
            },
        }
    }
}

/// The front of a family: `κ = (1+m)/(1-n)` for the scale families, `0`
/// for the steady one.
pub fn boundary_of(sol: &SolutionFamily) -> BoundaryCircle {
    let kappa = match sol.ansatz() {
        Ansatz::Scale { m, n } => scale_exponents(m, n).map(|e| e.kappa).unwrap_or(0.0),
        Ansatz::Steady => 0.0,
    };
    // `0 * x` can produce -0.0; normalise for clean output
    BoundaryCircle {
        delta: sol.delta(),
        kappa: if kappa == 0.0 { 0.0 } else { kappa },
    }
}

impl ClosedForm for SolutionFamily {
    fn eval<T: Real>(&self, t: T, x: T, y: T) -> Result<[T; 4]> {
        let s = x * x + y * y;
        if !(s.value() > 0.0) {
            return Err(Error::Singular { t: t.value(), x: x.value(), y: y.value() });
        }
        let [alpha, q, p] = self.radial(t, s)?;
        Ok([alpha, x * q, y * q, p])
    }
}

impl Field for SolutionFamily {
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

/// Evaluates all fields and the derivatives the residuals need.
pub fn eval_jet(sol: &SolutionFamily, t: f64, x: f64, y: f64) -> Result<FieldJet> {
    sol.jet(t, x, y)
}
